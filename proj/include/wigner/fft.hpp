#pragma once

// Thin RAII layer over FFTW. Plans are created with FFTW_ESTIMATE so the
// chosen algorithm (and therefore every rounding) is identical from run to
// run on one machine.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

#include <fftw3.h>

namespace wigner::fft {

using cplx = std::complex<double>;

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

/// SIMD-aligned scratch array owned by FFTW's allocator.
template <typename T>
class AlignedBuffer {
public:
    AlignedBuffer() = default;
    explicit AlignedBuffer(std::size_t n)
        : data_(static_cast<T*>(fftw_malloc(sizeof(T) * (n ? n : 1)))), size_(n) {
        if (!data_) throw std::bad_alloc();
        for (std::size_t i = 0; i < n; ++i) data_.get()[i] = T{};
    }

    T* data() noexcept { return data_.get(); }
    const T* data() const noexcept { return data_.get(); }
    std::size_t size() const noexcept { return size_; }
    T& operator[](std::size_t i) noexcept { return data_.get()[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_.get()[i]; }
    std::span<T> span() noexcept { return {data_.get(), size_}; }
    std::span<const T> span() const noexcept { return {data_.get(), size_}; }

private:
    std::unique_ptr<T, FftwFree> data_;
    std::size_t size_ = 0;
};

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

/// Owning handle for an fftw_plan.
class Plan {
public:
    Plan() = default;
    explicit Plan(fftw_plan p);
    Plan(Plan&& other) noexcept : plan_(other.plan_) { other.plan_ = nullptr; }
    Plan& operator=(Plan&& other) noexcept;
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan();

    void execute() const { fftw_execute(plan_); }
    fftw_plan get() const noexcept { return plan_; }

private:
    fftw_plan plan_ = nullptr;
};

/// Batched real<->complex transforms of `count` contiguous sequences of
/// length `n`, stored back to back in the given buffers.
Plan plan_r2c(int n, int count, double* in, cplx* out);
Plan plan_c2r(int n, int count, cplx* in, double* out);

/// Single complex transform; sign is FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
Plan plan_c2c(int n, cplx* in, cplx* out, int sign);

}  // namespace wigner::fft
