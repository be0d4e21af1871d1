#include "wigner/fft.hpp"

#include <stdexcept>

namespace wigner::fft {

Plan::Plan(fftw_plan p) : plan_(p) {
    if (!plan_) throw std::runtime_error("FFTW failed to create a plan");
}

Plan& Plan::operator=(Plan&& other) noexcept {
    if (this != &other) {
        if (plan_) fftw_destroy_plan(plan_);
        plan_ = other.plan_;
        other.plan_ = nullptr;
    }
    return *this;
}

Plan::~Plan() {
    if (plan_) fftw_destroy_plan(plan_);
}

Plan plan_r2c(int n, int count, double* in, cplx* out) {
    const int dims[] = {n};
    const int half = n / 2 + 1;
    return Plan(fftw_plan_many_dft_r2c(1, dims, count, in, nullptr, 1, n, as_fftw(out),
                                       nullptr, 1, half, FFTW_ESTIMATE));
}

Plan plan_c2r(int n, int count, cplx* in, double* out) {
    const int dims[] = {n};
    const int half = n / 2 + 1;
    // c2r plans may clobber their input; callers always refill it.
    return Plan(fftw_plan_many_dft_c2r(1, dims, count, as_fftw(in), nullptr, 1, half, out,
                                       nullptr, 1, n, FFTW_ESTIMATE));
}

Plan plan_c2c(int n, cplx* in, cplx* out, int sign) {
    return Plan(fftw_plan_dft_1d(n, as_fftw(in), as_fftw(out), sign, FFTW_ESTIMATE));
}

}  // namespace wigner::fft
