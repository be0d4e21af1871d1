#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "wigner/errors.hpp"
#include "wigner/solver.hpp"

using namespace wigner;

TEST_CASE("initial_wigner is the normalised minimum-uncertainty Gaussian") {
    const auto c = testing::small_config();
    const auto f = initial_wigner(c);
    CHECK(f.time == 0.0);
    const auto m = moments(f);
    CHECK(m.norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.x_avg == doctest::Approx(c.x0).epsilon(1e-12));
    CHECK(m.p_avg == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.sigma02 == doctest::Approx(c.sigma0 * c.sigma0).epsilon(1e-10));
    CHECK(m.sigma20 == doctest::Approx(1.0 / (4 * c.sigma0 * c.sigma0)).epsilon(1e-10));
    // Peak at (x0, p0) = (-10, 1) lies on the lattice; the renormalisation
    // factor differs from 1 only by quadrature error.
    const auto& g = f.grid;
    const int i = static_cast<int>(std::lround((c.x0 - g.x_min()) / g.dx()));
    const int j = static_cast<int>(std::lround((c.p0() - g.p_min()) / g.dp()));
    CHECK(f.at(i, j) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("initial_wigner rejects a domain that clips the packet") {
    auto c = testing::small_config();
    c.grid.x_min = -15.0;  // only 2.5 position deviations to the left
    CHECK(initial_mass_outside(c) > 1e-10);
    CHECK_THROWS_AS(initial_wigner(c), GridClipsPacket);
    CHECK_THROWS_WITH(initial_wigner(c), doctest::Contains("grid clips initial packet"));
    c = testing::small_config();
    c.grid.p_max = 1.5;
    CHECK_THROWS_AS(initial_wigner(c), GridClipsPacket);
}

TEST_CASE("config validation names the key") {
    const auto key_of = [](SimulationConfig c) {
        try {
            c.validate();
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("ok");
    };
    auto c = testing::small_config();
    CHECK(key_of(c) == "ok");
    c.energy = 0;
    CHECK(key_of(c) == "E_K");
    c = testing::small_config();
    c.tau = -1;
    CHECK(key_of(c) == "tau");
    c = testing::small_config();
    c.dt = 0.0;
    CHECK(key_of(c) == "dt");
    c = testing::small_config();
    c.t_final = 1.005;
    CHECK(key_of(c) == "t_final");
    c = testing::small_config();
    c.snapshot_times = {2.0};
    CHECK(key_of(c) == "snapshot_times");
    c = testing::small_config();
    c.grid.n_p = 63;
    CHECK(key_of(c) == "n_p");
    c = testing::small_config();
    c.barrier = Barrier{-1.0};
    CHECK(key_of(c) == "barrier_width");
    c = testing::small_config();
    c.kernel.kind = CorrelationKernel::Kind::Sech;
    c.kernel.lambda = -2;
    CHECK(key_of(c) == "lambda");
}

TEST_CASE("derived config quantities") {
    SimulationConfig c;
    c.energy = 1.5;
    CHECK(c.p0() == doctest::Approx(std::sqrt(3.0)));
    c.sigma0 = 0.15;
    CHECK(c.position_std() == doctest::Approx(1.0 / 0.3));
    c.dt = 0.01;
    c.t_final = 60;
    CHECK(c.steps() == 6000);
}

TEST_CASE("drift leaves the p = 0 column untouched") {
    const auto c = testing::small_config();
    auto f = testing::random_smooth_field(c.make_grid(), 5);
    const auto& g = f.grid;
    const int j0 = g.n_p() / 2;
    REQUIRE(g.p(j0) == 0.0);
    const auto before = f;
    SplitStepSolver s(g, std::nullopt, CorrelationKernel::coherent(), 3.0, 0.01);
    s.drift(f, 0.37);
    for (int i = 0; i < g.n_x(); ++i)
        CHECK(f.at(i, j0) == doctest::Approx(before.at(i, j0)).epsilon(1e-12));
    CHECK(f.time == doctest::Approx(0.37));
}

TEST_CASE("half drift advances <x> by <p> dt/2") {
    const auto c = testing::small_config();
    auto f = initial_wigner(c);
    SplitStepSolver s(c);
    const auto a = moments(f);
    s.drift_half_step(f);
    const auto b = moments(f);
    CHECK(std::abs((b.x_avg - a.x_avg) - a.p_avg * c.dt / 2) < 1e-10);
    CHECK(std::abs(b.norm - a.norm) < 1e-14);
}

TEST_CASE("free transport to t = 10 follows the analytic moments") {
    auto c = testing::small_config();
    c.barrier.reset();
    auto f = initial_wigner(c);
    const auto m0 = moments(f);
    SplitStepSolver s(c);
    s.drift(f, 10.0);
    const auto m = moments(f);
    CHECK(std::abs(m.sigma20 - (m0.sigma20 + 2 * m0.sigma11 * 10 + m0.sigma02 * 100)) < 1e-8);
    CHECK(std::abs(m.sigma11 - (m0.sigma11 + m0.sigma02 * 10)) < 1e-8);
    CHECK(std::abs(m.x_avg - (m0.x_avg + m0.p_avg * 10)) < 1e-8);
}

TEST_CASE("kick with flat potential and coherent kernel is the identity") {
    const auto c = testing::small_config();
    auto f = testing::random_smooth_field(c.make_grid(), 2);
    const auto before = f;
    SplitStepSolver s(f.grid, std::nullopt, CorrelationKernel::coherent(), 3.0, 0.01);
    s.kick_step(f);
    CHECK(testing::max_abs_diff(f.values, before.values) < 1e-14);
}

TEST_CASE("collision kick preserves density and pumps momentum variance") {
    auto c = testing::small_config();
    c.grid = {-40, 40, 64, -6, 6, 256};
    const auto g = c.make_grid();
    auto f = testing::random_smooth_field(g, 3);
    const auto n0 = density(f);
    const auto m0 = moments(f);
    const double dt = 0.1, tau = 3.0, lambda = 4.0;
    SplitStepSolver s(g, std::nullopt, CorrelationKernel::sech(lambda), tau, dt);
    s.kick_step(f);
    CHECK(testing::max_abs_diff(density(f), n0) < 1e-12);
    const auto m1 = moments(f);
    // Exact sub-flow: d<p^2>/dt = hbar^2/(lambda^2 tau), <p> unchanged.
    CHECK(std::abs(m1.p_avg - m0.p_avg) < 1e-11);
    CHECK(m1.sigma02 - m0.sigma02 == doctest::Approx(dt / (lambda * lambda * tau)).epsilon(1e-6));
}

TEST_CASE("kick multiplier is a contraction for contractive kernels") {
    const auto c = testing::small_config();
    for (const auto& k : {CorrelationKernel::sech(1.0), CorrelationKernel::exponential(3.0),
                          CorrelationKernel::quadratic(0.0, 0.05)}) {
        SplitStepSolver s(c.make_grid(), Barrier{1.0}, k, 3.0, 0.05);
        double worst = 0.0;
        for (int i = 0; i < c.grid.n_x; i += 7)
            for (int kk = 0; kk < c.grid.n_p; ++kk) worst = std::max(worst, std::abs(s.multiplier(i, kk)));
        CHECK(worst <= 1.0 + 1e-15);
        CHECK(std::abs(s.multiplier(3, c.grid.n_p / 2) - 1.0) < 1e-15);
    }
    CHECK(std::abs(kick_multiplier(Barrier{1.0}, CorrelationKernel::sech(2.0), 1.0, 3.0, 0.1, 0.5,
                                   1.0) -
                   std::exp(cplx(-0.1 * (1 - 1 / std::cosh(0.5)) / 3.0,
                                 -0.1 * (std::exp(-1.0) - 1.0)))) < 1e-15);
}

TEST_CASE("strang step with flat potential and coherent kernel is a pure drift") {
    auto c = testing::small_config();
    c.barrier.reset();
    auto a = initial_wigner(c);
    auto b = a;
    SplitStepSolver s(c);
    s.strang_step(a);
    s.drift(b, c.dt);
    CHECK(testing::max_abs_diff(a.values, b.values) < 1e-14);
}

TEST_CASE("fused and unfused steps agree") {
    auto c = testing::small_config();
    c.kernel = CorrelationKernel::sech(4.0);
    auto a = initial_wigner(c);
    auto b = a;
    SplitStepSolver s(c);
    s.advance(a, 2, true);
    s.advance(b, 2, false);
    CHECK(testing::max_abs_diff(a.values, b.values) < 1e-12);
    CHECK(a.time == doctest::Approx(2 * c.dt));
    auto d = initial_wigner(c);
    s.strang_step(d);
    s.strang_step(d);
    CHECK(testing::max_abs_diff(a.values, d.values) < 1e-12);
}

TEST_CASE("run with t_final = 0 returns the initial moments only") {
    auto c = testing::small_config();
    c.t_final = 0.0;
    c.snapshot_times = {0.0};
    const auto r = run(c);
    REQUIRE(r.moments.size() == 1);
    CHECK(r.moments[0].t == 0.0);
    CHECK(r.moments[0].norm == doctest::Approx(1.0));
    CHECK(r.snapshots.size() == 1);
}

TEST_CASE("run records samples, snapshots and observers") {
    auto c = testing::small_config();
    c.kernel = CorrelationKernel::sech(4.0);
    c.sample_every = 10;
    int calls = 0;
    std::vector<SampleObserver> obs{[&](const WignerField& f, const MomentRecord& m) {
        ++calls;
        CHECK(f.time == m.t);
    }};
    const auto r = run(c, obs);
    CHECK(r.moments.size() == 11);
    CHECK(calls == 11);
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0].time == doctest::Approx(0.5));
    CHECK(r.final_field.time == doctest::Approx(1.0));
    for (const auto& m : r.moments) CHECK(std::abs(m.norm - 1.0) < 1e-12);
    CHECK_FALSE(r.boundary_warning_time.has_value());

    c.sample_every = 1;
    const auto every = run(c);
    CHECK(every.moments.size() == 101);
    CHECK(every.moments.back().p_avg == doctest::Approx(r.moments.back().p_avg).epsilon(1e-12));
}

TEST_CASE("norm is conserved with barrier and decoherence") {
    auto c = testing::small_config();
    c.kernel = CorrelationKernel::sech(2.0);
    c.t_final = 15.0;
    c.snapshot_times.clear();
    const auto r = run(c);
    for (const auto& m : r.moments) CHECK(std::abs(m.norm - 1.0) < 1e-10);
    CHECK(r.final_field.all_finite());
}

TEST_CASE("boundary warning fires when the packet reaches the edge") {
    auto c = testing::small_config();
    c.barrier.reset();
    c.t_final = 25.0;
    c.snapshot_times.clear();
    const auto r = run(c);
    REQUIRE(r.boundary_warning_time.has_value());
    CHECK(*r.boundary_warning_time < 25.0);
    REQUIRE_FALSE(r.warnings.empty());
    CHECK(r.warnings.back().find("the simulation domain should be made larger") !=
          std::string::npos);
}

TEST_CASE("non-finite moments raise with the step index") {
    MomentRecord m;
    CHECK_NOTHROW(ensure_finite(m, 3));
    m.sigma20 = std::nan("");
    try {
        ensure_finite(m, 42);
        FAIL("expected NonFiniteField");
    } catch (const NonFiniteField& e) {
        CHECK(e.step() == 42);
        CHECK(std::string(e.what()).find("42") != std::string::npos);
    }
}
