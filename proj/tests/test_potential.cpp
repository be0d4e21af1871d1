#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "wigner/potential.hpp"

using namespace wigner;

TEST_CASE("Gaussian barrier values") {
    CHECK(eval_potential(Barrier{1.0}, 0.0) == 1.0);
    CHECK(eval_potential(Barrier{1.0}, 1.0) == doctest::Approx(0.36787944117144233));
    CHECK(eval_potential(Barrier{2.0}, 2.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(Barrier::gaussian(3.0).a == 3.0);
    CHECK_THROWS_AS(Barrier::gaussian(0.0), std::invalid_argument);
}

TEST_CASE("delta_v values") {
    const Barrier b{1.0};
    CHECK(delta_v(b, 0.0, 0.7) == 0.0);
    CHECK(delta_v(b, 0.0, -12.0) == 0.0);
    CHECK(delta_v(b, 1.0, 0.0) == 0.0);
    // V(1) - V(0)
    CHECK(delta_v(b, 0.5, 1.0) == doctest::Approx(std::exp(-1.0) - 1.0).epsilon(1e-15));
    CHECK(delta_v(b, 0.5, 1.0) == doctest::Approx(-0.6321206).epsilon(1e-7));
}

TEST_CASE("delta_v symmetry") {
    for (double a : {0.5, 1.0, 5.0}) {
        const Barrier b{a};
        for (double x = -6.0; x <= 6.0; x += 0.37) {
            for (double eta = -9.0; eta <= 9.0; eta += 0.41) {
                CHECK(delta_v(b, x, -eta) == doctest::Approx(-delta_v(b, x, eta)));
                CHECK(delta_v(b, -x, eta) == doctest::Approx(-delta_v(b, x, eta)));
            }
            CHECK(delta_v(b, x, 0.0) == 0.0);
        }
    }
}
