#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bfb/rng.hpp"
#include "bfb/vectors.hpp"

using namespace bfb;

TEST_CASE("pairing on fixed examples") {
    CHECK(pair(DualVector{1, 2}, Vector{3, 4}) == doctest::Approx(11.0).epsilon(1e-15));
    CHECK(pair(DualVector{0, 0}, Vector{7, -1}) == 0.0);
    // hand sum: 1*2 + (-1)*2 + 2*0.5 = 1
    CHECK(pair(DualVector{1, -1, 2}, Vector{2, 2, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pairing rejects dimension mismatch") {
    CHECK_THROWS_AS(pair(DualVector{1, 2}, Vector{1, 2, 3}), ContractViolation);
}

TEST_CASE("norms on fixed examples") {
    CHECK(norm_p(Vector{3, 4}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(norm_p(Vector{1, 1, 1, 1}, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    // (1 + 8)^(1/3), evaluated independently as cbrt
    CHECK(norm_p(Vector{1, -2}, 3.0) == doctest::Approx(std::cbrt(9.0)).epsilon(1e-14));
    CHECK(norm_p(Vector{1, -2}, 3.0) == doctest::Approx(2.08008382305190411).epsilon(1e-14));
    CHECK(norm_p(Vector{1, -5, 2}, p_inf) == doctest::Approx(5.0));
    CHECK_THROWS_AS(norm_p(Vector{1, 2}, 0.5), ContractViolation);
}

TEST_CASE("construction rejects non-finite coordinates") {
    CHECK_THROWS_AS((Vector{1.0, std::nan("")}), ContractViolation);
    CHECK_THROWS_AS((DualVector{std::numeric_limits<double>::infinity()}), ContractViolation);
}

TEST_CASE("pairing is bilinear on random samples") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 1 + static_cast<std::size_t>(rng.uniform(0, 6));
        auto rnd = [&] {
            std::vector<double> c(d);
            for (auto& v : c) v = rng.uniform(-10, 10);
            return c;
        };
        DualVector u(rnd()), v(rnd());
        Vector x(rnd());
        double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        DualVector combo = add(scale(a, u), scale(b, v));
        double lhs = pair(combo, x);
        double rhs = a * pair(u, x) + b * pair(v, x);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1.0 + std::fabs(lhs) + std::fabs(rhs)));
    }
}

TEST_CASE("Hoelder inequality on random samples") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t d = 1 + static_cast<std::size_t>(rng.uniform(0, 8));
        std::vector<double> xc(d), uc(d);
        for (auto& v : xc) v = rng.uniform(-5, 5);
        for (auto& v : uc) v = rng.uniform(-5, 5);
        Vector x(xc);
        DualVector u(uc);
        double p = trial % 5 == 0 ? 1.0 : rng.uniform(1.0, 4.0);
        double q = p == 1.0 ? p_inf : p / (p - 1.0);
        CHECK(std::fabs(pair(u, x)) <= norm_p(u, q) * norm_p(x, p) * (1.0 + 1e-12));
    }
}
