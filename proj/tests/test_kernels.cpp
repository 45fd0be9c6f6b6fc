#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bfb/kernels.hpp"
#include "helpers.hpp"

using namespace bfb;
using namespace bfb::testing;

namespace {

std::vector<LegendreKernel> builtin_kernels() {
    return {
        make_quadratic_identity(3),
        make_quadratic_metric_diag({2.0, 1.0, 0.5}),
        make_quadratic_metric(2, {2.0, 0.5, 0.5, 1.0}),
        make_boltzmann_shannon(3),
        make_power_norm(1.5, 1.0, 3),
        make_power_norm(2.0, 1.0, 3),
        make_power_norm(3.0, 2.0, 3),
        make_product_kernel(make_power_norm(1.5, 1.25, 2), make_boltzmann_shannon(1), 1.0),
    };
}

}  // namespace

TEST_CASE("quadratic metric fixed examples") {
    LegendreKernel id2 = make_quadratic_identity(2);
    CHECK(id2.grad(Vector{2, 3}).coords() == std::vector<double>{2, 3});

    LegendreKernel diag = make_quadratic_metric_diag({2.0, 1.0});
    CHECK(diag.eval(Vector{1, 1}) == doctest::Approx(1.5).epsilon(1e-15));
    Vector back = diag.grad_conjugate(DualVector{2, 1});
    CHECK(back[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(back[1] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(make_quadratic_metric(2, {1.0, 2.0, 0.0, 1.0}), ContractViolation);
    CHECK_THROWS_AS(make_quadratic_metric(2, {1.0, 2.0, 2.0, 1.0}), ContractViolation);  // not PD
    CHECK_THROWS_AS(make_quadratic_metric_diag({1.0, 0.0}), ContractViolation);
}

TEST_CASE("entropy fixed examples") {
    LegendreKernel ent = make_boltzmann_shannon(3);
    CHECK(ent.eval(Vector{1, 1, 1}) == doctest::Approx(-3.0).epsilon(1e-15));
    LegendreKernel e1 = make_boltzmann_shannon(1);
    CHECK(e1.grad(Vector{1})[0] == 0.0);
    CHECK(e1.grad_conjugate(DualVector{1})[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(e1.eval(Vector{0}) == 0.0);            // 0 ln 0 = 0 convention
    CHECK(std::isinf(e1.eval(Vector{-0.5})));
    CHECK(e1.in_dom(Vector{0}));
    CHECK_FALSE(e1.in_int_dom(Vector{0}));
    CHECK_THROWS_AS(e1.grad(Vector{0}), DomainViolation);
}

TEST_CASE("power norm fixed examples") {
    LegendreKernel p2 = make_power_norm(2.0, 1.0, 1);
    CHECK(p2.grad(Vector{3})[0] == doctest::Approx(3.0).epsilon(1e-15));
    LegendreKernel p3 = make_power_norm(3.0, 1.0, 1);
    CHECK(p3.grad(Vector{2})[0] == doctest::Approx(4.0).epsilon(1e-14));
    LegendreKernel p3c2 = make_power_norm(3.0, 2.0, 1);
    CHECK(p3c2.grad_conjugate(DualVector{8})[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(make_power_norm(1.0, 1.0, 1), ContractViolation);
    CHECK_THROWS_AS(make_power_norm(2.0, 0.5, 1), ContractViolation);
}

TEST_CASE("product kernel fixed examples") {
    LegendreKernel prod =
        make_product_kernel(make_power_norm(2.0, 1.0, 2), make_boltzmann_shannon(1), 1.0);
    // 0.5*2 + 1 + (1*0 - 1) = 1
    CHECK(prod.eval(Vector{1, 1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    DualVector g = prod.grad(Vector{0.5, -0.5, 1});
    CHECK(g[2] == 0.0);  // entropy block at xi = 1
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK_FALSE(prod.in_int_dom(Vector{1, 1, 0}));
    CHECK(prod.in_dom(Vector{1, 1, 0}));
}

TEST_CASE("bregman distance fixed examples") {
    LegendreKernel q = make_quadratic_identity(2);
    CHECK(bregman(q, Vector{1, 0}, Vector{0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bregman(q, Vector{0.7, -0.3}, Vector{0.7, -0.3}) == 0.0);

    // scalar entropy: D(1, e) = (-1) - 0 - (1 - e) = e - 2
    LegendreKernel ent = make_boltzmann_shannon(1);
    CHECK(bregman(ent, Vector{1}, Vector{std::exp(1.0)}) ==
          doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-14));
    CHECK(bregman(ent, Vector{1}, Vector{std::exp(1.0)}) ==
          doctest::Approx(0.71828182845904523).epsilon(1e-14));

    // |.|^3/3: D(2,1) = 8/3 - 1/3 - 1 = 4/3
    LegendreKernel p3 = make_power_norm(3.0, 1.0, 1);
    CHECK(bregman(p3, Vector{2}, Vector{1}) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    // y outside the interior gives +inf by definition
    CHECK(std::isinf(bregman(ent, Vector{1}, Vector{0})));
    CHECK(std::isinf(bregman(ent, Vector{-1}, Vector{1})));
}

TEST_CASE("gradient consistency against finite differences") {
    for (const LegendreKernel& f : builtin_kernels()) {
        CAPTURE(f.describe());
        Rng rng(101);
        for (int i = 0; i < 200; ++i) {
            Vector x = sample_fd_safe(f, rng);
            DualVector g = f.grad(x);
            DualVector fd = fd_gradient(f, x);
            double err = norm2(sub(g, fd)) / (1.0 + norm2(g));
            CHECK(err <= 1e-6);
        }
    }
}

TEST_CASE("conjugate gradient inverts the gradient") {
    for (const LegendreKernel& f : builtin_kernels()) {
        CAPTURE(f.describe());
        Rng rng(202);
        for (int i = 0; i < 200; ++i) {
            Vector x = sample_fd_safe(f, rng);
            Vector back = f.grad_conjugate(f.grad(x));
            CHECK(norm2(sub(back, x)) <= 1e-8 * (1.0 + norm2(x)));
            // and the other way around, on dual points grad produces
            DualVector u = f.grad(x);
            DualVector round = f.grad(f.grad_conjugate(u));
            CHECK(norm2(sub(round, u)) <= 1e-8 * (1.0 + norm2(u)));
        }
    }
}

TEST_CASE("bregman nonnegativity and strict positivity") {
    for (const LegendreKernel& f : builtin_kernels()) {
        CAPTURE(f.describe());
        Rng rng(303);
        for (int i = 0; i < 200; ++i) {
            Vector x = sample_fd_safe(f, rng);
            Vector y = sample_fd_safe(f, rng);
            double d = bregman(f, x, y);
            CHECK(d >= -1e-12);
            if (norm2(sub(x, y)) >= 1e-6) CHECK(d > 0.0);
        }
    }
}

TEST_CASE("three point identity") {
    for (const LegendreKernel& f : builtin_kernels()) {
        CAPTURE(f.describe());
        Rng rng(404);
        for (int i = 0; i < 200; ++i) {
            Vector x = sample_fd_safe(f, rng);
            Vector y = sample_fd_safe(f, rng);
            Vector z = sample_fd_safe(f, rng);
            double lhs = pair(sub(f.grad(y), f.grad(x)), sub(z, x));
            double rhs = bregman(f, z, x) + bregman(f, x, y) - bregman(f, z, y);
            double scale = std::fabs(bregman(f, z, x)) + std::fabs(bregman(f, x, y)) +
                           std::fabs(bregman(f, z, y));
            CHECK(std::fabs(lhs - rhs) <= 1e-9 * (1.0 + scale));
        }
    }
}

TEST_CASE("midpoint convexity along random segments") {
    for (const LegendreKernel& f : builtin_kernels()) {
        CAPTURE(f.describe());
        Rng rng(505);
        for (int i = 0; i < 200; ++i) {
            Vector x = sample_fd_safe(f, rng);
            Vector y = sample_fd_safe(f, rng);
            Vector mid = scale(0.5, add(x, y));
            CHECK(f.eval(mid) <= 0.5 * f.eval(x) + 0.5 * f.eval(y) + 1e-10);
        }
    }
}

TEST_CASE("strong convexity flag is honest") {
    for (const LegendreKernel& f : builtin_kernels()) {
        if (!f.capabilities().strong_convexity) continue;
        CAPTURE(f.describe());
        double a0 = *f.capabilities().strong_convexity;
        Rng rng(606);
        for (int i = 0; i < 200; ++i) {
            Vector x = sample_fd_safe(f, rng);
            Vector y = sample_fd_safe(f, rng);
            double d = norm2(sub(x, y));
            CHECK(bregman(f, x, y) >= 0.5 * a0 * d * d - 1e-10 * (1.0 + d * d));
        }
    }
}

TEST_CASE("capability flags of the catalog") {
    CHECK(make_boltzmann_shannon(2).capabilities().supercoercive);
    CHECK(make_boltzmann_shannon(2).capabilities().cofinite);
    CHECK_FALSE(make_boltzmann_shannon(2).capabilities().strong_convexity.has_value());
    auto q = make_quadratic_metric_diag({2.0, 4.0});
    CHECK(*q.capabilities().strong_convexity == doctest::Approx(2.0));
    CHECK(*q.capabilities().symmetry_ratio == doctest::Approx(0.5));
    CHECK(make_power_norm(1.5, 1.0, 2).capabilities().supercoercive);
    CHECK_FALSE(make_power_norm(1.5, 1.0, 2).capabilities().uniformly_convex);
    CHECK(make_power_norm(2.5, 1.0, 2).capabilities().uniformly_convex);
}
