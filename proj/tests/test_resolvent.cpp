#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bfb/resolvent.hpp"
#include "helpers.hpp"

using namespace bfb;

namespace {

ResolventResult solve_path(const ResolventQuery& q, ResolventPath path,
                           std::optional<double> init = std::nullopt) {
    ResolventOptions opts;
    opts.path = path;
    opts.scalar_init = init;
    return resolvent_solve(q, opts);
}

}  // namespace

TEST_CASE("documented scalar queries") {
    LegendreKernel quad = make_quadratic_identity(1);
    LegendreKernel ent = make_boltzmann_shannon(1);

    // soft threshold: 2 - 1 in subdiff |1| = {1}
    ResolventResult a = resolvent_solve({quad, 1.0, l1_subdifferential(1, 1.0), DualVector{2}});
    CHECK(a.x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.a_star[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.residual <= 1e-12);

    ResolventResult b = resolvent_solve({ent, 1.0, zero_set_map(1), DualVector{0}});
    CHECK(b.x[0] == doctest::Approx(1.0).epsilon(1e-14));

    ResolventResult c = resolvent_solve({ent, 1.0, constant_set_map(DualVector{1}), DualVector{0}});
    CHECK(c.x[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(c.x[0] == doctest::Approx(0.36787944117144233).epsilon(1e-14));

    // cone projection: x = 0 with a* = -3 in the normal cone at 0
    SetValuedMap cone = box_normal_cone({0.0}, {std::numeric_limits<double>::infinity()});
    ResolventResult d = resolvent_solve({quad, 1.0, cone, DualVector{-3}});
    CHECK(d.x[0] == 0.0);
    CHECK(d.a_star[0] == doctest::Approx(-3.0));
    CHECK(d.residual <= 1e-12);
}

TEST_CASE("oracle equivalence: closed forms vs bisection-Newton") {
    // every registered scalar closed form, 500 random queries each
    struct Case {
        const char* name;
        LegendreKernel kernel;
        std::function<SetValuedMap(Rng&)> map;
    };
    LegendreKernel quad = make_quadratic_identity(1);
    LegendreKernel quad2 = make_quadratic_metric_diag({2.5});
    LegendreKernel ent = make_boltzmann_shannon(1);
    LegendreKernel pow15 = make_power_norm(1.5, 1.0, 1);
    LegendreKernel pow3 = make_power_norm(3.0, 2.0, 1);
    std::vector<Case> cases = {
        {"quad+zero", quad2, [](Rng&) { return zero_set_map(1); }},
        {"quad+constant", quad,
         [](Rng& r) { return constant_set_map(DualVector{r.uniform(-2, 2)}); }},
        {"quad+linear", quad2,
         [](Rng& r) {
             return separable_map({ScalarGraph{ScalarGraph::Kind::linear, r.uniform(0, 3),
                                               r.uniform(-1, 1)}});
         }},
        {"quad+abs", quad, [](Rng& r) { return l1_subdifferential(1, r.uniform(0.1, 2)); }},
        {"quad+interval", quad2,
         [](Rng& r) {
             double lo = r.uniform(-2, 0);
             return box_normal_cone({lo}, {lo + r.uniform(0.5, 3)});
         }},
        {"entropy+zero", ent, [](Rng&) { return zero_set_map(1); }},
        {"entropy+constant", ent,
         [](Rng& r) { return constant_set_map(DualVector{r.uniform(-2, 2)}); }},
        {"entropy+abs", ent, [](Rng& r) { return l1_subdifferential(1, r.uniform(0.1, 2)); }},
        {"power15+zero", pow15, [](Rng&) { return zero_set_map(1); }},
        {"power3+zero", pow3, [](Rng&) { return zero_set_map(1); }},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        Rng rng(77);
        for (int i = 0; i < 500; ++i) {
            SetValuedMap A = c.map(rng);
            ResolventQuery q{c.kernel, rng.uniform(0.1, 3.0), A, DualVector{rng.uniform(-3, 3)}};
            ResolventResult closed = solve_path(q, ResolventPath::closed_form);
            ResolventResult iter = solve_path(q, ResolventPath::scalar_iterative);
            CHECK(closed.used_closed_form);
            CHECK_FALSE(iter.used_closed_form);
            CHECK(std::fabs(closed.x[0] - iter.x[0]) <= 1e-10);
            CHECK(closed.residual <= 1e-12);
            CHECK(iter.residual <= 1e-12);
        }
    }
}

TEST_CASE("iterative-only scalar pairs solve to tolerance") {
    LegendreKernel ent = make_boltzmann_shannon(1);
    LegendreKernel pow15 = make_power_norm(1.5, 1.0, 1);
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        // entropy + shifted sign graph (the xi-block of the product example)
        ResolventQuery q1{ent, rng.uniform(0.2, 2.0),
                          separable_map({ScalarGraph{ScalarGraph::Kind::sign_shift, 1.0, 0.0}}),
                          DualVector{rng.uniform(-2, 2)}};
        ResolventResult r1 = resolvent_solve(q1);
        CHECK(r1.residual <= 1e-12);
        CHECK(r1.x[0] > 0.0);

        // power kernel + cubic graph (nonlinear in both parts)
        ResolventQuery q2{pow15, rng.uniform(0.2, 2.0),
                          separable_map({ScalarGraph{ScalarGraph::Kind::cubic, 1.0, 0.0}}),
                          DualVector{rng.uniform(-3, 3)}};
        ResolventResult r2 = resolvent_solve(q2);
        CHECK(r2.residual <= 1e-12);
    }
}

TEST_CASE("single-valuedness: inner initialization does not change the answer") {
    LegendreKernel ent = make_boltzmann_shannon(1);
    SetValuedMap sign = separable_map({ScalarGraph{ScalarGraph::Kind::sign_shift, 1.0, 0.0}});
    ResolventQuery q{ent, 0.7, sign, DualVector{0.9}};
    std::vector<double> inits{0.05, 0.5, 1.5, 3.0, 10.0};
    std::vector<double> sols;
    for (double init : inits)
        sols.push_back(solve_path(q, ResolventPath::scalar_iterative, init).x[0]);
    for (double s : sols) CHECK(std::fabs(s - sols[0]) <= 1e-8);
}

TEST_CASE("residual operator") {
    LegendreKernel quad = make_quadratic_identity(2);
    SetValuedMap l1 = l1_subdifferential(2, 1.0);
    ResolventQuery q{quad, 1.0, l1, DualVector{2, -3}};
    ResolventResult r = resolvent_solve(q);
    CHECK(resolvent_residual(q, r.x, r.a_star) <= 1e-12);

    // perturbing one coordinate of the identity-metric solution moves the
    // equation residual by the same amount
    std::vector<double> xp = r.x.coords();
    xp[0] += 1e-3;
    CHECK(resolvent_residual(q, Vector(xp), r.a_star) == doctest::Approx(1e-3).epsilon(1e-6));

    // zero map: x = grad_conjugate(target) zeroes the residual
    ResolventQuery qz{quad, 1.0, zero_set_map(2), DualVector{1, 1}};
    Vector x = quad.grad_conjugate(qz.target);
    CHECK(resolvent_residual(qz, x, DualVector{0, 0}) <= 1e-12);
}

TEST_CASE("subgradient inequality at returned points") {
    // quadratic kernel with A = subdiff of lambda ||.||_1: the returned a*
    // supports phi from below
    LegendreKernel quad = make_quadratic_identity(2);
    double lambda = 0.8;
    SetValuedMap l1 = l1_subdifferential(2, lambda);
    auto phi = [lambda](const Vector& v) { return lambda * norm_p(v, 1.0); };
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        ResolventQuery q{quad, rng.uniform(0.2, 2.0), l1,
                         DualVector{rng.uniform(-3, 3), rng.uniform(-3, 3)}};
        ResolventResult r = resolvent_solve(q);
        for (int j = 0; j < 10; ++j) {
            Vector y{rng.uniform(-4, 4), rng.uniform(-4, 4)};
            CHECK(phi(y) >= phi(r.x) + pair(r.a_star, sub(y, r.x)) - 1e-10);
        }
    }
}

TEST_CASE("entropy resolvents stay strictly positive") {
    LegendreKernel ent = make_boltzmann_shannon(3);
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        ResolventQuery q{ent, rng.uniform(0.2, 2.0), l1_subdifferential(3, 0.5),
                         DualVector{rng.uniform(-4, 2), rng.uniform(-4, 2), rng.uniform(-4, 2)}};
        ResolventResult r = resolvent_solve(q);
        for (std::size_t k = 0; k < 3; ++k) CHECK(r.x[k] > 0.0);
    }
}

TEST_CASE("simplex cone resolvents") {
    // entropy kernel: softmax, verified against a separate multiplier root find
    LegendreKernel ent = make_boltzmann_shannon(3);
    SetValuedMap simplex = simplex_normal_cone(3);
    Rng rng(19);
    for (int i = 0; i < 200; ++i) {
        DualVector u{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double gamma = rng.uniform(0.2, 2.0);
        ResolventResult r = resolvent_solve({ent, gamma, simplex, u});
        double sum = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(r.x[k] > 0.0);
            sum += r.x[k];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.residual <= 1e-10);

        // independent route: bisection on t for sum_k exp(u_k - gamma t) = 1
        double lo = -100, hi = 100;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += std::exp(u[k] - gamma * mid);
            (s > 1.0 ? lo : hi) = mid;
        }
        double t = 0.5 * (lo + hi);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(r.x[k] == doctest::Approx(std::exp(u[k] - gamma * t)).epsilon(1e-9));
    }

    // quadratic kernel requires the projection form
    LegendreKernel quad = make_quadratic_identity(3);
    CHECK_THROWS_AS(resolvent_solve({quad, 1.0, simplex, DualVector{1, 0, 0}}), UnsupportedPair);
    SetValuedMap proj = simplex_normal_cone(3, true);
    Rng rng2(23);
    for (int i = 0; i < 200; ++i) {
        DualVector u{rng2.uniform(-2, 2), rng2.uniform(-2, 2), rng2.uniform(-2, 2)};
        ResolventResult r = resolvent_solve({quad, 0.7, proj, u});
        double sum = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(r.x[k] >= 0.0);
            sum += r.x[k];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // optimality: distance from a* to the normal cone at x is zero
        CHECK(r.residual <= 1e-10);
    }
}

TEST_CASE("halfspace cone resolvent") {
    LegendreKernel quad = make_quadratic_metric_diag({2.0, 1.0});
    SetValuedMap half = halfspace_normal_cone({1.0, 1.0}, 1.0);
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        DualVector u{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        ResolventResult r = resolvent_solve({quad, rng.uniform(0.2, 2.0), half, u});
        CHECK(r.x[0] + r.x[1] <= 1.0 + 1e-10);
        CHECK(r.residual <= 1e-10);
    }
}

TEST_CASE("dense metric with affine map solves the linear system") {
    LegendreKernel dense = make_quadratic_metric(2, {2.0, 0.5, 0.5, 1.0});
    SetValuedMap lin = linear_set_map(2, {1.0, 0.0, 0.0, 3.0}, {0.5, -0.5});
    ResolventQuery q{dense, 0.8, lin, DualVector{1.0, 2.0}};
    ResolventResult r = resolvent_solve(q);
    CHECK(r.used_closed_form);
    CHECK(r.residual <= 1e-10);
    // (U + gamma M) x = u - gamma c holds
    DualVector g = dense.grad(r.x);
    for (std::size_t k = 0; k < 2; ++k) {
        double ax = (k == 0 ? 1.0 * r.x[0] + 0.5 : 3.0 * r.x[1] - 0.5);
        CHECK(g[k] + 0.8 * ax == doctest::Approx(q.target[k]).epsilon(1e-12));
    }
}

TEST_CASE("unsupported pairs fail loudly") {
    LegendreKernel dense = make_quadratic_metric(2, {2.0, 0.5, 0.5, 1.0});
    CHECK_THROWS_AS(resolvent_solve({dense, 1.0, l1_subdifferential(2, 1.0), DualVector{1, 1}}),
                    UnsupportedPair);
    LegendreKernel ent = make_boltzmann_shannon(2);
    CHECK_THROWS_AS(
        resolvent_solve({ent, 1.0, halfspace_normal_cone({1.0, 1.0}, 1.0), DualVector{0, 0}}),
        UnsupportedPair);
    CHECK_THROWS_AS(resolvent_solve({ent, -1.0, zero_set_map(2), DualVector{0, 0}}),
                    ContractViolation);
}

TEST_CASE("entropy underflow leaves the interior and raises") {
    LegendreKernel ent = make_boltzmann_shannon(1);
    // exp(-800) underflows to zero, which is not interior
    CHECK_THROWS_AS(resolvent_solve({ent, 1.0, constant_set_map(DualVector{800.0}), DualVector{0}}),
                    DomainViolation);
}
