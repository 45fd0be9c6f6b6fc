#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bfb/checks.hpp"
#include "helpers.hpp"

using namespace bfb;

// ---------------------------------------------------------------------------
// certificates

TEST_CASE("certificate formulas on the documented substitutions") {
    CertificateAux aux;
    aux.alpha = 1.0;
    aux.beta = 1.0;
    aux.eps = 1.0;
    ConditionCertificate c = derive_certificate(CertificateRoute::cocoercive, aux);
    CHECK(c.kappa == doctest::Approx(1.0));
    CHECK(c.delta1 == 0.0);
    CHECK(c.delta2 == doctest::Approx(0.5));

    CertificateAux sm;
    sm.alpha = 1.0;
    sm.mu = 1.0;
    sm.nu = 1.0;
    sm.eps = 1.0;
    ConditionCertificate s = derive_certificate(CertificateRoute::strong_monotone, sm);
    CHECK(s.kappa == doctest::Approx(1.0));
    CHECK(s.delta1 == doctest::Approx(0.5));
    CHECK(s.delta2 == doctest::Approx(0.5));

    CertificateAux dp;
    dp.kappa = 7.5;  // Lipschitz constant of grad psi with the quadratic kernel
    ConditionCertificate d = derive_certificate(CertificateRoute::descent_pair, dp);
    CHECK(d.kappa == 7.5);
    CHECK(d.delta1 == 0.0);
    CHECK(d.delta2 == 1.0);

    CertificateAux rc;
    rc.alpha = 2.0;
    rc.beta = 1.5;
    rc.eps = 0.5;
    ConditionCertificate r = derive_certificate(CertificateRoute::renaud_cohen, rc);
    CHECK(r.kappa == doctest::Approx(1.0 / (2.0 * (3.0 - 0.5))));
    CHECK(r.delta1 == r.delta2);
}

TEST_CASE("certificate rejects inadmissible eps and ranges") {
    CertificateAux aux;
    aux.alpha = 1.0;
    aux.beta = 1.0;
    aux.eps = 2.0;  // not < 2*beta
    CHECK_THROWS_AS(derive_certificate(CertificateRoute::cocoercive, aux), ContractViolation);
    aux.eps = -0.1;
    CHECK_THROWS_AS(derive_certificate(CertificateRoute::cocoercive, aux), ContractViolation);
    CertificateAux sm;
    sm.alpha = 1.0;
    sm.mu = 1.0;
    sm.nu = 2.0;
    sm.eps = 0.6;  // not < 2*mu/nu^2 = 0.5
    CHECK_THROWS_AS(derive_certificate(CertificateRoute::strong_monotone, sm), ContractViolation);
    CHECK_THROWS_AS(explicit_certificate(1.0, 1.0, 0.5), ContractViolation);   // delta1 = 1
    CHECK_THROWS_AS(explicit_certificate(-1.0, 0.0, 0.5), ContractViolation);  // kappa < 0
    CHECK_THROWS_AS(explicit_certificate(1.0, 0.0, 1.5), ContractViolation);   // delta2 > 1
}

// ---------------------------------------------------------------------------
// monotone maps

TEST_CASE("monotone map construction and potentials") {
    CHECK_THROWS_AS(linear_map_diag({-1.0}), ContractViolation);
    CHECK_THROWS_AS(linear_map_dense(2, {0.0, 1.0, 1.0, -3.0}), ContractViolation);
    MonotoneMap rot = rotation2d_map();  // monotone, sym part zero
    CHECK_FALSE(rot.has_potential());
    CHECK(rot.eval(Vector{1, 0}).coords() == std::vector<double>{0, 1});

    MonotoneMap tg = translation_gradient_map(Vector{1, 2}, 2.0);
    CHECK(tg.eval(Vector{1, 2}).coords() == std::vector<double>{0, 0});
    CHECK(tg.has_potential());

    // potential gradient matches finite differences
    MonotoneMap pg = power_gradient_map(3, 1.5, 1.0, 0, 2);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> c(3);
        for (auto& v : c) {
            v = rng.uniform(-2, 2);
            if (std::fabs(v) < 0.2) v = 0.3;
        }
        Vector x(c);
        DualVector g = pg.eval(x);
        double h = 1e-6;
        for (std::size_t k = 0; k < 3; ++k) {
            auto up = c, dn = c;
            up[k] += h;
            dn[k] -= h;
            double fd = (pg.potential(Vector(up)) - pg.potential(Vector(dn))) / (2 * h);
            CHECK(std::fabs(g[k] - fd) <= 1e-6 * (1.0 + std::fabs(g[k])));
        }
    }
}

TEST_CASE("sampled monotonicity of the monotone map catalog") {
    std::vector<MonotoneMap> maps = {
        zero_map(2),          scaled_identity_map(2, 2.0),
        rotation2d_map(),     translation_gradient_map(Vector{0.5, -1.0}),
        constant_map(DualVector{1, 2}), power_gradient_map(2, 1.5, 0.5, 0, 2),
    };
    Rng rng(11);
    for (const auto& B : maps) {
        CAPTURE(B.describe());
        for (int i = 0; i < 500; ++i) {
            std::vector<double> a(2), b(2);
            for (auto& v : a) v = rng.uniform(-3, 3);
            for (auto& v : b) v = rng.uniform(-3, 3);
            Vector x(a), y(b);
            CHECK(pair(sub(B.eval(x), B.eval(y)), sub(x, y)) >= -1e-10);
        }
    }
}

// ---------------------------------------------------------------------------
// set-valued maps

TEST_CASE("scalar graph membership and distances") {
    ScalarGraph abs{ScalarGraph::Kind::abs_subdiff, 2.0, 0.0};
    CHECK(abs.dist(0.0, 1.5) == 0.0);
    CHECK(abs.dist(0.0, 2.5) == doctest::Approx(0.5));
    CHECK(abs.dist(1.0, 2.0) == 0.0);
    CHECK(abs.dist(1.0, 1.0) == doctest::Approx(1.0));

    ScalarGraph cone{ScalarGraph::Kind::interval_cone, 0.0, 1.0};
    CHECK(cone.dist(0.5, 0.0) == 0.0);
    CHECK(cone.dist(0.0, -5.0) == 0.0);
    CHECK(cone.dist(1.0, 3.0) == 0.0);
    CHECK(cone.dist(0.5, 0.2) == doctest::Approx(0.2));
    CHECK(std::isinf(cone.dist(1.5, 0.0)));
    CHECK(cone.selection(0.0) == 0.0);
}

TEST_CASE("set valued map structure and selections") {
    SetValuedMap l1 = l1_subdifferential(2, 1.0);
    CHECK(l1.member(Vector{0, 2}, DualVector{0.3, 1.0}, 1e-12));
    CHECK_FALSE(l1.member(Vector{0, 2}, DualVector{1.3, 1.0}, 1e-9));
    CHECK(l1.selection(Vector{0, 2}).coords() == std::vector<double>{0, 1});

    SetValuedMap box = box_normal_cone({0.0, 0.0}, {1.0, 1.0});
    CHECK(box.member(Vector{0, 0.5}, DualVector{-3, 0}, 1e-12));
    CHECK_FALSE(box.member(Vector{0.5, 0.5}, DualVector{-3, 0}, 1e-9));
    CHECK_FALSE(box.in_dom(Vector{2, 0}));

    SetValuedMap simplex = simplex_normal_cone(3);
    CHECK(simplex.member(Vector{0.2, 0.3, 0.5}, DualVector{2, 2, 2}, 1e-12));
    CHECK_FALSE(simplex.member(Vector{0.2, 0.3, 0.5}, DualVector{2, 2, 1}, 1e-9));
    CHECK_FALSE(simplex.in_dom(Vector{0.2, 0.3, 0.4}));

    SetValuedMap half = halfspace_normal_cone({1.0, 0.0}, 1.0);
    CHECK(half.member(Vector{0.5, 0}, DualVector{0, 0}, 1e-12));
    CHECK(half.member(Vector{1.0, 0}, DualVector{2, 0}, 1e-12));
    CHECK_FALSE(half.member(Vector{0.5, 0}, DualVector{1, 0}, 1e-9));

    SetValuedMap zero = zero_set_map(2);
    CHECK(zero.is_zero());
    CHECK(zero.selection(Vector{5, 5}).coords() == std::vector<double>{0, 0});
}

TEST_CASE("graph monotonicity of every built-in set-valued map") {
    std::vector<SetValuedMap> maps = {
        zero_set_map(2),
        constant_set_map(DualVector{1, -1}),
        l1_subdifferential(2, 0.7),
        box_normal_cone({-1.0, 0.0}, {1.0, 2.0}),
        linear_set_map(2, {2.0, 0.0, 0.0, 1.0}, {0.5, -0.5}),
        simplex_normal_cone(2),
        halfspace_normal_cone({1.0, 1.0}, 1.0),
        separable_map({ScalarGraph{ScalarGraph::Kind::cubic, 1.0, 0.0},
                       ScalarGraph{ScalarGraph::Kind::sign_shift, 1.0, 0.0}}),
    };
    for (const auto& A : maps) {
        CAPTURE(A.describe());
        BoxSampler region = BoxSampler::cube(A.dim(), -2.0, 2.0, false);
        CheckReport rep = check_graph_monotone(structural_graph_sampler(A, region), 2000, 3);
        CHECK(rep.pass);
    }
}

// ---------------------------------------------------------------------------
// sampled checkers: pass cases, fail cases

TEST_CASE("cocoercivity checker") {
    BoxSampler region = BoxSampler::cube(2, -3.0, 3.0);
    CheckReport id = check_cocoercive(scaled_identity_map(2, 1.0), 1.0, region, 2000, 1);
    CHECK(id.pass);
    CHECK(std::fabs(id.worst_slack) <= 1e-12);
    CHECK(check_cocoercive(zero_map(2), 5.0, region, 2000, 1).pass);
    CheckReport rot = check_cocoercive(rotation2d_map(), 0.5, region, 2000, 1);
    CHECK_FALSE(rot.pass);
    CHECK(rot.witness.has_value());
}

TEST_CASE("lipschitz checker") {
    BoxSampler region = BoxSampler::cube(2, -3.0, 3.0);
    CHECK(check_lipschitz(scaled_identity_map(2, 2.0), 2.0, region, 2000, 1).pass);
    CHECK_FALSE(check_lipschitz(scaled_identity_map(2, 2.0), 1.0, region, 2000, 1).pass);
}

TEST_CASE("strong monotonicity and renaud-cohen checkers") {
    std::size_t d = 2;
    BoxSampler region = BoxSampler::cube(d, -2.0, 2.0);
    LegendreKernel f = make_quadratic_identity(d);

    SetValuedMap a2 = linear_set_map(d, {2.0, 0.0, 0.0, 2.0});
    MonotoneMap b1 = scaled_identity_map(d, 1.0);
    GraphSampler a_graph = resolvent_graph_sampler(f, a2, region);
    GraphSampler apb{[a_graph, b1](Rng& rng) {
        auto [x, xa] = a_graph.draw(rng);
        return std::make_pair(x, add(xa, b1.eval(x)));
    }};
    CHECK(check_strong_monotone(apb, 3.0, 2000, 1).pass);       // A+B = 3 Id
    CHECK_FALSE(check_strong_monotone(apb, 3.5, 2000, 1).pass);

    // A = 0, B = Id: reduces to cocoercivity of the identity
    GraphSampler zero_graph = resolvent_graph_sampler(f, zero_set_map(d), region);
    CHECK(check_renaud_cohen(zero_set_map(d), b1, 1.0, zero_graph, 1000, 1).pass);
    CHECK_FALSE(check_renaud_cohen(zero_set_map(d), rotation2d_map(), 0.5, zero_graph, 1000, 1).pass);

    // A strongly monotone (2 Id), B nu-Lipschitz: graph bound with beta = mu/nu^2
    MonotoneMap b2 = scaled_identity_map(d, 2.0);  // nu = 2
    GraphSampler a2_graph = resolvent_graph_sampler(f, a2, region);
    CHECK(check_renaud_cohen(a2, b2, 4.0 / 4.0, a2_graph, 1000, 1).pass);  // mu=4, nu=2
}

TEST_CASE("descent pair checker") {
    std::size_t d = 1;
    LegendreKernel quad = make_quadratic_identity(d);
    BoxSampler region = BoxSampler::cube(d, -1.0, 1.0);

    // psi = f: equality at kappa = 1
    CheckReport eq = check_descent_pair(scaled_identity_map(d, 1.0), quad, 1.0, region, 2000, 1);
    CHECK(eq.pass);
    CHECK(std::fabs(eq.worst_slack) <= 1e-12);

    // quadratic against entropy: quadratic growth beats linear for any kappa
    LegendreKernel ent = make_boltzmann_shannon(1);
    BoxSampler wide = BoxSampler::cube(1, 0.05, 60.0);
    CHECK_FALSE(check_descent_pair(scaled_identity_map(1, 1.0), ent, 3.0, wide, 4000, 1).pass);

    // the |x|^{3/2} counterexample: fails near zero for kappa = 1e6
    MonotoneMap psi32 = power_gradient_map(1, 1.5, 1.0, 0, 1);
    CheckReport r3 = check_descent_pair(psi32, quad, 1e6, region, 10000, 1);
    CHECK_FALSE(r3.pass);
    REQUIRE(r3.witness.has_value());
    CHECK(norm2(r3.witness->points[0]) < 1e-4);

    CHECK_THROWS_AS(check_descent_pair(rotation2d_map(), quad, 1.0, region, 10, 1),
                    ContractViolation);
}

TEST_CASE("descent triple checker") {
    LegendreKernel quad = make_quadratic_identity(1);
    MonotoneMap psi32 = power_gradient_map(1, 1.5, 1.0, 0, 1);
    std::vector<Vector> s0 = {Vector{0.0}};

    // on K = [0, inf) with z = 0 the three-point bound holds for kappa = 1
    BoxSampler cone = BoxSampler::cube(1, 0.0, 3.0);
    CheckReport onk = check_descent_triple(psi32, quad, 1.0, cone, s0, 10000, 1);
    CHECK(onk.pass);

    // quadratic psi against entropy f with a far-away z fails
    LegendreKernel ent = make_boltzmann_shannon(1);
    MonotoneMap psi_quad = scaled_identity_map(1, 1.0);
    BoxSampler wide = BoxSampler::cube(1, 0.05, 60.0);
    CHECK_FALSE(check_descent_triple(psi_quad, ent, 0.1, wide, {Vector{1.0}}, 4000, 1).pass);
}

TEST_CASE("main condition checker") {
    std::size_t d = 1;
    LegendreKernel quad = make_quadratic_identity(d);
    BoxSampler region = BoxSampler::cube(d, -1.0, 1.0);

    // B = 0: both sides vanish
    {
        ConditionSampler sampler{region, {Vector{0.25}},
                                 resolvent_graph_sampler(quad, zero_set_map(d), region)};
        ConditionCertificate cert = explicit_certificate(0.0, 0.0, 1.0);
        CheckReport rep =
            check_condition_main(zero_set_map(d), zero_map(d), quad, cert, sampler, 2000, 1);
        CHECK(rep.pass);
        CHECK(std::fabs(rep.worst_slack) <= 1e-12);
        // a nonzero kappa keeps it passing (with positive margin)
        CHECK(check_condition_main(zero_set_map(d), zero_map(d), quad,
                                   explicit_certificate(0.5, 0.0, 1.0), sampler, 2000, 1)
                  .pass);
    }

    // B = Id, A = 0, cocoercive certificate: Young's inequality route
    {
        CertificateAux aux;
        aux.alpha = 1.0;
        aux.beta = 1.0;
        aux.eps = 1.0;
        ConditionCertificate cert = derive_certificate(CertificateRoute::cocoercive, aux);
        ConditionSampler sampler{region, {Vector{0.0}},
                                 resolvent_graph_sampler(quad, zero_set_map(d), region)};
        CheckReport rep = check_condition_main(zero_set_map(d), scaled_identity_map(d, 1.0), quad,
                                               cert, sampler, 5000, 1);
        CHECK(rep.pass);
    }

    // the remark's counterexample: descent-pair constants do not transfer to
    // x outside the cone, witness sits near zero
    {
        SetValuedMap cone = box_normal_cone({0.0}, {std::numeric_limits<double>::infinity()});
        MonotoneMap psi32 = power_gradient_map(d, 1.5, 1.0, 0, 1);
        ConditionCertificate cert = explicit_certificate(1e6, 0.0, 1.0);
        ConditionSampler sampler{region, {Vector{0.0}},
                                 resolvent_graph_sampler(quad, cone, region)};
        CheckReport rep = check_condition_main(cone, psi32, quad, cert, sampler, 10000, 1);
        CHECK_FALSE(rep.pass);
        REQUIRE(rep.witness.has_value());
        CHECK(norm2(rep.witness->points[0]) < 1e-3);
    }
}

TEST_CASE("angle bounded checker on a constant map") {
    // a constant B makes both sides vanish
    BoxSampler region = BoxSampler::cube(2, -2.0, 2.0);
    CHECK(check_angle_bounded(constant_map(DualVector{1, 1}), 1.0, 1.0, region, 1000, 1).pass);
}

TEST_CASE("suggested kappa recovers a scale factor") {
    LegendreKernel quad = make_quadratic_identity(2);
    MonotoneMap b = scaled_identity_map(2, 2.0);  // psi = ||x||^2, D_psi = 2 D_f
    double k = suggest_kappa(b, quad, BoxSampler::cube(2, -2.0, 2.0), 2000, 1);
    CHECK(k == doctest::Approx(2.0).epsilon(1e-9));
}
