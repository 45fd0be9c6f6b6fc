#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bfb/schedule.hpp"
#include "helpers.hpp"

using namespace bfb;

TEST_CASE("chi sequences") {
    ChiSequence geo{ChiSequence::Form::one_plus_geometric, 1.0, 0.5, {}};
    CHECK(geo.at(0) == doctest::Approx(2.0));
    CHECK(geo.at(3) == doctest::Approx(1.125));
    ChiSequence lst{ChiSequence::Form::list, 0, 0, {1.0, 1.5, 2.0}};
    CHECK(lst.at(1) == doctest::Approx(1.5));
    CHECK(lst.at(10) == doctest::Approx(2.0));  // tail continues the last value
}

TEST_CASE("constant schedule passes with zero violation") {
    KernelSchedule s = KernelSchedule::constant(make_quadratic_identity(2));
    CHECK_FALSE(s.varying());
    CHECK(s.eta_at(5) == 0.0);
    CHECK(s.eta_sum_bound() == 0.0);
    CheckReport rep = check_schedule(s, 10, 50, 42);
    CHECK(rep.pass);
    CHECK(std::fabs(rep.worst_slack) <= 1e-12);
}

TEST_CASE("decreasing chi admits eta = 0") {
    ChiSequence chi{ChiSequence::Form::one_plus_geometric, 1.0, 0.5, {}};
    KernelSchedule s = KernelSchedule::power_chi(1.5, 3, chi, 1.0);
    CHECK(s.eta_at(0) == 0.0);
    CheckReport rep = check_schedule(s, 8, 100, 7);
    CHECK(rep.pass);
    CHECK(s.limit_kernel().has_value());
}

TEST_CASE("increasing chi with eta declared zero is falsified") {
    ChiSequence chi{ChiSequence::Form::list, 0, 0, {1.0, 1.5, 2.0, 3.0}};
    KernelSchedule s =
        KernelSchedule::power_chi(2.0, 2, chi, 1.0, std::vector<double>{0.0, 0.0, 0.0});
    CheckReport rep = check_schedule(s, 3, 100, 7);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness.has_value());
    CHECK(rep.worst_slack < -1e-6);
}

TEST_CASE("increasing chi with derived eta passes") {
    ChiSequence chi{ChiSequence::Form::list, 0, 0, {1.0, 1.5, 2.0, 3.0}};
    KernelSchedule s = KernelSchedule::power_chi(2.0, 2, chi, 1.0);
    CHECK(s.eta_at(0) == doctest::Approx(0.5));
    CHECK(s.eta_at(1) == doctest::Approx(2.0 / 1.5 - 1.0));
    CHECK(s.eta_at(10) == 0.0);
    CHECK(std::isfinite(s.eta_sum_bound()));
    CheckReport rep = check_schedule(s, 5, 100, 7);
    CHECK(rep.pass);
}

TEST_CASE("metric schedule of shrinking scaled identities passes") {
    MetricSequence seq{MetricSequence::Form::scaled_identity_geometric, 2, 1.0, 0.5, {}};
    KernelSchedule s = KernelSchedule::metric(seq, 1.0);
    CHECK(s.alpha() == 1.0);
    CHECK(s.eta_at(0) == 0.0);
    CheckReport rep = check_schedule(s, 10, 100, 9);
    CHECK(rep.pass);
}

TEST_CASE("metric schedule below the declared bound is rejected") {
    MetricSequence seq{MetricSequence::Form::diag_list, 2, 0, 0, {{0.5, 2.0}, {0.4, 2.0}}};
    CHECK_THROWS_AS(KernelSchedule::metric(seq, 1.0), ContractViolation);
    KernelSchedule ok = KernelSchedule::metric(seq, 0.4);
    CHECK(ok.eta_at(0) == 0.0);  // shrinking diagonals
}

TEST_CASE("growing metric list derives eta from the quadratic form ratio") {
    MetricSequence seq{MetricSequence::Form::diag_list, 2, 0, 0, {{1.0, 1.0}, {1.5, 1.2}}};
    KernelSchedule s = KernelSchedule::metric(seq, 1.0);
    CHECK(s.eta_at(0) == doctest::Approx(0.5));
    CHECK(check_schedule(s, 3, 100, 5).pass);
}

TEST_CASE("product chi schedule matches the block kernel family") {
    ChiSequence chi{ChiSequence::Form::one_plus_geometric, 1.0, 0.5, {}};
    KernelSchedule s = KernelSchedule::product_chi(1.5, 3, chi, 1.0);
    CHECK(s.base().dim() == 4);
    LegendreKernel f0 = s.kernel_at(0);
    // chi_0 = 2: value (2/1.5)|z|^1.5 + 1 - xi + xi ln xi at z=(1,0,0), xi=1
    CHECK(f0.eval(Vector{1, 0, 0, 1}) == doctest::Approx(2.0 / 1.5 + 1.0 - 1.0).epsilon(1e-14));
    CHECK(check_schedule(s, 8, 100, 3).pass);
}

TEST_CASE("non-summable declared eta is a construction error") {
    ChiSequence chi{ChiSequence::Form::list, 0, 0, {1.0, 2.0}};
    std::vector<double> bad{std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(KernelSchedule::power_chi(2.0, 2, chi, 1.0, bad), ContractViolation);
    CHECK_THROWS_AS(KernelSchedule::power_chi(2.0, 2, chi, 1.0, std::vector<double>{-0.1}),
                    ContractViolation);
}

TEST_CASE("alpha beyond the family is a construction error") {
    ChiSequence chi{ChiSequence::Form::one_plus_geometric, 1.0, 0.5, {}};
    CHECK_THROWS_AS(KernelSchedule::power_chi(2.0, 2, chi, 1.5), ContractViolation);
    CHECK_THROWS_AS(KernelSchedule::constant(make_quadratic_identity(2), 1.5), ContractViolation);
}
