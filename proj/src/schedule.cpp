#include "bfb/schedule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bfb/rng.hpp"

namespace bfb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double derived_eta_from_list(const std::vector<double>& v, std::size_t n) {
    if (v.size() < 2 || n + 1 >= v.size()) return 0.0;
    return std::max(0.0, v[n + 1] / v[n] - 1.0);
}

double eta_list_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t n = 0; n + 1 < v.size(); ++n) s += derived_eta_from_list(v, n);
    return s;
}
}  // namespace

double ChiSequence::at(std::size_t n) const {
    switch (form) {
        case Form::one_plus_geometric:
            return 1.0 + coeff * std::pow(ratio, static_cast<double>(n));
        case Form::list:
            if (values.empty()) return 1.0;
            return values[std::min(n, values.size() - 1)];
    }
    return 1.0;
}

std::vector<double> MetricSequence::diag_at(std::size_t n) const {
    switch (form) {
        case Form::scaled_identity_geometric:
            return std::vector<double>(d, 1.0 + coeff * std::pow(ratio, static_cast<double>(n)));
        case Form::diag_list: {
            if (diags.empty()) return std::vector<double>(d, 1.0);
            return diags[std::min(n, diags.size() - 1)];
        }
    }
    return std::vector<double>(d, 1.0);
}

KernelSchedule KernelSchedule::constant(LegendreKernel f, double alpha) {
    if (!f.valid()) throw ContractViolation("schedule: base kernel required");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw ContractViolation("schedule: constant family needs alpha in (0, 1]");
    auto impl = std::make_shared<Impl>();
    impl->base = f;
    impl->alpha = alpha;
    impl->at = [f](std::size_t) { return f; };
    impl->eta = [](std::size_t) { return 0.0; };
    impl->eta_sum_bound = 0.0;
    impl->limit = f;
    impl->varying = false;
    impl->name = "constant[" + f.describe() + "]";
    return KernelSchedule(impl);
}

namespace {

void validate_chi(const ChiSequence& chi, double alpha) {
    double lo = kInf;
    switch (chi.form) {
        case ChiSequence::Form::one_plus_geometric:
            if (chi.coeff < 0.0)
                throw ContractViolation("schedule: geometric chi must stay >= 1 (coeff >= 0)");
            if (!(chi.ratio > 0.0 && chi.ratio < 1.0))
                throw ContractViolation("schedule: geometric chi needs ratio in (0, 1)");
            lo = 1.0;
            break;
        case ChiSequence::Form::list:
            if (chi.values.empty()) throw ContractViolation("schedule: empty chi list");
            for (double v : chi.values) lo = std::min(lo, v);
            break;
    }
    if (lo < 1.0) throw ContractViolation("schedule: chi_n must be >= 1");
    if (lo < alpha)
        throw ContractViolation("schedule: inf chi_n < alpha; family leaves C_alpha(f)");
}

struct EtaSpec {
    std::function<double(std::size_t)> eta;
    double bound;
};

EtaSpec eta_for_chi(const ChiSequence& chi, const std::optional<std::vector<double>>& declared) {
    if (declared) {
        std::vector<double> e = *declared;
        double s = 0.0;
        for (double v : e) {
            if (v < 0.0) throw ContractViolation("schedule: eta_n must be >= 0");
            s += v;
        }
        if (!std::isfinite(s)) throw ContractViolation("schedule: non-summable eta bound");
        return {[e](std::size_t n) { return n < e.size() ? e[n] : 0.0; }, s};
    }
    switch (chi.form) {
        case ChiSequence::Form::one_plus_geometric:
            // decreasing chi: D_{f_{n+1}} <= D_{f_n} already
            return {[](std::size_t) { return 0.0; }, 0.0};
        case ChiSequence::Form::list: {
            std::vector<double> v = chi.values;
            return {[v](std::size_t n) { return derived_eta_from_list(v, n); }, eta_list_sum(v)};
        }
    }
    return {[](std::size_t) { return 0.0; }, 0.0};
}

}  // namespace

KernelSchedule KernelSchedule::power_chi(double p, std::size_t d, ChiSequence chi, double alpha,
                                         std::optional<std::vector<double>> declared_eta) {
    validate_chi(chi, alpha);
    EtaSpec es = eta_for_chi(chi, declared_eta);
    auto impl = std::make_shared<Impl>();
    impl->base = make_power_norm(p, 1.0, d);
    impl->alpha = alpha;
    impl->at = [p, d, chi](std::size_t n) { return make_power_norm(p, chi.at(n), d); };
    impl->eta = es.eta;
    impl->eta_sum_bound = es.bound;
    double chi_limit = chi.form == ChiSequence::Form::one_plus_geometric ? 1.0 : chi.values.back();
    impl->limit = make_power_norm(p, chi_limit, d);
    impl->varying = true;
    std::ostringstream name;
    name << "power_chi(p=" << p << ", d=" << d << ")";
    impl->name = name.str();
    return KernelSchedule(impl);
}

KernelSchedule KernelSchedule::product_chi(double p, std::size_t d1, ChiSequence chi,
                                           double offset, double alpha) {
    validate_chi(chi, alpha);
    EtaSpec es = eta_for_chi(chi, std::nullopt);
    auto impl = std::make_shared<Impl>();
    impl->base = make_product_kernel(make_power_norm(p, 1.0, d1), make_boltzmann_shannon(1), 0.0);
    impl->alpha = alpha;
    impl->at = [p, d1, chi, offset](std::size_t n) {
        return make_product_kernel(make_power_norm(p, chi.at(n), d1), make_boltzmann_shannon(1),
                                   offset);
    };
    impl->eta = es.eta;
    impl->eta_sum_bound = es.bound;
    double chi_limit = chi.form == ChiSequence::Form::one_plus_geometric ? 1.0 : chi.values.back();
    impl->limit =
        make_product_kernel(make_power_norm(p, chi_limit, d1), make_boltzmann_shannon(1), offset);
    impl->varying = true;
    std::ostringstream name;
    name << "product_chi(p=" << p << ", d1=" << d1 << ")";
    impl->name = name.str();
    return KernelSchedule(impl);
}

KernelSchedule KernelSchedule::metric(MetricSequence seq, double lambda_min_bound,
                                      std::optional<std::vector<double>> declared_eta) {
    if (!(lambda_min_bound > 0.0))
        throw ContractViolation("schedule: metric family needs a positive lambda_min bound");
    double lo = kInf;
    switch (seq.form) {
        case MetricSequence::Form::scaled_identity_geometric:
            if (seq.coeff < 0.0)
                throw ContractViolation("schedule: geometric metric must stay >= identity");
            if (!(seq.ratio > 0.0 && seq.ratio < 1.0))
                throw ContractViolation("schedule: geometric metric needs ratio in (0, 1)");
            lo = 1.0;
            break;
        case MetricSequence::Form::diag_list:
            if (seq.diags.empty()) throw ContractViolation("schedule: empty metric list");
            for (const auto& dg : seq.diags) {
                if (dg.size() != seq.d)
                    throw ContractViolation("schedule: metric diagonal has wrong dimension");
                for (double v : dg) lo = std::min(lo, v);
            }
            break;
    }
    if (lo < lambda_min_bound)
        throw ContractViolation("schedule: metric sequence violates the declared lambda_min bound");

    EtaSpec es;
    if (declared_eta) {
        std::vector<double> e = *declared_eta;
        double s = 0.0;
        for (double v : e) {
            if (v < 0.0) throw ContractViolation("schedule: eta_n must be >= 0");
            s += v;
        }
        if (!std::isfinite(s)) throw ContractViolation("schedule: non-summable eta bound");
        es = {[e](std::size_t n) { return n < e.size() ? e[n] : 0.0; }, s};
    } else if (seq.form == MetricSequence::Form::scaled_identity_geometric) {
        es = {[](std::size_t) { return 0.0; }, 0.0};
    } else {
        // eta_n from the worst per-coordinate growth of successive diagonals
        std::vector<double> e;
        for (std::size_t n = 0; n + 1 < seq.diags.size(); ++n) {
            double worst = 0.0;
            for (std::size_t k = 0; k < seq.d; ++k)
                worst = std::max(worst, seq.diags[n + 1][k] / seq.diags[n][k] - 1.0);
            e.push_back(std::max(0.0, worst));
        }
        double s = 0.0;
        for (double v : e) s += v;
        es = {[e](std::size_t n) { return n < e.size() ? e[n] : 0.0; }, s};
    }

    auto impl = std::make_shared<Impl>();
    impl->base = make_quadratic_identity(seq.d, lambda_min_bound);
    impl->alpha = 1.0;
    impl->at = [seq](std::size_t n) { return make_quadratic_metric_diag(seq.diag_at(n)); };
    impl->eta = es.eta;
    impl->eta_sum_bound = es.bound;
    impl->limit = seq.form == MetricSequence::Form::scaled_identity_geometric
                      ? make_quadratic_identity(seq.d, 1.0)
                      : make_quadratic_metric_diag(seq.diags.back());
    impl->varying = true;
    impl->name = "metric(d=" + std::to_string(seq.d) + ")";
    return KernelSchedule(impl);
}

namespace {

Vector sample_interior(const LegendreKernel& f, const SampleBox& box, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> c(box.lo.size());
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = rng.uniform(box.lo[k], box.hi[k]);
        Vector x(std::move(c));
        if (f.in_int_dom(x)) return x;
    }
    throw SamplingError("check_schedule: could not sample int dom f");
}

}  // namespace

CheckReport check_schedule(const KernelSchedule& s, std::size_t n_max, std::size_t samples,
                           std::uint64_t seed) {
    if (samples < 1) throw ContractViolation("check_schedule: samples must be >= 1");
    CheckReport rep;
    rep.name = "schedule";
    rep.tol = 1e-10;
    rep.samples = samples;

    Rng rng(seed);
    const LegendreKernel& base = s.base();
    SampleBox box = base.sample_box();
    std::vector<std::pair<Vector, Vector>> pairs;
    pairs.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i)
        pairs.emplace_back(sample_interior(base, box, rng), sample_interior(base, box, rng));

    double worst = kInf;
    std::size_t n_cap = s.varying() ? n_max : std::min<std::size_t>(n_max, 1);
    for (std::size_t n = 0; n < n_cap; ++n) {
        LegendreKernel fn = s.kernel_at(n);
        LegendreKernel fn1 = s.kernel_at(n + 1);
        double eta = s.eta_at(n);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [x, y] = pairs[i];
            double dn = bregman(fn, x, y);
            double dn1 = bregman(fn1, x, y);
            double db = bregman(base, x, y);
            double slack_b = (1.0 + eta) * dn - dn1;
            double slack_a = dn - s.alpha() * db;
            double m = std::min(slack_b, slack_a);
            if (m < worst) {
                worst = m;
                if (m < -rep.tol) {
                    rep.witness = Witness{{x, y}, i,
                                          slack_b <= slack_a ? "D_{f_{n+1}} <= (1+eta_n) D_{f_n}"
                                                             : "D_{f_n} >= alpha D_f"};
                    rep.detail = "violated at n=" + std::to_string(n);
                }
            }
        }
    }
    rep.worst_slack = std::isfinite(worst) ? worst : 0.0;
    rep.pass = rep.worst_slack >= -rep.tol;
    if (rep.pass) rep.detail = "both schedule inequalities hold on all samples";
    return rep;
}

}  // namespace bfb
