#include "bfb/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace bfb {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// compensated (Kahan) summation so reloaded traces reproduce sums bit-for-bit
class Accum {
public:
    void add(double v) {
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// tail rule: the last 20% of the terms must contribute less than 1% of the
// total (with a small absolute floor for sums that are numerically zero)
struct TailVerdict {
    bool pass;
    double total;
    double tail;
};

TailVerdict tail_rule(const std::vector<double>& terms) {
    Accum total;
    for (double v : terms) total.add(v);
    std::size_t start = static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(terms.size())));
    Accum tail;
    for (std::size_t i = start; i < terms.size(); ++i) tail.add(terms[i]);
    double tot = total.value();
    double tl = tail.value();
    bool pass = tl <= 0.01 * std::fabs(tot) + 1e-12;
    return {pass, tot, tl};
}

Verdict not_applicable(const char* name, const char* why) {
    Verdict v;
    v.check = name;
    v.applicable = false;
    v.pass = true;
    v.detail = why;
    return v;
}

}  // namespace

bool DiagnosticsReport::all_pass() const {
    for (const auto& v : verdicts)
        if (v.applicable && !v.pass) return false;
    return true;
}

const Verdict* DiagnosticsReport::find(const std::string& check) const {
    for (const auto& v : verdicts)
        if (v.check == check) return &v;
    return nullptr;
}

Verdict check_quasi_fejer(const IterationTrace& t) {
    if (!t.has_solution) return not_applicable("quasi_fejer", "no known solution on the trace");
    Verdict v;
    v.check = "quasi_fejer";
    double max_violation = -std::numeric_limits<double>::infinity();
    double min_theta = std::numeric_limits<double>::infinity();
    std::size_t checked = 0;
    for (std::size_t n = 0; n + 1 < t.rows.size(); ++n) {
        const TraceRow& r = t.rows[n];
        const TraceRow& r1 = t.rows[n + 1];
        if (!std::isfinite(r.delta) || !std::isfinite(r1.delta) || !std::isfinite(r.theta_qty))
            continue;
        ++checked;
        double slack = 1e-9 * (1.0 + std::fabs(r.delta));
        double violation = r1.delta - ((1.0 + r.eta) * r.delta - r.theta_qty) - slack;
        max_violation = std::max(max_violation, violation);
        min_theta = std::min(min_theta, r.theta_qty);
    }
    if (checked == 0) return not_applicable("quasi_fejer", "no rows carry Delta_n and theta_n");
    v.pass = max_violation <= 0.0 && min_theta >= -1e-10;
    v.metrics.emplace_back("max_violation", max_violation);
    v.metrics.emplace_back("min_theta", min_theta);
    v.metrics.emplace_back("rows_checked", static_cast<double>(checked));
    v.detail = "Delta_{n+1} <= (1+eta_n) Delta_n - theta_n";
    return v;
}

Verdict check_summability(const IterationTrace& t) {
    Verdict v;
    v.check = "summability";
    std::vector<double> iii, vterms, viterms;
    for (std::size_t n = 0; n + 1 < t.rows.size(); ++n) {
        const TraceRow& r = t.rows[n];
        if (std::isfinite(r.d_step_fwd) && std::isfinite(r.gamma))
            iii.push_back((1.0 - t.kappa * r.gamma / t.alpha) * r.d_step_fwd);
        if (std::isfinite(r.v_term)) vterms.push_back(r.v_term);
        if (std::isfinite(r.b_pair)) viterms.push_back((1.0 - t.delta2) * r.b_pair);
    }
    if (iii.empty()) return not_applicable("summability", "trace too short");
    TailVerdict a = tail_rule(iii);
    v.pass = a.pass;
    v.metrics.emplace_back("step_sum_total", a.total);
    v.metrics.emplace_back("step_sum_tail", a.tail);
    if (t.has_solution && !vterms.empty()) {
        TailVerdict b = tail_rule(vterms);
        v.pass = v.pass && b.pass;
        v.metrics.emplace_back("graph_pairing_total", b.total);
        v.metrics.emplace_back("graph_pairing_tail", b.tail);
    }
    if (t.delta2 >= 1.0) {
        v.detail = "(1-delta2) series vacuous at delta2 = 1";
    } else if (t.has_solution && !viterms.empty()) {
        TailVerdict c = tail_rule(viterms);
        v.pass = v.pass && c.pass;
        v.metrics.emplace_back("b_pairing_total", c.total);
        v.metrics.emplace_back("b_pairing_tail", c.tail);
    }
    return v;
}

Verdict check_rate_o1n(const IterationTrace& t) {
    std::vector<double> gaps;
    for (const TraceRow& r : t.rows)
        if (std::isfinite(r.gap)) gaps.push_back(r.gap);
    if (gaps.size() < 2) return not_applicable("rate_o1n", "no gap values (known_min missing?)");

    Verdict v;
    v.check = "rate_o1n";
    bool monotone = true;
    for (std::size_t n = 0; n + 1 < gaps.size(); ++n)
        if (gaps[n + 1] > gaps[n] + 1e-10 * (1.0 + std::fabs(gaps[n]))) monotone = false;

    std::size_t n_final = gaps.size() - 1;
    std::size_t n_early = static_cast<std::size_t>(std::ceil(static_cast<double>(gaps.size()) / 10.0));
    n_early = std::min(n_early, n_final);
    double early = static_cast<double>(n_early) * std::max(0.0, gaps[n_early]);
    double late = static_cast<double>(n_final) * std::max(0.0, gaps[n_final]);
    bool quarter = late <= 0.25 * early + 1e-15;

    std::vector<double> pos;
    pos.reserve(gaps.size());
    for (double g : gaps) pos.push_back(std::max(0.0, g));
    TailVerdict sums = tail_rule(pos);

    v.pass = monotone && quarter && sums.pass;
    v.metrics.emplace_back("monotone", monotone ? 1.0 : 0.0);
    v.metrics.emplace_back("n_gap_early", early);
    v.metrics.emplace_back("n_gap_final", late);
    v.metrics.emplace_back("gap_sum_total", sums.total);
    v.metrics.emplace_back("gap_sum_tail", sums.tail);
    v.detail = "n*gap quarter-decay between N/10 and N plus summable gaps";
    return v;
}

Verdict check_weighted_step_sum(const IterationTrace& t) {
    std::vector<double> terms;
    for (std::size_t n = 0; n + 1 < t.rows.size(); ++n) {
        const TraceRow& r = t.rows[n];
        if (std::isfinite(r.d_step_fwd) && std::isfinite(r.d_step_bwd))
            terms.push_back(static_cast<double>(n) * (r.d_step_fwd + r.d_step_bwd));
    }
    if (terms.empty()) return not_applicable("weighted_step_sum", "trace too short");
    Verdict v;
    v.check = "weighted_step_sum";
    TailVerdict a = tail_rule(terms);
    v.pass = a.pass;
    v.metrics.emplace_back("total", a.total);
    v.metrics.emplace_back("tail", a.tail);
    v.detail = "sum n (D_{f_n}(x_{n+1},x_n) + D_{f_n}(x_n,x_{n+1}))";
    return v;
}

Verdict check_monotone_objective(const IterationTrace& t) {
    std::vector<double> objs;
    for (const TraceRow& r : t.rows)
        if (std::isfinite(r.obj)) objs.push_back(r.obj);
    if (objs.empty()) return not_applicable("monotone_objective", "no objective values");
    Verdict v;
    v.check = "monotone_objective";
    double worst = 0.0;
    for (std::size_t n = 0; n + 1 < objs.size(); ++n)
        worst = std::max(worst, objs[n + 1] - objs[n] - 1e-10 * (1.0 + std::fabs(objs[n])));
    v.pass = worst <= 0.0;
    v.metrics.emplace_back("worst_increase", worst);
    v.detail = "theta(x_{n+1}) <= theta(x_n)";
    return v;
}

Verdict check_focusing_residual(const IterationTrace& t, double tol) {
    double last = kNan;
    std::size_t count = 0;
    for (const TraceRow& r : t.rows)
        if (std::isfinite(r.residual)) {
            last = r.residual;
            ++count;
        }
    if (count == 0) return not_applicable("focusing_residual", "B not evaluable along the orbit");
    Verdict v;
    v.check = "focusing_residual";
    v.pass = last <= tol;
    v.metrics.emplace_back("final_residual", last);
    v.metrics.emplace_back("tol", tol);
    v.detail = "||x_{n+1}* + B x_{n+1}|| at the final iterate";
    return v;
}

DiagnosticsReport run_all_diagnostics(const IterationTrace& t, double residual_tol) {
    DiagnosticsReport rep;
    rep.verdicts.push_back(check_quasi_fejer(t));
    rep.verdicts.push_back(check_summability(t));
    rep.verdicts.push_back(check_rate_o1n(t));
    rep.verdicts.push_back(check_weighted_step_sum(t));
    rep.verdicts.push_back(check_monotone_objective(t));
    rep.verdicts.push_back(check_focusing_residual(t, residual_tol));
    return rep;
}

}  // namespace bfb
