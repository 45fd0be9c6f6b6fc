#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bfb/trace.hpp"

namespace bfb {

// Deterministic verdicts over a finished trace. Summability and o(1/n) are
// asymptotic statements; the finite-horizon surrogates are fixed here:
// the last 20% of iterations may contribute at most 1% of a convergent sum,
// and n*gap_n must decay to a quarter of its value between N/10 and N.

struct Verdict {
    std::string check;
    bool pass = true;
    bool applicable = true;
    std::vector<std::pair<std::string, double>> metrics;
    std::string detail;
};

struct DiagnosticsReport {
    std::vector<Verdict> verdicts;
    bool all_pass() const;  // over applicable verdicts
    const Verdict* find(const std::string& check) const;
};

// Delta_{n+1} <= (1+eta_n) Delta_n - theta_n (with slack 1e-9 (1+|Delta_n|))
// and theta_n >= -1e-10; needs a known solution on the trace.
Verdict check_quasi_fejer(const IterationTrace& t);

// Partial sums of the three summable series (step distances weighted by
// 1 - kappa gamma / alpha; the graph pairing terms; the (1-delta2) pairing
// terms). The last is marked vacuous when delta2 = 1.
Verdict check_summability(const IterationTrace& t);

// Monotone gap decay, quarter-decay of n*gap_n between N/10 and N, and the
// tail rule on the gap partial sums; needs gaps on the trace.
Verdict check_rate_o1n(const IterationTrace& t);

// S_N = sum n (d_step_fwd + d_step_bwd) under the tail rule.
Verdict check_weighted_step_sum(const IterationTrace& t);

// obj_{n+1} <= obj_n + 1e-10 (1 + |obj_n|).
Verdict check_monotone_objective(const IterationTrace& t);

// Inclusion residual ||x_{n+1}* + B x_{n+1}|| at the final iterate.
Verdict check_focusing_residual(const IterationTrace& t, double tol);

DiagnosticsReport run_all_diagnostics(const IterationTrace& t, double residual_tol = 1e-6);

}  // namespace bfb
