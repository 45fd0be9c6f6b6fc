#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bfb/vectors.hpp"

namespace bfb {

enum class RunStatus { converged_step_tol, converged_residual, max_iter, error };

const char* run_status_name(RunStatus s);

struct ValidationItem {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct ValidationReport {
    bool pass = true;
    std::vector<ValidationItem> items;
    std::vector<std::string> notes;
};

// Scalar record of iteration n. Quantities that involve x_{n+1} (the step
// distances, v_term, theta_qty) are produced while stepping away from x_n and
// live on row n; the terminal row therefore leaves them NaN. Everything is
// NaN when not computable (no known solution, no objective, ...).
struct TraceRow {
    static constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    double gamma = nan;
    double eta = nan;
    double d_step_fwd = nan;   // D_{f_n}(x_{n+1}, x_n)
    double d_step_bwd = nan;   // D_{f_n}(x_n, x_{n+1})
    double d_to_z = nan;       // D_{f_n}(z, x_n)
    double delta = nan;        // D_{f_n}(z, x_n) + delta1 gamma_n <x_n - z, x_n* + Bz>
    double theta_qty = nan;
    double obj = nan;          // phi(x_n) + psi(x_n)
    double gap = nan;          // obj - known_min
    double residual = nan;     // ||x_n* + B x_n||, defined for n >= 1
    double v_term = nan;       // <x_{n+1} - z, x_{n+1}* + Bz>
    double b_pair = nan;       // <x_n - z, B x_n - B z>
};

struct IterationTrace {
    std::vector<TraceRow> rows;
    // iterates and graph selections, dense up to a cap then every 10th entry
    std::vector<std::optional<Vector>> iterates;
    std::vector<std::optional<DualVector>> x_stars;

    RunStatus status = RunStatus::max_iter;
    std::string error_message;

    // constants diagnostics need; frozen at run time
    double kappa = 0.0;
    double alpha = 1.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double eps_trace = 1.0;  // largest eps with delta1 gamma_{n+1} <= (1-eps) gamma_n
    double eta_sum_bound = 0.0;

    bool minimization = false;
    bool has_solution = false;
    std::optional<double> known_min;
    bool certified = true;  // validation passed; false for forced runs
    bool objective_monotone_observed = true;
    std::size_t dim = 0;
    std::uint64_t fingerprint = 0;

    ValidationReport validation;

    std::size_t iterations() const { return rows.empty() ? 0 : rows.size() - 1; }
    const Vector& final_iterate() const;
    double final_residual() const;
};

// CSV with '.' decimal separator and 17 significant digits, one row per
// iteration; iterate coordinates are appended as x0..x{d-1} where recorded.
void write_trace_csv(const IterationTrace& t, std::ostream& os);
IterationTrace read_trace_csv(std::istream& is);

}  // namespace bfb
