#pragma once

#include <functional>
#include <optional>
#include <string>

#include "bfb/certificates.hpp"
#include "bfb/kernels.hpp"
#include "bfb/operators.hpp"
#include "bfb/schedule.hpp"
#include "bfb/trace.hpp"

namespace bfb {

// Step sizes gamma_n with closed-form inf/sup so the validator can check the
// step conditions exactly rather than over a sampled horizon.
struct StepSchedule {
    enum class Kind { constant, list, decreasing_to };
    Kind kind = Kind::constant;
    double gamma_const = 1.0;
    std::vector<double> values;       // list form; continued by its last value
    double gamma_inf = 1.0;           // decreasing_to form:
    double gamma0 = 1.0;              //   gamma_n = gamma_inf + (gamma0 - gamma_inf)/(n+1)
    double eps_min = 0.5;             // the eps of the minimization step bound

    double gamma_at(std::size_t n) const;
    double inf_gamma() const;
    double sup_gamma() const;
    double sup_ratio() const;  // sup_n gamma_{n+1} / gamma_n

    static StepSchedule constant(double gamma, double eps = 0.5);
    static StepSchedule list(std::vector<double> values, double eps = 0.5);
    static StepSchedule decreasing_to(double gamma_inf, double gamma0, double eps = 0.5);
};

struct MinimizationStructure {
    std::function<double(const Vector&)> phi;  // may return +inf
    std::function<double(const Vector&)> psi;
    std::optional<double> known_min;
};

enum class Engine { inclusion, minimization };

struct ProblemSpec {
    SetValuedMap A;
    MonotoneMap B;
    KernelSchedule schedule;
    StepSchedule steps;
    ConditionCertificate cert;
    Vector x0;
    std::optional<Vector> known_solution;
    std::optional<MinimizationStructure> minimization;
    Engine engine = Engine::inclusion;
    // presets derived from strict step conditions (sup kappa gamma < alpha)
    bool strict_step_bound = false;
    std::string name;
};

struct StopRule {
    std::size_t max_iter = 100000;
    double tol_step = 1e-14;  // on D_{f_n}(x_{n+1},x_n) + D_{f_n}(x_n,x_{n+1})
    std::optional<double> tol_residual;
    // engineering knobs
    double resolvent_tol = 1e-12;
    std::size_t resolvent_max_inner = 200;
    std::size_t dense_cap = 10000;  // record iterates densely up to here, then every 10th
};

// Checks the step-size conditions against the certificate and the schedule's
// class constant, the viability of x0, and records which boundedness and
// cluster-point routes apply. Never throws; violations are items that fail.
ValidationReport validate(const ProblemSpec& spec);

struct StepResult {
    Vector x_next;
    DualVector x_next_star;  // gamma^{-1}(grad f_n(x_n) - grad f_n(x_{n+1})) - B x_n
};

// One forward-backward update from x_n at iteration n.
StepResult fb_step(const ProblemSpec& spec, std::size_t n, const Vector& x_n,
                   const StopRule& stop = {});

// Iterates fb_step until the stop rule fires. Requires a passing validation
// unless force is set (the trace is then marked non-certified). Step errors
// abort with the partial trace attached and status = error.
IterationTrace run(const ProblemSpec& spec, const StopRule& stop, bool force = false);

// Same engine; requires the minimization structure, validates the
// minimization step bound, and records objective values and gaps.
IterationTrace run_minimization(const ProblemSpec& spec, const StopRule& stop, bool force = false);

}  // namespace bfb
