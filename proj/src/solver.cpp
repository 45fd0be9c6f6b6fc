#include "bfb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bfb/resolvent.hpp"

namespace bfb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// StepSchedule

double StepSchedule::gamma_at(std::size_t n) const {
    switch (kind) {
        case Kind::constant:
            return gamma_const;
        case Kind::list:
            return values[std::min(n, values.size() - 1)];
        case Kind::decreasing_to:
            return gamma_inf + (gamma0 - gamma_inf) / static_cast<double>(n + 1);
    }
    return gamma_const;
}

double StepSchedule::inf_gamma() const {
    switch (kind) {
        case Kind::constant:
            return gamma_const;
        case Kind::list:
            return *std::min_element(values.begin(), values.end());
        case Kind::decreasing_to:
            return gamma_inf;
    }
    return gamma_const;
}

double StepSchedule::sup_gamma() const {
    switch (kind) {
        case Kind::constant:
            return gamma_const;
        case Kind::list:
            return *std::max_element(values.begin(), values.end());
        case Kind::decreasing_to:
            return gamma0;
    }
    return gamma_const;
}

double StepSchedule::sup_ratio() const {
    switch (kind) {
        case Kind::constant:
            return 1.0;
        case Kind::list: {
            double worst = 1.0;  // the constant tail has ratio 1
            for (std::size_t n = 0; n + 1 < values.size(); ++n)
                worst = std::max(worst, values[n + 1] / values[n]);
            return worst;
        }
        case Kind::decreasing_to:
            return 1.0;  // decreasing sequence; ratios approach 1 from below
    }
    return 1.0;
}

StepSchedule StepSchedule::constant(double gamma, double eps) {
    if (!(gamma > 0.0)) throw ContractViolation("steps: gamma must be > 0");
    if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("steps: eps must lie in (0, 1)");
    StepSchedule s;
    s.kind = Kind::constant;
    s.gamma_const = gamma;
    s.eps_min = eps;
    return s;
}

StepSchedule StepSchedule::list(std::vector<double> values, double eps) {
    if (values.empty()) throw ContractViolation("steps: empty gamma list");
    for (double g : values)
        if (!(g > 0.0)) throw ContractViolation("steps: gamma must be > 0");
    if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("steps: eps must lie in (0, 1)");
    StepSchedule s;
    s.kind = Kind::list;
    s.values = std::move(values);
    s.eps_min = eps;
    return s;
}

StepSchedule StepSchedule::decreasing_to(double gamma_inf, double gamma0, double eps) {
    if (!(gamma_inf > 0.0) || !(gamma0 >= gamma_inf))
        throw ContractViolation("steps: need 0 < gamma_inf <= gamma0");
    if (!(eps > 0.0 && eps < 1.0)) throw ContractViolation("steps: eps must lie in (0, 1)");
    StepSchedule s;
    s.kind = Kind::decreasing_to;
    s.gamma_inf = gamma_inf;
    s.gamma0 = gamma0;
    s.eps_min = eps;
    return s;
}

// ---------------------------------------------------------------------------
// Validation

namespace {
// fp slack so certificate formulas evaluated in double do not flip an exact
// equality like sup(kappa gamma) = alpha
constexpr double kRelSlack = 1e-9;
}  // namespace

ValidationReport validate(const ProblemSpec& spec) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, std::string detail) {
        rep.items.push_back({std::move(name), pass, std::move(detail)});
        rep.pass = rep.pass && rep.items.back().pass;
    };
    auto fmt = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };

    const double alpha = spec.schedule.alpha();
    const double kappa = spec.cert.kappa;
    const double ginf = spec.steps.inf_gamma();
    const double gsup = spec.steps.sup_gamma();

    {
        bool ok = spec.A.dim() == spec.x0.dim() && spec.B.dim() == spec.x0.dim() &&
                  spec.schedule.base().dim() == spec.x0.dim();
        add("dimensions consistent", ok, "d = " + std::to_string(spec.x0.dim()));
    }
    add("inf gamma_n > 0", ginf > 0.0, "inf gamma = " + fmt(ginf));
    {
        bool ok = spec.strict_step_bound ? kappa * gsup < alpha
                                         : kappa * gsup <= alpha * (1.0 + kRelSlack);
        add(spec.strict_step_bound ? "sup kappa gamma_n < alpha" : "sup kappa gamma_n <= alpha", ok,
            "kappa*sup gamma = " + fmt(kappa * gsup) + ", alpha = " + fmt(alpha));
    }
    {
        double ratio = spec.cert.delta1 * spec.steps.sup_ratio();
        add("sup delta1 gamma_{n+1}/gamma_n < 1", ratio < 1.0, "sup = " + fmt(ratio));
    }
    if (spec.engine == Engine::minimization) {
        double bound = kappa > 0.0 ? alpha * (1.0 - spec.steps.eps_min) / kappa : kInf;
        add("sup gamma_n <= alpha(1-eps)/kappa", gsup <= bound * (1.0 + kRelSlack),
            "sup gamma = " + fmt(gsup) + ", bound = " + fmt(bound) +
                " (eps = " + fmt(spec.steps.eps_min) + ")");
        add("minimization structure present", spec.minimization.has_value(), "");
    }
    {
        bool ok = spec.schedule.base().in_int_dom(spec.x0);
        add("x0 in int dom f", ok, "");
    }
    add("x0 in dom A", spec.A.in_dom(spec.x0, 1e-9), "");
    add("B evaluable at x0", spec.B.in_dom_interior(spec.x0), "");
    add("summable eta bound", std::isfinite(spec.schedule.eta_sum_bound()),
        "sum eta <= " + fmt(spec.schedule.eta_sum_bound()));

    // boundedness route of the orbit, from the base kernel's capabilities
    const KernelCapabilities& caps = spec.schedule.base().capabilities();
    if (caps.supercoercive)
        rep.notes.push_back("bounded orbit: f is supercoercive");
    else if (caps.uniformly_convex)
        rep.notes.push_back("bounded orbit: f is uniformly convex");
    else if (caps.cofinite)
        rep.notes.push_back("bounded orbit: finite dimension with dom f* open");
    else if (caps.symmetry_ratio)
        rep.notes.push_back("bounded orbit: symmetry ratio rho = " + fmt(*caps.symmetry_ratio));
    else
        rep.notes.push_back("warning: no boundedness route declared for the base kernel");
    rep.notes.push_back("cluster points stay in int dom f: finite-dimensional space");
    rep.notes.push_back(spec.schedule.limit_kernel()
                            ? "limit kernel declared by the schedule"
                            : "limit kernel not declared; gradient-limit hypothesis unverified");
    if (spec.schedule.base().capabilities().grad_stable_on_bounded)
        rep.notes.push_back("kernel gradient is stable under vanishing Bregman steps (declared)");
    return rep;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

struct StepOutcome {
    Vector x_next;
    DualVector x_next_star;
    double d_fwd = 0.0;
    double d_bwd = 0.0;
    DualVector b_xn;
};

StepOutcome do_step(const ProblemSpec& spec, const LegendreKernel& fn, double gamma,
                    const Vector& x, const StopRule& stop) {
    if (!spec.B.in_dom_interior(x))
        throw DomainViolation("fb_step: B is not evaluable at the current iterate");
    DualVector bx = spec.B.eval(x);
    DualVector grad = fn.grad(x);
    std::vector<double> u(x.dim());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = grad[k] - gamma * bx[k];
    ResolventQuery q{fn, gamma, spec.A, DualVector(std::move(u))};
    ResolventOptions opts;
    opts.tol = stop.resolvent_tol;
    opts.max_inner = stop.resolvent_max_inner;
    ResolventResult r = resolvent_solve(q, opts);
    StepOutcome out{r.x, r.a_star, bregman(fn, r.x, x), bregman(fn, x, r.x), bx};
    if (!spec.A.in_dom(out.x_next, 1e-6))
        throw DomainViolation("fb_step: iterate left dom A");
    return out;
}

}  // namespace

StepResult fb_step(const ProblemSpec& spec, std::size_t n, const Vector& x_n,
                   const StopRule& stop) {
    LegendreKernel fn = spec.schedule.kernel_at(n);
    StepOutcome out = do_step(spec, fn, spec.steps.gamma_at(n), x_n, stop);
    return {out.x_next, out.x_next_star};
}

namespace {

IterationTrace run_impl(const ProblemSpec& spec, const StopRule& stop, bool force) {
    ValidationReport vr = validate(spec);
    if (!vr.pass && !force) {
        std::string what = "run: validation failed:";
        for (const auto& item : vr.items)
            if (!item.pass) what += " [" + item.name + "]";
        throw ContractViolation(what);
    }

    IterationTrace t;
    t.validation = vr;
    t.certified = vr.pass;
    t.kappa = spec.cert.kappa;
    t.alpha = spec.schedule.alpha();
    t.delta1 = spec.cert.delta1;
    t.delta2 = spec.cert.delta2;
    t.eta_sum_bound = spec.schedule.eta_sum_bound();
    t.eps_trace = std::clamp(1.0 - spec.cert.delta1 * spec.steps.sup_ratio(), 0.0, 1.0);
    t.minimization = spec.minimization.has_value();
    t.has_solution = spec.known_solution.has_value();
    if (spec.minimization) t.known_min = spec.minimization->known_min;
    t.dim = spec.x0.dim();

    const std::optional<Vector>& z = spec.known_solution;
    std::optional<DualVector> bz;
    if (z && spec.B.in_dom_interior(*z)) bz = spec.B.eval(*z);

    Vector x = spec.x0;
    std::optional<DualVector> xstar;  // x_n* in A(x_n); canonical from n >= 1

    auto record_iterate = [&](std::size_t n, const Vector& v, const std::optional<DualVector>& s) {
        bool keep = n <= stop.dense_cap || n % 10 == 0;
        t.iterates.push_back(keep ? std::optional<Vector>(v) : std::nullopt);
        t.x_stars.push_back(keep && s ? std::optional<DualVector>(*s) : std::nullopt);
    };

    if (z && spec.cert.delta1 > 0.0 && !xstar) {
        try {
            xstar = spec.A.selection(x);
        } catch (const std::exception&) {
            // leave delta_0 undefined; diagnostics skip NaN rows
        }
    }

    double prev_obj = kInf;
    t.status = RunStatus::max_iter;
    for (std::size_t n = 0;; ++n) {
        LegendreKernel fn = spec.schedule.kernel_at(n);
        double gamma = spec.steps.gamma_at(n);
        TraceRow row;
        row.gamma = gamma;
        row.eta = spec.schedule.eta_at(n);
        try {
            bool b_ok = spec.B.in_dom_interior(x);
            DualVector bx = b_ok ? spec.B.eval(x) : DualVector(x.dim(), 0.0);
            if (z) {
                row.d_to_z = bregman(fn, *z, x);
                if (bz && b_ok) row.b_pair = pair(sub(bx, *bz), sub(x, *z));
                if (spec.cert.delta1 == 0.0) {
                    row.delta = row.d_to_z;
                } else if (xstar && bz) {
                    row.delta = row.d_to_z +
                                spec.cert.delta1 * gamma * pair(add(*xstar, *bz), sub(x, *z));
                }
            }
            if (spec.minimization) {
                double obj = spec.minimization->phi(x) + spec.minimization->psi(x);
                row.obj = obj;
                if (t.known_min) row.gap = obj - *t.known_min;
                if (obj > prev_obj + 1e-10 * (1.0 + std::fabs(prev_obj)))
                    t.objective_monotone_observed = false;
                prev_obj = obj;
            }
            if (n >= 1 && xstar && b_ok) row.residual = norm2(add(*xstar, bx));

            if (n >= stop.max_iter) {
                t.rows.push_back(row);
                record_iterate(n, x, xstar);
                t.status = RunStatus::max_iter;
                break;
            }

            StepOutcome out = do_step(spec, fn, gamma, x, stop);
            row.d_step_fwd = out.d_fwd;
            row.d_step_bwd = out.d_bwd;
            if (z && bz) {
                row.v_term = pair(add(out.x_next_star, *bz), sub(out.x_next, *z));
                double theta = (1.0 - spec.cert.kappa * gamma / t.alpha) * out.d_fwd +
                               t.eps_trace * gamma * row.v_term;
                if (spec.cert.delta2 < 1.0 && std::isfinite(row.b_pair))
                    theta += (1.0 - spec.cert.delta2) * gamma * row.b_pair;
                row.theta_qty = theta;
            }
            t.rows.push_back(row);
            record_iterate(n, x, xstar);

            x = out.x_next;
            xstar = out.x_next_star;

            // A step below tol_step means x_{n+1} is within tolerance of x_n;
            // row n already describes that step, so no terminal row is added.
            if (out.d_fwd + out.d_bwd <= stop.tol_step) {
                t.status = RunStatus::converged_step_tol;
                break;
            }
            bool stop_res = false;
            if (stop.tol_residual && spec.B.in_dom_interior(x))
                stop_res = norm2(add(*xstar, spec.B.eval(x))) <= *stop.tol_residual;
            if (stop_res) {
                // terminal row for the iterate whose residual fired the rule
                LegendreKernel fn1 = spec.schedule.kernel_at(n + 1);
                TraceRow last;
                last.gamma = spec.steps.gamma_at(n + 1);
                last.eta = spec.schedule.eta_at(n + 1);
                if (z) {
                    last.d_to_z = bregman(fn1, *z, x);
                    if (bz && spec.B.in_dom_interior(x))
                        last.b_pair = pair(sub(spec.B.eval(x), *bz), sub(x, *z));
                    last.delta = spec.cert.delta1 == 0.0
                                     ? last.d_to_z
                                     : last.d_to_z + spec.cert.delta1 * last.gamma *
                                                         pair(add(*xstar, *bz), sub(x, *z));
                }
                if (spec.minimization) {
                    last.obj = spec.minimization->phi(x) + spec.minimization->psi(x);
                    if (t.known_min) last.gap = last.obj - *t.known_min;
                    if (last.obj > prev_obj + 1e-10 * (1.0 + std::fabs(prev_obj)))
                        t.objective_monotone_observed = false;
                }
                if (spec.B.in_dom_interior(x)) last.residual = norm2(add(*xstar, spec.B.eval(x)));
                t.rows.push_back(last);
                record_iterate(n + 1, x, xstar);
                t.status = RunStatus::converged_residual;
                break;
            }
        } catch (const std::exception& e) {
            t.rows.push_back(row);
            record_iterate(n, x, xstar);
            t.status = RunStatus::error;
            t.error_message = e.what();
            break;
        }
    }
    return t;
}

}  // namespace

IterationTrace run(const ProblemSpec& spec, const StopRule& stop, bool force) {
    return run_impl(spec, stop, force);
}

IterationTrace run_minimization(const ProblemSpec& spec, const StopRule& stop, bool force) {
    if (!spec.minimization)
        throw ContractViolation("run_minimization: spec carries no minimization structure");
    ProblemSpec s = spec;
    s.engine = Engine::minimization;
    return run_impl(s, stop, force);
}

}  // namespace bfb
