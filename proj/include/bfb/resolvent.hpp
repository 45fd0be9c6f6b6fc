#pragma once

#include <cstddef>
#include <optional>

#include "bfb/kernels.hpp"
#include "bfb/operators.hpp"

namespace bfb {

// Backward step: solve grad f(x) + gamma a = u with a in A(x), i.e. evaluate
// (grad f + gamma A)^{-1}(u).
struct ResolventQuery {
    LegendreKernel kernel;
    double gamma = 1.0;
    SetValuedMap map;
    DualVector target;
};

enum class ResolventPath {
    automatic,        // closed form when registered, scalar solve otherwise
    closed_form,      // registered closed forms only
    scalar_iterative  // force the bisection-Newton path (separable pairs only)
};

struct ResolventOptions {
    double tol = 1e-12;          // bound on the inclusion residual
    std::size_t max_inner = 200;
    ResolventPath path = ResolventPath::automatic;
    std::optional<double> scalar_init;  // initial point override for the inner solver
};

struct ResolventResult {
    Vector x;
    DualVector a_star;     // (target - grad f(x)) / gamma; the graph selection
    double residual = 0.0; // dist(target - grad f(x), gamma * A(x))
    std::size_t iterations = 0;
    bool used_closed_form = false;
};

// Dispatch: registered closed forms, then the per-coordinate safeguarded
// bisection-Newton path for separable pairs, then structured linear-algebra
// paths for quadratic metrics. Throws UnsupportedPair when no path applies or
// the target is outside the operator's range, ConvergenceFailure when the
// inner solver stalls, DomainViolation when a solution leaves int dom f.
ResolventResult resolvent_solve(const ResolventQuery& q, const ResolventOptions& opts = {});

// ||grad f(x) + gamma a - target|| for a caller-chosen pair (x, a).
double resolvent_residual(const ResolventQuery& q, const Vector& x, const DualVector& a_star);

}  // namespace bfb
