#include "bfb/resolvent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace bfb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Scalar closed forms, keyed on (section kind, graph kind).

std::optional<double> closed_form_scalar(const ScalarSection& g, const ScalarGraph& a,
                                         double gamma, double u) {
    using SK = ScalarSection::Kind;
    using GK = ScalarGraph::Kind;
    switch (g.kind) {
        case SK::quadratic:
            switch (a.kind) {
                case GK::zero:
                    return u / g.a;
                case GK::constant:
                    return (u - gamma * a.a) / g.a;
                case GK::linear:
                    return (u - gamma * a.b) / (g.a + gamma * a.a);
                case GK::abs_subdiff: {
                    double thr = gamma * a.a;
                    double mag = std::fabs(u) - thr;
                    return mag > 0.0 ? (u > 0.0 ? mag : -mag) / g.a : 0.0;
                }
                case GK::interval_cone:
                    return std::clamp(u / g.a, a.a, a.b);
                default:
                    return std::nullopt;
            }
        case SK::entropy:
            switch (a.kind) {
                case GK::zero:
                    return std::exp(u);
                case GK::constant:
                    return std::exp(u - gamma * a.a);
                case GK::abs_subdiff:
                    // the graph restricted to int dom f = (0, inf) is {+lambda}
                    return std::exp(u - gamma * a.a);
                default:
                    return std::nullopt;
            }
        case SK::power:
            switch (a.kind) {
                case GK::zero:
                    return g.grad_conj(u);
                default:
                    return std::nullopt;
            }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scalar safeguarded bisection-Newton on g'(xi) + gamma * a(xi) = u.

struct ScalarSolve {
    double xi = 0.0;
    std::size_t iterations = 0;
};

// signed distance from u to the interval gamma*[a.lower, a.upper] shifted by g'
double signed_violation(const ScalarSection& g, const ScalarGraph& a, double gamma, double u,
                        double xi) {
    double r = u - g.grad(xi);
    double lo = gamma * a.lower(xi);
    double hi = gamma * a.upper(xi);
    if (r > hi) return r - hi;   // positive: solution lies to the right
    if (r < lo) return r - lo;   // negative: solution lies to the left
    return 0.0;
}

ScalarSolve solve_scalar(const ScalarSection& g, const ScalarGraph& a, double gamma, double u,
                         double tol, std::size_t max_inner, std::optional<double> init) {
    const double dlo = std::max(g.int_dom_lo(), a.dom_lo());
    const double dhi = std::min(g.int_dom_hi(), a.dom_hi());
    const bool lo_closed = a.dom_lo() > g.int_dom_lo();  // graph intervals are closed
    const bool hi_closed = a.dom_hi() < g.int_dom_hi();
    const bool positive_line = std::isfinite(dlo) && dlo >= 0.0 && !lo_closed;

    auto clamp_into = [&](double xi) {
        if (std::isfinite(dlo)) xi = lo_closed ? std::max(xi, dlo) : std::max(xi, dlo + 1e-12);
        if (std::isfinite(dhi)) xi = hi_closed ? std::min(xi, dhi) : std::min(xi, dhi - 1e-12);
        return xi;
    };

    double xi = init ? *init : g.grad_conj(u);
    if (!std::isfinite(xi)) xi = 0.5 * (std::max(dlo, -1.0) + std::min(dhi, 1.0));
    xi = clamp_into(xi);

    ScalarSolve out;
    double v = signed_violation(g, a, gamma, u, xi);
    if (std::fabs(v) <= tol) {
        out.xi = xi;
        return out;
    }

    // bisection cannot land on a kink of the graph, where the value set jumps;
    // probe them directly
    for (double bp : a.breakpoints()) {
        if (bp < dlo || bp > dhi) continue;
        if (!lo_closed && bp <= g.int_dom_lo()) continue;
        if (std::fabs(signed_violation(g, a, gamma, u, bp)) <= tol) {
            out.xi = bp;
            return out;
        }
    }

    // bracket [blo, bhi] with violation(blo) > 0 > violation(bhi)
    double blo, bhi;
    if (v > 0.0) {
        blo = xi;
        bhi = kInf;
        double probe = xi;
        double step = std::max(1.0, std::fabs(xi));
        for (int k = 0; k < 60 && !std::isfinite(bhi); ++k) {
            probe = probe + step;
            step *= 2.0;
            if (std::isfinite(dhi) && probe >= dhi) {
                probe = dhi;
                if (!hi_closed) probe = dhi - 1e-12;
            }
            double pv = signed_violation(g, a, gamma, u, probe);
            if (pv <= 0.0)
                bhi = probe;
            else
                blo = probe;
            if (probe == dhi) break;
        }
        if (!std::isfinite(bhi))
            throw UnsupportedPair("resolvent: target outside ran(grad f + gamma A) (no upper bracket)");
    } else {
        bhi = xi;
        blo = -kInf;
        double probe = xi;
        double step = std::max(1.0, std::fabs(xi));
        for (int k = 0; k < 120 && !std::isfinite(blo); ++k) {
            if (positive_line) {
                probe *= 0.25;  // contract toward the open endpoint at 0
                if (probe <= 0.0) break;
            } else {
                probe = probe - step;
                step *= 2.0;
                if (std::isfinite(dlo) && probe <= dlo) probe = lo_closed ? dlo : dlo + 1e-12;
            }
            double pv = signed_violation(g, a, gamma, u, probe);
            if (pv >= 0.0)
                blo = probe;
            else
                bhi = probe;
            if (std::isfinite(dlo) && probe <= dlo) break;
        }
        if (!std::isfinite(blo))
            throw UnsupportedPair("resolvent: target outside ran(grad f + gamma A) (no lower bracket)");
    }

    if (signed_violation(g, a, gamma, u, blo) == 0.0) {
        out.xi = blo;
        return out;
    }
    if (signed_violation(g, a, gamma, u, bhi) == 0.0) {
        out.xi = bhi;
        return out;
    }

    double best_xi = xi;
    double best_viol = std::fabs(v);
    xi = 0.5 * (blo + bhi);
    if (blo > 0.0 && bhi / blo > 1e3) xi = std::sqrt(blo * bhi);

    for (std::size_t it = 0; it < max_inner; ++it) {
        ++out.iterations;
        double viol = signed_violation(g, a, gamma, u, xi);
        double aviol = std::fabs(viol);
        if (aviol < best_viol) {
            best_viol = aviol;
            best_xi = xi;
        }
        if (aviol <= tol) {
            // polish: extra Newton steps push smooth solutions to machine
            // precision, so closed-form and iterative routes agree tightly
            for (int polish = 0; polish < 3; ++polish) {
                double dv = g.grad2(xi) + gamma * a.slope(xi);
                if (!std::isfinite(dv) || dv <= 0.0) break;
                double cand = xi + viol / dv;
                if (!(cand > blo && cand < bhi)) break;
                double cv = signed_violation(g, a, gamma, u, cand);
                if (std::fabs(cv) >= aviol) break;
                xi = cand;
                viol = cv;
                aviol = std::fabs(cv);
                if (aviol == 0.0) break;
            }
            out.xi = xi;
            return out;
        }
        if (viol > 0.0)
            blo = xi;
        else
            bhi = xi;

        // Newton on the clamped-selection residual, bisection as safeguard
        double next = kInf;
        double deriv = g.grad2(xi) + gamma * a.slope(xi);
        if (std::isfinite(deriv) && deriv > 0.0) next = xi + viol / deriv;
        if (!(next > blo && next < bhi)) {
            next = 0.5 * (blo + bhi);
            if (blo > 0.0 && bhi / blo > 1e3) next = std::sqrt(blo * bhi);
        }
        if (next == xi) {
            // bracket is at rounding width; accept the better endpoint
            out.xi = best_xi;
            if (best_viol <= 1e3 * tol) return out;
            break;
        }
        xi = next;
    }
    throw ConvergenceFailure("resolvent: scalar solver exceeded max_inner", best_viol);
}

// ---------------------------------------------------------------------------
// Vector-level closed forms.

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::optional<ResolventResult> try_vector_closed_form(const ResolventQuery& q) {
    const auto& f = q.kernel;
    const auto& A = q.map;
    const DualVector& u = q.target;
    const std::size_t d = f.dim();

    if (A.is_zero()) {
        ResolventResult r;
        r.x = f.grad_conjugate(u);
        r.used_closed_form = true;
        return r;
    }

    if (A.kind() == MapKind::linear && f.metric() != nullptr) {
        const QuadraticMetric* U = f.metric();
        Eigen::MatrixXd lhs(d, d);
        if (U->diagonal) {
            lhs.setZero();
            for (std::size_t i = 0; i < d; ++i) lhs(i, i) = U->entries[i];
        } else {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) lhs(i, j) = U->entries[i * d + j];
        }
        const std::vector<double>& m = *A.linear_matrix();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) lhs(i, j) += q.gamma * m[i * d + j];
        Eigen::VectorXd rhs = to_eigen(u.coords());
        const std::vector<double>& c = *A.linear_offset();
        if (!c.empty())
            for (std::size_t i = 0; i < d; ++i) rhs(static_cast<Eigen::Index>(i)) -= q.gamma * c[i];
        Eigen::VectorXd sol = lhs.partialPivLu().solve(rhs);
        ResolventResult r;
        r.x = Vector(std::vector<double>(sol.data(), sol.data() + d));
        r.used_closed_form = true;
        return r;
    }

    if (A.kind() == MapKind::simplex_cone) {
        if (f.kind() == KernelKind::entropy) {
            double m = -kInf;
            for (std::size_t k = 0; k < d; ++k) m = std::max(m, u[k]);
            double z = 0.0;
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k) {
                x[k] = std::exp(u[k] - m);
                z += x[k];
            }
            for (auto& v : x) v /= z;
            ResolventResult r;
            r.x = Vector(std::move(x));
            r.used_closed_form = true;
            return r;
        }
        if (f.metric() != nullptr && A.euclidean_projection_allowed()) {
            const QuadraticMetric* U = f.metric();
            bool uniform = U->diagonal;
            for (std::size_t k = 1; k < d && uniform; ++k)
                uniform = U->entries[k] == U->entries[0];
            if (!uniform)
                throw UnsupportedPair(
                    "resolvent: simplex projection needs a uniform diagonal metric");
            double s = U->entries[0];
            // Euclidean projection of u/s onto the simplex (sort + threshold)
            std::vector<double> y(d);
            for (std::size_t k = 0; k < d; ++k) y[k] = u[k] / s;
            std::vector<double> srt = y;
            std::sort(srt.begin(), srt.end(), std::greater<double>());
            double cum = 0.0, theta = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                cum += srt[k];
                double cand = (cum - 1.0) / static_cast<double>(k + 1);
                if (k + 1 == d || srt[k + 1] <= cand) {
                    theta = cand;
                    if (k + 1 < d && srt[k] < cand) continue;
                    break;
                }
            }
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k) x[k] = std::max(0.0, y[k] - theta);
            ResolventResult r;
            r.x = Vector(std::move(x));
            r.used_closed_form = true;
            return r;
        }
        if (f.metric() != nullptr)
            throw UnsupportedPair(
                "resolvent: quadratic kernel + simplex cone is not registered; "
                "select the Euclidean projection form of the cone");
        return std::nullopt;
    }

    if (A.kind() == MapKind::halfspace_cone && f.metric() != nullptr) {
        const std::vector<double>& n = *A.halfspace_normal();
        double b = A.halfspace_offset();
        Vector y = f.grad_conjugate(u);
        double ay = 0.0;
        for (std::size_t k = 0; k < d; ++k) ay += n[k] * y[k];
        ResolventResult r;
        if (ay <= b) {
            r.x = y;
        } else {
            Vector un_inv = f.grad_conjugate(DualVector(n));
            double denom = 0.0;
            for (std::size_t k = 0; k < d; ++k) denom += n[k] * un_inv[k];
            double s = (ay - b) / denom;
            std::vector<double> shifted(d);
            for (std::size_t k = 0; k < d; ++k) shifted[k] = u[k] - s * n[k];
            r.x = f.grad_conjugate(DualVector(std::move(shifted)));
        }
        r.used_closed_form = true;
        return r;
    }

    return std::nullopt;
}

void finish(const ResolventQuery& q, ResolventResult& r, double tol) {
    if (!q.kernel.in_int_dom(r.x))
        throw DomainViolation("resolvent: solution left int dom f");
    DualVector g = q.kernel.grad(r.x);
    std::vector<double> a(q.target.dim());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = (q.target[k] - g[k]) / q.gamma;
    r.a_star = DualVector(std::move(a));
    double dist = q.map.graph_distance(r.x, r.a_star);
    r.residual = std::isfinite(dist) ? q.gamma * dist : kInf;
    // closed forms are exact up to rounding; the iterative path guarantees tol
    (void)tol;
}

}  // namespace

ResolventResult resolvent_solve(const ResolventQuery& q, const ResolventOptions& opts) {
    if (!(q.gamma > 0.0)) throw ContractViolation("resolvent: gamma must be > 0");
    if (!q.kernel.valid() || !q.map.valid()) throw ContractViolation("resolvent: missing kernel or map");
    detail::check_same_dim(q.kernel.dim(), q.map.dim(), "resolvent");
    detail::check_same_dim(q.kernel.dim(), q.target.dim(), "resolvent");

    const std::vector<ScalarSection>* sections = q.kernel.sections();
    const std::vector<ScalarGraph>* graphs = q.map.graphs();

    if (opts.path != ResolventPath::scalar_iterative) {
        // (1) vector-level registry
        if (auto r = try_vector_closed_form(q)) {
            finish(q, *r, opts.tol);
            return *r;
        }
        // (1b) per-coordinate registry for separable pairs
        if (sections && graphs) {
            std::vector<double> x(q.kernel.dim());
            bool all = true;
            for (std::size_t k = 0; k < x.size() && all; ++k) {
                auto v = closed_form_scalar((*sections)[k], (*graphs)[k], q.gamma, q.target[k]);
                if (v)
                    x[k] = *v;
                else
                    all = false;
            }
            if (all) {
                ResolventResult r;
                r.x = Vector(std::move(x));
                r.used_closed_form = true;
                finish(q, r, opts.tol);
                return r;
            }
            if (opts.path == ResolventPath::closed_form)
                throw UnsupportedPair("resolvent: no registered closed form for this pair");
        } else if (opts.path == ResolventPath::closed_form) {
            throw UnsupportedPair("resolvent: no registered closed form for this pair");
        }
    }

    // (2) separable path
    if (sections && graphs) {
        const double tol_c = opts.tol / std::sqrt(static_cast<double>(q.kernel.dim()));
        std::vector<double> x(q.kernel.dim());
        std::size_t iters = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            ScalarSolve s = solve_scalar((*sections)[k], (*graphs)[k], q.gamma, q.target[k], tol_c,
                                         opts.max_inner, opts.scalar_init);
            x[k] = s.xi;
            iters = std::max(iters, s.iterations);
        }
        ResolventResult r;
        r.x = Vector(std::move(x));
        r.iterations = iters;
        finish(q, r, opts.tol);
        return r;
    }

    // (3) structured paths were already attempted above
    throw UnsupportedPair("resolvent: unsupported (kernel, operator) pair: " +
                          q.kernel.describe() + " with " + q.map.describe());
}

double resolvent_residual(const ResolventQuery& q, const Vector& x, const DualVector& a_star) {
    detail::check_same_dim(x.dim(), q.kernel.dim(), "residual");
    detail::check_same_dim(a_star.dim(), q.kernel.dim(), "residual");
    DualVector g = q.kernel.grad(x);
    double s2 = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        double r = g[k] + q.gamma * a_star[k] - q.target[k];
        s2 += r * r;
    }
    return std::sqrt(s2);
}

}  // namespace bfb
