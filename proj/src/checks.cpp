#include "bfb/checks.hpp"

#include <cmath>
#include <limits>

#include "bfb/resolvent.hpp"

namespace bfb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDefaultTol = 1e-9;

// Scale-free slack: violations that live at tiny magnitudes (the descent
// counterexample peaks around 1e-18) must still register against the 1e-9
// tolerance, so slacks are normalized by the inequality's own scale. The
// scale must include the magnitudes the two sides were computed FROM, not
// just their values, or structural cancellations (orthogonal pairings that
// are zero up to rounding) read as order-one violations.
double rel(double slack, double scale) { return slack / std::max(scale, 1e-300); }

// D_psi from the potential carried by B (B = grad psi on the sampled region).
double bregman_potential(const MonotoneMap& B, const Vector& x, const Vector& y) {
    return B.potential(x) - B.potential(y) - pair(B.eval(y), sub(x, y));
}

struct Worst {
    double slack = kInf;
    std::optional<Witness> witness;

    void offer(double s, std::initializer_list<Vector> pts, std::size_t idx, double tol,
               const char* label) {
        if (s < slack) {
            slack = s;
            if (s < -tol) witness = Witness{std::vector<Vector>(pts), idx, label};
        }
    }

    CheckReport finish(const char* name, std::size_t samples, double tol) const {
        CheckReport rep;
        rep.name = name;
        rep.tol = tol;
        rep.samples = samples;
        rep.worst_slack = std::isfinite(slack) ? slack : 0.0;
        rep.pass = rep.worst_slack >= -tol;
        rep.witness = witness;
        return rep;
    }
};

}  // namespace

Vector BoxSampler::draw(Rng& rng) const {
    std::vector<double> c(box.lo.size());
    bool log_mode = log_scale_mix && rng.uniform() < 0.5;
    for (std::size_t k = 0; k < c.size(); ++k) {
        double lo = box.lo[k], hi = box.hi[k];
        if (!log_mode) {
            c[k] = rng.uniform(lo, hi);
            continue;
        }
        double max_mag = std::max(std::fabs(lo), std::fabs(hi));
        double m = std::pow(10.0, rng.uniform(-14.0, std::log10(max_mag)));
        double sign;
        if (lo >= 0.0)
            sign = 1.0;
        else if (hi <= 0.0)
            sign = -1.0;
        else
            sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        double v = sign * m;
        if (lo > 0.0) v += lo;  // keep strictly inside positive boxes
        c[k] = std::clamp(v, lo, hi);
    }
    return Vector(std::move(c));
}

BoxSampler BoxSampler::cube(std::size_t d, double lo, double hi, bool log_mix) {
    return BoxSampler{SampleBox{std::vector<double>(d, lo), std::vector<double>(d, hi)}, log_mix};
}

GraphSampler resolvent_graph_sampler(const LegendreKernel& f, const SetValuedMap& A,
                                     const BoxSampler& region, double gamma, double dual_noise) {
    return GraphSampler{[f, A, region, gamma, dual_noise](Rng& rng) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Vector w = region.draw(rng);
            if (!f.in_int_dom(w)) continue;
            std::vector<double> u = f.grad(w).coords();
            // perturb relative to each coordinate's scale so graph points
            // sampled near zero stay near zero
            for (auto& v : u) v += dual_noise * std::fabs(v) * rng.uniform(-1.0, 1.0);
            ResolventQuery q{f, gamma, A, DualVector(std::move(u))};
            try {
                ResolventResult r = resolvent_solve(q);
                return std::make_pair(r.x, r.a_star);
            } catch (const std::runtime_error&) {
                continue;  // retry from another base point
            }
        }
        throw SamplingError("graph sampler: could not produce a graph point");
    }};
}

GraphSampler structural_graph_sampler(const SetValuedMap& A, const BoxSampler& region) {
    return GraphSampler{[A, region](Rng& rng) { return A.draw_graph(rng, region.box); }};
}

CheckReport check_condition_main(const SetValuedMap& A, const MonotoneMap& B,
                                 const LegendreKernel& f, const ConditionCertificate& cert,
                                 const ConditionSampler& sampler, std::size_t samples,
                                 std::uint64_t seed) {
    (void)A;  // y* arrives through the graph sampler
    if (sampler.solution_points.empty())
        throw ContractViolation("check_condition_main: needs at least one solution point");
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = sampler.region.draw(rng);
        auto [y, ystar] = sampler.graph.draw(rng);
        const Vector& z = sampler.solution_points[i % sampler.solution_points.size()];
        DualVector bz = B.eval(z);
        DualVector zstar = scale(-1.0, bz);  // 0 in Az + Bz
        DualVector by = B.eval(y);
        DualVector dby = sub(by, bz);
        double lhs = pair(dby, sub(y, x));
        double rhs = cert.kappa * bregman(f, x, y) +
                     pair(add(scale(cert.delta1, sub(ystar, zstar)), scale(cert.delta2, dby)),
                          sub(y, z));
        if (!std::isfinite(rhs)) continue;  // x outside dom f: inequality is vacuous
        double scale = std::fabs(lhs) + std::fabs(rhs) + norm2(sub(y, x)) * norm2(dby);
        worst.offer(rel(rhs - lhs, scale), {x, y, z}, i, kDefaultTol, "main condition");
    }
    CheckReport rep = worst.finish("condition_main", samples, kDefaultTol);
    rep.detail = std::string("route ") + route_name(cert.route);
    return rep;
}

CheckReport check_descent_pair(const MonotoneMap& B, const LegendreKernel& f, double kappa,
                               const BoxSampler& region, std::size_t samples, std::uint64_t seed) {
    if (!B.has_potential())
        throw ContractViolation("check_descent_pair: B carries no potential");
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = region.draw(rng);
        Vector y = region.draw(rng);
        if (!f.in_int_dom(y) || !f.in_int_dom(x)) continue;
        double dpsi = bregman_potential(B, x, y);
        double df = bregman(f, x, y);
        if (!std::isfinite(df)) continue;
        worst.offer(rel(kappa * df - dpsi, std::fabs(dpsi) + kappa * df), {x, y}, i, kDefaultTol,
                    "D_psi <= kappa D_f");
    }
    return worst.finish("descent_pair", samples, kDefaultTol);
}

CheckReport check_descent_triple(const MonotoneMap& B, const LegendreKernel& f, double kappa,
                                 const BoxSampler& region, const std::vector<Vector>& s_points,
                                 std::size_t samples, std::uint64_t seed) {
    if (!B.has_potential())
        throw ContractViolation("check_descent_triple: B carries no potential");
    if (s_points.empty())
        throw ContractViolation("check_descent_triple: needs solution points");
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = region.draw(rng);
        Vector y = region.draw(rng);
        if (!f.in_int_dom(y) || !f.in_int_dom(x)) continue;
        const Vector& z = s_points[i % s_points.size()];
        double lhs = bregman_potential(B, x, y);
        double rhs = kappa * bregman(f, x, y) + bregman_potential(B, x, z) +
                     bregman_potential(B, z, y);
        if (!std::isfinite(rhs)) continue;
        worst.offer(rel(rhs - lhs, std::fabs(lhs) + std::fabs(rhs)), {x, y, z}, i, kDefaultTol,
                    "three-point descent");
    }
    return worst.finish("descent_triple", samples, kDefaultTol);
}

CheckReport check_cocoercive(const MonotoneMap& B, double beta, const BoxSampler& region,
                             std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = region.draw(rng);
        Vector y = region.draw(rng);
        DualVector db = sub(B.eval(x), B.eval(y));
        double nb = norm2(db);
        double lhs = pair(db, sub(x, y));
        double scale = norm2(sub(x, y)) * nb + beta * nb * nb;
        worst.offer(rel(lhs - beta * nb * nb, scale), {x, y}, i, kDefaultTol, "cocoercivity");
    }
    return worst.finish("cocoercive", samples, kDefaultTol);
}

CheckReport check_lipschitz(const MonotoneMap& B, double nu, const BoxSampler& region,
                            std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = region.draw(rng);
        Vector y = region.draw(rng);
        double nb = norm2(sub(B.eval(x), B.eval(y)));
        double nx = norm2(sub(x, y));
        worst.offer(rel(nu * nx - nb, nb + nu * nx), {x, y}, i, kDefaultTol, "Lipschitz bound");
    }
    return worst.finish("lipschitz", samples, kDefaultTol);
}

CheckReport check_angle_bounded(const MonotoneMap& B, double beta, double nu,
                                const BoxSampler& region, std::size_t samples,
                                std::uint64_t seed) {
    Rng rng(seed);
    Worst worst;
    double c = 1.0 / (4.0 * beta * nu);
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = region.draw(rng);
        Vector y = region.draw(rng);
        Vector z = region.draw(rng);
        DualVector dzx = sub(B.eval(z), B.eval(x));
        DualVector dxy = sub(B.eval(x), B.eval(y));
        double lhs = pair(dzx, sub(y, z));
        double rhs = c * pair(dxy, sub(x, y));
        double scale = norm2(sub(y, z)) * norm2(dzx) + c * norm2(sub(x, y)) * norm2(dxy);
        worst.offer(rel(rhs - lhs, scale), {x, y, z}, i, kDefaultTol, "angle bound");
    }
    return worst.finish("angle_bounded", samples, kDefaultTol);
}

CheckReport check_strong_monotone(const GraphSampler& a_plus_b, double mu, std::size_t samples,
                                  std::uint64_t seed) {
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, xs] = a_plus_b.draw(rng);
        auto [y, ys] = a_plus_b.draw(rng);
        double nx = norm2(sub(x, y));
        double lhs = pair(sub(xs, ys), sub(x, y));
        double scale = nx * norm2(sub(xs, ys)) + mu * nx * nx;
        worst.offer(rel(lhs - mu * nx * nx, scale), {x, y}, i, kDefaultTol,
                    "strong monotonicity");
    }
    return worst.finish("strong_monotone", samples, kDefaultTol);
}

CheckReport check_renaud_cohen(const SetValuedMap& A, const MonotoneMap& B, double beta,
                               const GraphSampler& a_graph, std::size_t samples,
                               std::uint64_t seed) {
    (void)A;
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, xa] = a_graph.draw(rng);
        auto [y, ya] = a_graph.draw(rng);
        DualVector bx = B.eval(x);
        DualVector by = B.eval(y);
        DualVector xs = add(xa, bx);
        DualVector ys = add(ya, by);
        double nb = norm2(sub(bx, by));
        double lhs = pair(sub(xs, ys), sub(x, y));
        double scale = norm2(sub(x, y)) * norm2(sub(xs, ys)) + beta * nb * nb;
        worst.offer(rel(lhs - beta * nb * nb, scale), {x, y}, i, kDefaultTol,
                    "graph inequality");
    }
    return worst.finish("renaud_cohen", samples, kDefaultTol);
}

CheckReport check_graph_monotone(const GraphSampler& graph, std::size_t samples,
                                 std::uint64_t seed) {
    Rng rng(seed);
    Worst worst;
    for (std::size_t i = 0; i < samples; ++i) {
        auto [x, xs] = graph.draw(rng);
        auto [y, ys] = graph.draw(rng);
        double lhs = pair(sub(xs, ys), sub(x, y));
        worst.offer(rel(lhs, norm2(sub(x, y)) * norm2(sub(xs, ys))), {x, y}, i, 1e-10,
                    "graph monotonicity");
    }
    return worst.finish("graph_monotone", samples, 1e-10);
}

double suggest_kappa(const MonotoneMap& B, const LegendreKernel& f, const BoxSampler& region,
                     std::size_t samples, std::uint64_t seed) {
    if (!B.has_potential()) throw ContractViolation("suggest_kappa: B carries no potential");
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector x = region.draw(rng);
        Vector y = region.draw(rng);
        if (!f.in_int_dom(x) || !f.in_int_dom(y)) continue;
        double df = bregman(f, x, y);
        double dpsi = bregman_potential(B, x, y);
        if (df > 1e-14 && std::isfinite(dpsi)) worst = std::max(worst, dpsi / df);
    }
    return worst;
}

}  // namespace bfb
