#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bfb/certificates.hpp"
#include "bfb/kernels.hpp"
#include "bfb/operators.hpp"
#include "bfb/report.hpp"

namespace bfb {

// Randomized falsifiers for the sufficiency conditions. Each one samples
// points, evaluates the inequality's signed slack, and reports the worst
// case together with its witness. A pass is evidence, not a proof.

// Draws points in a box; half of the draws use log-uniform magnitudes so
// violations that only show up near zero (or at large scale) are found.
struct BoxSampler {
    SampleBox box;
    bool log_scale_mix = true;

    Vector draw(Rng& rng) const;
    static BoxSampler cube(std::size_t d, double lo, double hi, bool log_mix = true);
};

// Produces points of gra A. The default implementation perturbs grad f at a
// sampled base point and reads the resolvent's graph selection back.
struct GraphSampler {
    std::function<std::pair<Vector, DualVector>(Rng&)> draw;
};

GraphSampler resolvent_graph_sampler(const LegendreKernel& f, const SetValuedMap& A,
                                     const BoxSampler& region, double gamma = 1.0,
                                     double dual_noise = 0.5);
GraphSampler structural_graph_sampler(const SetValuedMap& A, const BoxSampler& region);

// Everything needed to sample the main inequality: a region for x, known
// solution points z, and a graph sampler for (y, y*) in gra A.
struct ConditionSampler {
    BoxSampler region;
    std::vector<Vector> solution_points;
    GraphSampler graph;
};

// <y - x, By - Bz> <= kappa D_f(x, y) + <y - z, delta1 (y*-z*) + delta2 (By-Bz)>
// with z* = -Bz (the canonical solution selection).
CheckReport check_condition_main(const SetValuedMap& A, const MonotoneMap& B,
                                 const LegendreKernel& f, const ConditionCertificate& cert,
                                 const ConditionSampler& sampler, std::size_t samples,
                                 std::uint64_t seed);

// D_psi(x, y) <= kappa D_f(x, y) on interior pairs; needs B = grad psi.
CheckReport check_descent_pair(const MonotoneMap& B, const LegendreKernel& f, double kappa,
                               const BoxSampler& region, std::size_t samples, std::uint64_t seed);

// D_psi(x, y) <= kappa D_f(x, y) + D_psi(x, z) + D_psi(z, y) on triples with
// z drawn from the given solution points.
CheckReport check_descent_triple(const MonotoneMap& B, const LegendreKernel& f, double kappa,
                                 const BoxSampler& region, const std::vector<Vector>& s_points,
                                 std::size_t samples, std::uint64_t seed);

// <x - y, Bx - By> >= beta ||Bx - By||^2.
CheckReport check_cocoercive(const MonotoneMap& B, double beta, const BoxSampler& region,
                             std::size_t samples, std::uint64_t seed);

// ||Bx - By|| <= nu ||x - y||.
CheckReport check_lipschitz(const MonotoneMap& B, double nu, const BoxSampler& region,
                            std::size_t samples, std::uint64_t seed);

// <y - z, Bz - Bx> <= (1/(4 beta nu)) <x - y, Bx - By> on triples.
CheckReport check_angle_bounded(const MonotoneMap& B, double beta, double nu,
                                const BoxSampler& region, std::size_t samples, std::uint64_t seed);

// <x - y, x* - y*> >= mu ||x - y||^2 over sampled graph pairs of A+B.
CheckReport check_strong_monotone(const GraphSampler& a_plus_b, double mu, std::size_t samples,
                                  std::uint64_t seed);

// <x - y, x* - y*> >= beta ||Bx - By||^2 over gra(A+B), assembled from a
// graph sampler for A plus evaluations of B.
CheckReport check_renaud_cohen(const SetValuedMap& A, const MonotoneMap& B, double beta,
                               const GraphSampler& a_graph, std::size_t samples,
                               std::uint64_t seed);

// <x - y, x* - y*> >= -tol over sampled graph pairs (monotonicity smoke test).
CheckReport check_graph_monotone(const GraphSampler& graph, std::size_t samples,
                                 std::uint64_t seed);

// Empirical sup of D_psi / D_f over samples; a suggested kappa, not a bound.
double suggest_kappa(const MonotoneMap& B, const LegendreKernel& f, const BoxSampler& region,
                     std::size_t samples, std::uint64_t seed);

}  // namespace bfb
