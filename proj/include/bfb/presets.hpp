#pragma once

#include "bfb/solver.hpp"

namespace bfb {

// Named problem assemblies for the classical specializations of the scheme.
// Each returns a fully populated ProblemSpec; run() still validates it.

// Backward-only iteration x_{n+1} = (grad f + gamma_n A)^{-1}(grad f(x_n)).
ProblemSpec preset_proximal_point(SetValuedMap A, LegendreKernel f, StepSchedule steps, Vector x0);

// x_{n+1} = (Id + gamma_n A)^{-1}(x_n - gamma_n B x_n) for beta-cocoercive B.
ProblemSpec preset_classical_fb(SetValuedMap A, MonotoneMap B, double beta, double eps,
                                StepSchedule steps, Vector x0);

// x_{n+1} = (U_n + gamma_n A)^{-1}(U_n x_n - gamma_n B x_n); alpha is the
// declared smallest-eigenvalue bound of the U_n. Enforces
// sup gamma_n <= (2 beta - eps) alpha through the certificate.
ProblemSpec preset_variable_metric(SetValuedMap A, MonotoneMap B, MetricSequence metrics,
                                   double alpha, double beta, double eps, StepSchedule steps,
                                   Vector x0);

// Fixed-step x_{n+1} = (grad f + gamma A)^{-1}(grad f(x_n) - gamma B x_n)
// under the graph inequality with constant beta; requires gamma in (0, 2 beta).
ProblemSpec preset_renaud_cohen(SetValuedMap A, MonotoneMap B, LegendreKernel f, double beta,
                                double gamma, Vector x0);

// Variational inequality: A = subdifferential of phi, B monotone and
// single-valued; caller supplies schedule, steps and certificate.
ProblemSpec preset_variational_inequality(SetValuedMap A, MonotoneMap B, KernelSchedule schedule,
                                          StepSchedule steps, ConditionCertificate cert,
                                          Vector x0);

// The ell^p x entropy product-kernel problem at truncated dimension d:
// f_n(z, xi) = (chi_n/p)||z||_p^p + 1 - xi + xi ln xi, B = grad(||z||_p^p / p).
// Passing an invalid A installs the default separable graph (zero on the z
// block, a shifted sign graph on the xi block), for which the solution is
// known to be (0, ..., 0, 1).
ProblemSpec preset_example56(double p, ChiSequence chi, std::size_t d, SetValuedMap A, Vector x0,
                             StepSchedule steps);

// Uniformly monotone A with B = grad psi and D_psi <= kappa D_f; enforces the
// strict bound sup gamma_n < 1/kappa.
ProblemSpec preset_strong(SetValuedMap A, MonotoneMap B, LegendreKernel f, double kappa,
                          StepSchedule steps, Vector x0);

}  // namespace bfb
