#include "bfb/presets.hpp"

namespace bfb {

ProblemSpec preset_proximal_point(SetValuedMap A, LegendreKernel f, StepSchedule steps,
                                  Vector x0) {
    ProblemSpec spec;
    spec.name = "proximal_point";
    std::size_t d = x0.dim();
    spec.B = zero_map(d);
    spec.A = std::move(A);
    spec.schedule = KernelSchedule::constant(std::move(f));
    spec.steps = std::move(steps);
    spec.cert = explicit_certificate(0.0, 0.0, 0.0);
    spec.x0 = std::move(x0);
    return spec;
}

ProblemSpec preset_classical_fb(SetValuedMap A, MonotoneMap B, double beta, double eps,
                                StepSchedule steps, Vector x0) {
    ProblemSpec spec;
    spec.name = "classical_fb";
    std::size_t d = x0.dim();
    spec.schedule = KernelSchedule::constant(make_quadratic_identity(d));
    CertificateAux aux;
    aux.alpha = 1.0;
    aux.beta = beta;
    aux.eps = eps;
    spec.cert = derive_certificate(CertificateRoute::cocoercive, aux);
    spec.A = std::move(A);
    spec.B = std::move(B);
    spec.steps = std::move(steps);
    spec.x0 = std::move(x0);
    return spec;
}

ProblemSpec preset_variable_metric(SetValuedMap A, MonotoneMap B, MetricSequence metrics,
                                   double alpha, double beta, double eps, StepSchedule steps,
                                   Vector x0) {
    ProblemSpec spec;
    spec.name = "variable_metric";
    metrics.d = x0.dim();
    // base kernel (alpha/2)||.||^2 puts the family in C_1; the certificate's
    // alpha then carries the eigenvalue bound, so the validated step condition
    // is exactly sup gamma_n <= (2 beta - eps) alpha
    spec.schedule = KernelSchedule::metric(std::move(metrics), alpha);
    CertificateAux aux;
    aux.alpha = alpha;
    aux.beta = beta;
    aux.eps = eps;
    spec.cert = derive_certificate(CertificateRoute::cocoercive, aux);
    spec.A = std::move(A);
    spec.B = std::move(B);
    spec.steps = std::move(steps);
    spec.x0 = std::move(x0);
    return spec;
}

ProblemSpec preset_renaud_cohen(SetValuedMap A, MonotoneMap B, LegendreKernel f, double beta,
                                double gamma, Vector x0) {
    if (!(gamma > 0.0 && gamma < 2.0 * beta))
        throw ContractViolation("preset_renaud_cohen: gamma must lie in (0, 2*beta)");
    ProblemSpec spec;
    spec.name = "renaud_cohen";
    CertificateAux aux;
    aux.alpha = f.capabilities().strong_convexity.value_or(1.0);
    aux.beta = beta;
    aux.eps = 0.5 * (2.0 * beta - gamma);  // keeps gamma < 2*beta - eps
    spec.cert = derive_certificate(CertificateRoute::renaud_cohen, aux);
    spec.schedule = KernelSchedule::constant(std::move(f));
    spec.A = std::move(A);
    spec.B = std::move(B);
    spec.steps = StepSchedule::constant(gamma);
    spec.x0 = std::move(x0);
    return spec;
}

ProblemSpec preset_variational_inequality(SetValuedMap A, MonotoneMap B, KernelSchedule schedule,
                                          StepSchedule steps, ConditionCertificate cert,
                                          Vector x0) {
    ProblemSpec spec;
    spec.name = "variational_inequality";
    spec.A = std::move(A);
    spec.B = std::move(B);
    spec.schedule = std::move(schedule);
    spec.steps = std::move(steps);
    spec.cert = cert;
    spec.x0 = std::move(x0);
    return spec;
}

ProblemSpec preset_example56(double p, ChiSequence chi, std::size_t d, SetValuedMap A, Vector x0,
                             StepSchedule steps) {
    ProblemSpec spec;
    spec.name = "example56";
    spec.schedule = KernelSchedule::product_chi(p, d, std::move(chi), 1.0);
    spec.B = power_gradient_map(d + 1, p, 1.0 / p, 0, d);
    bool default_a = !A.valid();
    if (default_a) {
        std::vector<ScalarGraph> graphs(d, ScalarGraph{ScalarGraph::Kind::zero, 0.0, 0.0});
        graphs.push_back(ScalarGraph{ScalarGraph::Kind::sign_shift, 1.0, 0.0});
        A = separable_map(std::move(graphs));
        std::vector<double> z(d + 1, 0.0);
        z[d] = 1.0;
        spec.known_solution = Vector(std::move(z));
    }
    spec.A = std::move(A);
    spec.cert = derive_certificate(CertificateRoute::descent_pair, [] {
        CertificateAux aux;
        aux.kappa = 1.0;
        return aux;
    }());
    spec.steps = std::move(steps);
    spec.x0 = std::move(x0);
    return spec;
}

ProblemSpec preset_strong(SetValuedMap A, MonotoneMap B, LegendreKernel f, double kappa,
                          StepSchedule steps, Vector x0) {
    if (!B.has_potential())
        throw ContractViolation("preset_strong: B must be the gradient of a potential");
    ProblemSpec spec;
    spec.name = "strong_convergence";
    CertificateAux aux;
    aux.kappa = kappa;
    spec.cert = derive_certificate(CertificateRoute::descent_pair, aux);
    spec.schedule = KernelSchedule::constant(std::move(f));
    spec.strict_step_bound = true;
    spec.A = std::move(A);
    spec.B = std::move(B);
    spec.steps = std::move(steps);
    spec.x0 = std::move(x0);
    return spec;
}

}  // namespace bfb
