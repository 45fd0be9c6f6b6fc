#pragma once

#include <optional>
#include <string>

namespace bfb {

// Sufficiency routes that produce constants (kappa, delta1, delta2) for the
// main inequality of the problem class. Each route fixes the formulas
// exactly; nothing is estimated.
enum class CertificateRoute {
    direct,              // user-supplied kappa, delta1; delta2 = 1
    descent_triple,      // B = grad psi with the three-point descent bound
    descent_pair,        // B = grad psi with D_psi <= kappa D_f
    renaud_cohen,        // graph inequality over gra(A+B) with constant beta
    strong_monotone,     // A+B mu-strongly monotone, B nu-Lipschitz
    cocoercive,          // B beta-cocoercive
    angle_bounded,       // B nu-Lipschitz and angle bounded by 1/(4 beta nu)
    lipschitz_potential, // B = grad psi, (1/beta)-Lipschitz
    explicit_constants   // all three constants given directly
};

struct CertificateAux {
    std::optional<double> alpha;   // strong monotonicity of grad f on dom A
    std::optional<double> beta;
    std::optional<double> mu;
    std::optional<double> nu;
    std::optional<double> eps;
    std::optional<double> kappa;   // for direct / descent routes
    std::optional<double> delta1;  // for the direct route
};

struct ConditionCertificate {
    double kappa = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    CertificateRoute route = CertificateRoute::explicit_constants;
    CertificateAux aux;
};

// Applies the route formulas. Throws ContractViolation when a required
// auxiliary constant is missing or eps falls outside its admissible interval
// (eps in (0, 2 beta) for the beta routes, (0, 2 mu / nu^2) for the strongly
// monotone route).
ConditionCertificate derive_certificate(CertificateRoute route, const CertificateAux& aux);

ConditionCertificate explicit_certificate(double kappa, double delta1, double delta2);

const char* route_name(CertificateRoute route);
std::optional<CertificateRoute> route_from_name(const std::string& name);

}  // namespace bfb
