#include "bfb/certificates.hpp"

#include <cmath>

#include "bfb/errors.hpp"

namespace bfb {

namespace {

double need(const std::optional<double>& v, const char* name) {
    if (!v) throw ContractViolation(std::string("derive_certificate: missing aux constant ") + name);
    return *v;
}

void check_ranges(const ConditionCertificate& c) {
    if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa))
        throw ContractViolation("certificate: kappa must be finite and >= 0");
    if (!(c.delta1 >= 0.0 && c.delta1 < 1.0))
        throw ContractViolation("certificate: delta1 must lie in [0, 1)");
    if (!(c.delta2 >= 0.0 && c.delta2 <= 1.0))
        throw ContractViolation("certificate: delta2 must lie in [0, 1]");
}

}  // namespace

ConditionCertificate derive_certificate(CertificateRoute route, const CertificateAux& aux) {
    ConditionCertificate c;
    c.route = route;
    c.aux = aux;
    switch (route) {
        case CertificateRoute::cocoercive:
        case CertificateRoute::angle_bounded:
        case CertificateRoute::lipschitz_potential:
        case CertificateRoute::renaud_cohen: {
            double alpha = need(aux.alpha, "alpha");
            double beta = need(aux.beta, "beta");
            double eps = need(aux.eps, "eps");
            if (!(alpha > 0.0) || !(beta > 0.0))
                throw ContractViolation("derive_certificate: alpha and beta must be > 0");
            if (!(eps > 0.0 && eps < 2.0 * beta))
                throw ContractViolation("derive_certificate: eps must lie in (0, 2*beta)");
            c.kappa = 1.0 / (alpha * (2.0 * beta - eps));
            c.delta2 = (2.0 * beta - eps) / (2.0 * beta);
            c.delta1 = route == CertificateRoute::renaud_cohen ? c.delta2 : 0.0;
            break;
        }
        case CertificateRoute::strong_monotone: {
            double alpha = need(aux.alpha, "alpha");
            double mu = need(aux.mu, "mu");
            double nu = need(aux.nu, "nu");
            double eps = need(aux.eps, "eps");
            if (!(alpha > 0.0) || !(mu > 0.0) || !(nu > 0.0))
                throw ContractViolation("derive_certificate: alpha, mu, nu must be > 0");
            if (!(eps > 0.0 && eps < 2.0 * mu / (nu * nu)))
                throw ContractViolation("derive_certificate: eps must lie in (0, 2*mu/nu^2)");
            c.kappa = nu * nu / (alpha * (2.0 * mu - eps * nu * nu));
            c.delta1 = c.delta2 = (2.0 * mu - eps * nu * nu) / (2.0 * mu);
            break;
        }
        case CertificateRoute::descent_pair:
        case CertificateRoute::descent_triple:
            c.kappa = need(aux.kappa, "kappa");
            c.delta1 = 0.0;
            c.delta2 = 1.0;
            break;
        case CertificateRoute::direct:
            c.kappa = need(aux.kappa, "kappa");
            c.delta1 = aux.delta1.value_or(0.0);
            c.delta2 = 1.0;
            break;
        case CertificateRoute::explicit_constants:
            c.kappa = need(aux.kappa, "kappa");
            c.delta1 = aux.delta1.value_or(0.0);
            c.delta2 = 1.0;
            break;
    }
    check_ranges(c);
    return c;
}

ConditionCertificate explicit_certificate(double kappa, double delta1, double delta2) {
    ConditionCertificate c;
    c.route = CertificateRoute::explicit_constants;
    c.kappa = kappa;
    c.delta1 = delta1;
    c.delta2 = delta2;
    c.aux.kappa = kappa;
    c.aux.delta1 = delta1;
    check_ranges(c);
    return c;
}

const char* route_name(CertificateRoute route) {
    switch (route) {
        case CertificateRoute::direct: return "direct";
        case CertificateRoute::descent_triple: return "descent_triple";
        case CertificateRoute::descent_pair: return "descent_pair";
        case CertificateRoute::renaud_cohen: return "renaud_cohen";
        case CertificateRoute::strong_monotone: return "strong_monotone";
        case CertificateRoute::cocoercive: return "cocoercive";
        case CertificateRoute::angle_bounded: return "angle_bounded";
        case CertificateRoute::lipschitz_potential: return "lipschitz_potential";
        case CertificateRoute::explicit_constants: return "explicit";
    }
    return "unknown";
}

std::optional<CertificateRoute> route_from_name(const std::string& name) {
    if (name == "direct") return CertificateRoute::direct;
    if (name == "descent_triple") return CertificateRoute::descent_triple;
    if (name == "descent_pair") return CertificateRoute::descent_pair;
    if (name == "renaud_cohen") return CertificateRoute::renaud_cohen;
    if (name == "strong_monotone") return CertificateRoute::strong_monotone;
    if (name == "cocoercive") return CertificateRoute::cocoercive;
    if (name == "angle_bounded") return CertificateRoute::angle_bounded;
    if (name == "lipschitz_potential") return CertificateRoute::lipschitz_potential;
    if (name == "explicit") return CertificateRoute::explicit_constants;
    return std::nullopt;
}

}  // namespace bfb
