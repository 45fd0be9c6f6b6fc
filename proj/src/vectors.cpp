#include "bfb/vectors.hpp"

#include <cmath>
#include <sstream>

namespace bfb {

namespace detail {

void require_finite(const std::vector<double>& coords, const char* what) {
    for (double c : coords) {
        if (!std::isfinite(c))
            throw ContractViolation(std::string(what) + ": non-finite coordinate");
    }
}

}  // namespace detail

double pair(const DualVector& xstar, const Vector& x) {
    detail::check_same_dim(xstar.dim(), x.dim(), "pair");
    double s = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) s += xstar[k] * x[k];
    return s;
}

namespace {

double norm_p_impl(const std::vector<double>& c, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : c) m = std::max(m, std::fabs(v));
        return m;
    }
    if (p < 1.0) throw ContractViolation("norm_p: p must be >= 1");
    if (p == 1.0) {
        double s = 0.0;
        for (double v : c) s += std::fabs(v);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : c) s += v * v;
        return std::sqrt(s);
    }
    // scale by the max coordinate so |v/m|^p cannot overflow
    double m = 0.0;
    for (double v : c) m = std::max(m, std::fabs(v));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : c) s += std::pow(std::fabs(v) / m, p);
    return m * std::pow(s, 1.0 / p);
}

template <typename V>
std::string to_string_impl(const V& x) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < x.dim(); ++k) {
        if (k) os << ", ";
        os << x[k];
    }
    os << "]";
    return os.str();
}

}  // namespace

double norm_p(const Vector& x, double p) { return norm_p_impl(x.coords(), p); }
double norm_p(const DualVector& x, double p) { return norm_p_impl(x.coords(), p); }

double norm2(const Vector& x) { return norm_p_impl(x.coords(), 2.0); }
double norm2(const DualVector& x) { return norm_p_impl(x.coords(), 2.0); }

namespace {
std::vector<double> zip(const std::vector<double>& a, const std::vector<double>& b,
                        double sb, const char* op) {
    detail::check_same_dim(a.size(), b.size(), op);
    std::vector<double> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + sb * b[k];
    return r;
}
}  // namespace

Vector add(const Vector& a, const Vector& b) { return Vector(zip(a.coords(), b.coords(), 1.0, "add")); }
Vector sub(const Vector& a, const Vector& b) { return Vector(zip(a.coords(), b.coords(), -1.0, "sub")); }
Vector scale(double s, const Vector& a) {
    std::vector<double> r(a.coords());
    for (double& v : r) v *= s;
    return Vector(std::move(r));
}

DualVector add(const DualVector& a, const DualVector& b) { return DualVector(zip(a.coords(), b.coords(), 1.0, "add")); }
DualVector sub(const DualVector& a, const DualVector& b) { return DualVector(zip(a.coords(), b.coords(), -1.0, "sub")); }
DualVector scale(double s, const DualVector& a) {
    std::vector<double> r(a.coords());
    for (double& v : r) v *= s;
    return DualVector(std::move(r));
}

std::string to_string(const Vector& x) { return to_string_impl(x); }
std::string to_string(const DualVector& x) { return to_string_impl(x); }

}  // namespace bfb
