#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bfb/vectors.hpp"

namespace bfb {

// A Legendre kernel f: value, gradient on int dom f, conjugate gradient on
// int dom f*, and domain predicates. Built-in kernels carry the analytic
// properties the convergence theory consumes as capability flags; nothing is
// verified symbolically.

enum class KernelKind { quadratic, entropy, power_norm, product };

struct KernelCapabilities {
    bool supercoercive = false;
    bool uniformly_convex = false;
    std::optional<double> strong_convexity;  // modulus on the declared set
    bool cofinite = false;                   // dom f* is all of the dual space
    std::optional<double> symmetry_ratio;    // lower bound on inf D(x,y)/D(y,x)
    // D_f(y_{n+1}, y_n) -> 0 on bounded interior sequences forces
    // grad f(y_{n+1}) - grad f(y_n) -> 0. Declared, not certified, for
    // user-supplied kernels; true for every built-in.
    bool grad_stable_on_bounded = false;
};

// One coordinate of a separable kernel. Kept virtual-free so the scalar
// resolvent loop stays cheap.
struct ScalarSection {
    enum class Kind { quadratic, entropy, power };
    Kind kind = Kind::quadratic;
    double a = 1.0;  // quadratic weight, or the chi factor of a power section
    double p = 2.0;  // power exponent

    double value(double xi) const;
    double grad(double xi) const;       // defined on the open interior
    double grad2(double xi) const;      // second derivative, for Newton steps
    double grad_conj(double u) const;
    double int_dom_lo() const;          // interior is (lo, hi)
    double int_dom_hi() const;
    bool in_dom(double xi) const;
    bool in_int_dom(double xi) const;
};

// Per-coordinate box used by samplers to draw interior points.
struct SampleBox {
    std::vector<double> lo;
    std::vector<double> hi;
};

// Dense or diagonal SPD metric of a quadratic kernel, exposed for the
// structured resolvent paths.
struct QuadraticMetric {
    std::size_t d = 0;
    bool diagonal = true;
    std::vector<double> entries;  // d values if diagonal, d*d row-major if dense
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

class KernelImpl {
public:
    virtual ~KernelImpl() = default;
    virtual double eval(const Vector& x) const = 0;  // +inf outside dom f
    virtual DualVector grad(const Vector& x) const = 0;
    virtual Vector grad_conjugate(const DualVector& u) const = 0;
    virtual bool in_dom(const Vector& x) const = 0;
    virtual bool in_int_dom(const Vector& x) const = 0;
    virtual std::size_t dim() const = 0;
    virtual KernelKind kind() const = 0;
    virtual const KernelCapabilities& capabilities() const = 0;
    virtual SampleBox sample_box() const = 0;
    virtual std::string describe() const = 0;
    // non-null when the kernel is a coordinate-wise sum
    virtual const std::vector<ScalarSection>* sections() const { return nullptr; }
    virtual const QuadraticMetric* metric() const { return nullptr; }
};

// Value-semantic handle; kernels are immutable and freely shared.
class LegendreKernel {
public:
    LegendreKernel() = default;
    explicit LegendreKernel(std::shared_ptr<const KernelImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return impl_ != nullptr; }
    double eval(const Vector& x) const { return impl_->eval(x); }
    DualVector grad(const Vector& x) const { return impl_->grad(x); }
    Vector grad_conjugate(const DualVector& u) const { return impl_->grad_conjugate(u); }
    bool in_dom(const Vector& x) const { return impl_->in_dom(x); }
    bool in_int_dom(const Vector& x) const { return impl_->in_int_dom(x); }
    std::size_t dim() const { return impl_->dim(); }
    KernelKind kind() const { return impl_->kind(); }
    const KernelCapabilities& capabilities() const { return impl_->capabilities(); }
    SampleBox sample_box() const { return impl_->sample_box(); }
    std::string describe() const { return impl_->describe(); }
    const std::vector<ScalarSection>* sections() const { return impl_->sections(); }
    const QuadraticMetric* metric() const { return impl_->metric(); }
    const KernelImpl* impl() const { return impl_.get(); }

private:
    std::shared_ptr<const KernelImpl> impl_;
};

// D_f(x, y) = f(x) - f(y) - <grad f(y), x - y> for y in int dom f, +inf
// otherwise. Total; never throws on domain violations.
double bregman(const LegendreKernel& f, const Vector& x, const Vector& y);

// f(x) = <x, U x>/2 for SPD U. Throws ContractViolation when U is not
// symmetric positive definite.
LegendreKernel make_quadratic_metric(std::size_t d, const std::vector<double>& dense_row_major);
LegendreKernel make_quadratic_metric_diag(const std::vector<double>& diag);
LegendreKernel make_quadratic_identity(std::size_t d, double scale = 1.0);

// f(x) = sum_k (x_k ln x_k - x_k) on [0, inf)^d with 0 ln 0 = 0.
LegendreKernel make_boltzmann_shannon(std::size_t d);

// f(z) = (chi/p) sum_k |z_k|^p with p > 1, chi >= 1.
LegendreKernel make_power_norm(double p, double chi, std::size_t d);

// Block kernel on R^{d1+d2}: f(z, xi) = z_part(z) + xi_part(xi) + offset.
LegendreKernel make_product_kernel(LegendreKernel z_part, LegendreKernel xi_part, double offset);

}  // namespace bfb
