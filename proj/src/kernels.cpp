#include "bfb/kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

namespace bfb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// ScalarSection

double ScalarSection::value(double xi) const {
    switch (kind) {
        case Kind::quadratic:
            return 0.5 * a * xi * xi;
        case Kind::entropy:
            if (xi < 0.0) return kInf;
            if (xi == 0.0) return 0.0;
            return xi * std::log(xi) - xi;
        case Kind::power:
            return a * std::pow(std::fabs(xi), p) / p;
    }
    return kInf;
}

double ScalarSection::grad(double xi) const {
    switch (kind) {
        case Kind::quadratic:
            return a * xi;
        case Kind::entropy:
            return std::log(xi);
        case Kind::power: {
            if (xi == 0.0) return 0.0;
            double s = xi > 0.0 ? 1.0 : -1.0;
            return a * s * std::pow(std::fabs(xi), p - 1.0);
        }
    }
    return 0.0;
}

double ScalarSection::grad2(double xi) const {
    switch (kind) {
        case Kind::quadratic:
            return a;
        case Kind::entropy:
            return 1.0 / xi;
        case Kind::power:
            if (xi == 0.0) return p > 2.0 ? 0.0 : kInf;
            return a * (p - 1.0) * std::pow(std::fabs(xi), p - 2.0);
    }
    return 0.0;
}

double ScalarSection::grad_conj(double u) const {
    switch (kind) {
        case Kind::quadratic:
            return u / a;
        case Kind::entropy:
            return std::exp(u);
        case Kind::power: {
            if (u == 0.0) return 0.0;
            double s = u > 0.0 ? 1.0 : -1.0;
            return s * std::pow(std::fabs(u) / a, 1.0 / (p - 1.0));
        }
    }
    return 0.0;
}

double ScalarSection::int_dom_lo() const { return kind == Kind::entropy ? 0.0 : -kInf; }
double ScalarSection::int_dom_hi() const { return kInf; }
bool ScalarSection::in_dom(double xi) const { return kind == Kind::entropy ? xi >= 0.0 : true; }
bool ScalarSection::in_int_dom(double xi) const { return kind == Kind::entropy ? xi > 0.0 : true; }

// ---------------------------------------------------------------------------
// Separable kernel base: value/grad/conjugate assembled from sections.

namespace {

class SeparableKernel : public KernelImpl {
public:
    SeparableKernel(std::vector<ScalarSection> sections, KernelKind kind,
                    KernelCapabilities caps, SampleBox box, std::string name)
        : sections_(std::move(sections)),
          kind_(kind),
          caps_(caps),
          box_(std::move(box)),
          name_(std::move(name)) {}

    double eval(const Vector& x) const override {
        check_dim(x.dim());
        double s = 0.0;
        for (std::size_t k = 0; k < sections_.size(); ++k) {
            double v = sections_[k].value(x[k]);
            if (!std::isfinite(v)) return kInf;
            s += v;
        }
        return s;
    }

    DualVector grad(const Vector& x) const override {
        check_dim(x.dim());
        if (!in_int_dom(x))
            throw DomainViolation(name_ + ": gradient requested outside int dom f at x=" + to_string(x));
        std::vector<double> g(sections_.size());
        for (std::size_t k = 0; k < sections_.size(); ++k) g[k] = sections_[k].grad(x[k]);
        return DualVector(std::move(g));
    }

    Vector grad_conjugate(const DualVector& u) const override {
        check_dim(u.dim());
        std::vector<double> x(sections_.size());
        for (std::size_t k = 0; k < sections_.size(); ++k) x[k] = sections_[k].grad_conj(u[k]);
        return Vector(std::move(x));
    }

    bool in_dom(const Vector& x) const override {
        if (x.dim() != sections_.size()) return false;
        for (std::size_t k = 0; k < sections_.size(); ++k)
            if (!sections_[k].in_dom(x[k])) return false;
        return true;
    }

    bool in_int_dom(const Vector& x) const override {
        if (x.dim() != sections_.size()) return false;
        for (std::size_t k = 0; k < sections_.size(); ++k)
            if (!sections_[k].in_int_dom(x[k])) return false;
        return true;
    }

    std::size_t dim() const override { return sections_.size(); }
    KernelKind kind() const override { return kind_; }
    const KernelCapabilities& capabilities() const override { return caps_; }
    SampleBox sample_box() const override { return box_; }
    std::string describe() const override { return name_; }
    const std::vector<ScalarSection>* sections() const override { return &sections_; }

protected:
    void check_dim(std::size_t n) const {
        detail::check_same_dim(n, sections_.size(), name_.c_str());
    }

    std::vector<ScalarSection> sections_;
    KernelKind kind_;
    KernelCapabilities caps_;
    SampleBox box_;
    std::string name_;
};

// Diagonal quadratic metric also advertises its metric for structured solves.
class DiagQuadraticKernel final : public SeparableKernel {
public:
    DiagQuadraticKernel(std::vector<ScalarSection> sections, KernelCapabilities caps,
                        SampleBox box, std::string name, QuadraticMetric metric)
        : SeparableKernel(std::move(sections), KernelKind::quadratic, caps, std::move(box),
                          std::move(name)),
          metric_(std::move(metric)) {}
    const QuadraticMetric* metric() const override { return &metric_; }

private:
    QuadraticMetric metric_;
};

class DenseQuadraticKernel final : public KernelImpl {
public:
    DenseQuadraticKernel(QuadraticMetric metric, std::vector<double> inverse_row_major,
                         KernelCapabilities caps)
        : metric_(std::move(metric)), inv_(std::move(inverse_row_major)), caps_(caps) {}

    double eval(const Vector& x) const override {
        check_dim(x.dim());
        const std::size_t d = metric_.d;
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < d; ++j) row += metric_.entries[i * d + j] * x[j];
            s += x[i] * row;
        }
        return 0.5 * s;
    }

    DualVector grad(const Vector& x) const override {
        check_dim(x.dim());
        const std::size_t d = metric_.d;
        std::vector<double> g(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g[i] += metric_.entries[i * d + j] * x[j];
        return DualVector(std::move(g));
    }

    Vector grad_conjugate(const DualVector& u) const override {
        check_dim(u.dim());
        const std::size_t d = metric_.d;
        std::vector<double> x(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) x[i] += inv_[i * d + j] * u[j];
        return Vector(std::move(x));
    }

    bool in_dom(const Vector& x) const override { return x.dim() == metric_.d; }
    bool in_int_dom(const Vector& x) const override { return x.dim() == metric_.d; }
    std::size_t dim() const override { return metric_.d; }
    KernelKind kind() const override { return KernelKind::quadratic; }
    const KernelCapabilities& capabilities() const override { return caps_; }
    SampleBox sample_box() const override {
        return {std::vector<double>(metric_.d, -3.0), std::vector<double>(metric_.d, 3.0)};
    }
    std::string describe() const override { return "quadratic metric (dense)"; }
    const QuadraticMetric* metric() const override { return &metric_; }

private:
    void check_dim(std::size_t n) const { detail::check_same_dim(n, metric_.d, "quadratic"); }

    QuadraticMetric metric_;
    std::vector<double> inv_;
    KernelCapabilities caps_;
};

class ProductKernel final : public KernelImpl {
public:
    ProductKernel(LegendreKernel z_part, LegendreKernel xi_part, double offset)
        : z_(std::move(z_part)), xi_(std::move(xi_part)), offset_(offset) {
        d1_ = z_.dim();
        d2_ = xi_.dim();
        caps_.supercoercive = z_.capabilities().supercoercive && xi_.capabilities().supercoercive;
        caps_.uniformly_convex =
            z_.capabilities().uniformly_convex && xi_.capabilities().uniformly_convex;
        caps_.cofinite = z_.capabilities().cofinite && xi_.capabilities().cofinite;
        if (z_.capabilities().strong_convexity && xi_.capabilities().strong_convexity)
            caps_.strong_convexity = std::min(*z_.capabilities().strong_convexity,
                                              *xi_.capabilities().strong_convexity);
        if (z_.capabilities().symmetry_ratio && xi_.capabilities().symmetry_ratio)
            caps_.symmetry_ratio =
                std::min(*z_.capabilities().symmetry_ratio, *xi_.capabilities().symmetry_ratio);
        caps_.grad_stable_on_bounded = z_.capabilities().grad_stable_on_bounded &&
                                       xi_.capabilities().grad_stable_on_bounded;
        if (z_.sections() && xi_.sections()) {
            sections_.emplace();
            sections_->reserve(d1_ + d2_);
            sections_->insert(sections_->end(), z_.sections()->begin(), z_.sections()->end());
            sections_->insert(sections_->end(), xi_.sections()->begin(), xi_.sections()->end());
        }
    }

    double eval(const Vector& x) const override {
        auto [h, t] = split(x);
        double a = z_.eval(h);
        double b = xi_.eval(t);
        if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
        return a + b + offset_;
    }

    DualVector grad(const Vector& x) const override {
        auto [h, t] = split(x);
        return join(z_.grad(h), xi_.grad(t));
    }

    Vector grad_conjugate(const DualVector& u) const override {
        detail::check_same_dim(u.dim(), d1_ + d2_, "product kernel");
        std::vector<double> hu(u.coords().begin(), u.coords().begin() + d1_);
        std::vector<double> tu(u.coords().begin() + d1_, u.coords().end());
        Vector zh = z_.grad_conjugate(DualVector(std::move(hu)));
        Vector zt = xi_.grad_conjugate(DualVector(std::move(tu)));
        std::vector<double> r(zh.coords());
        r.insert(r.end(), zt.coords().begin(), zt.coords().end());
        return Vector(std::move(r));
    }

    bool in_dom(const Vector& x) const override {
        if (x.dim() != d1_ + d2_) return false;
        auto [h, t] = split(x);
        return z_.in_dom(h) && xi_.in_dom(t);
    }

    bool in_int_dom(const Vector& x) const override {
        if (x.dim() != d1_ + d2_) return false;
        auto [h, t] = split(x);
        return z_.in_int_dom(h) && xi_.in_int_dom(t);
    }

    std::size_t dim() const override { return d1_ + d2_; }
    KernelKind kind() const override { return KernelKind::product; }
    const KernelCapabilities& capabilities() const override { return caps_; }

    SampleBox sample_box() const override {
        SampleBox a = z_.sample_box();
        SampleBox b = xi_.sample_box();
        a.lo.insert(a.lo.end(), b.lo.begin(), b.lo.end());
        a.hi.insert(a.hi.end(), b.hi.begin(), b.hi.end());
        return a;
    }

    std::string describe() const override {
        return "product[" + z_.describe() + " x " + xi_.describe() + "]";
    }

    const std::vector<ScalarSection>* sections() const override {
        return sections_ ? &*sections_ : nullptr;
    }

private:
    std::pair<Vector, Vector> split(const Vector& x) const {
        detail::check_same_dim(x.dim(), d1_ + d2_, "product kernel");
        std::vector<double> h(x.coords().begin(), x.coords().begin() + d1_);
        std::vector<double> t(x.coords().begin() + d1_, x.coords().end());
        return {Vector(std::move(h)), Vector(std::move(t))};
    }

    static DualVector join(const DualVector& a, const DualVector& b) {
        std::vector<double> r(a.coords());
        r.insert(r.end(), b.coords().begin(), b.coords().end());
        return DualVector(std::move(r));
    }

    LegendreKernel z_, xi_;
    double offset_;
    std::size_t d1_ = 0, d2_ = 0;
    KernelCapabilities caps_;
    std::optional<std::vector<ScalarSection>> sections_;
};

}  // namespace

// ---------------------------------------------------------------------------

double bregman(const LegendreKernel& f, const Vector& x, const Vector& y) {
    if (!f.in_int_dom(y)) return kInf;
    double fx = f.eval(x);
    if (!std::isfinite(fx)) return kInf;
    double fy = f.eval(y);
    return fx - fy - pair(f.grad(y), sub(x, y));
}

LegendreKernel make_quadratic_metric(std::size_t d, const std::vector<double>& dense) {
    if (d == 0 || dense.size() != d * d)
        throw ContractViolation("make_quadratic_metric: bad dimensions");
    Eigen::MatrixXd U(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) U(i, j) = dense[i * d + j];
    if (!U.isApprox(U.transpose(), 1e-12))
        throw ContractViolation("make_quadratic_metric: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(U);
    double lmin = es.eigenvalues().minCoeff();
    double lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 0.0)
        throw ContractViolation("make_quadratic_metric: matrix not positive definite");

    bool diagonal = true;
    for (std::size_t i = 0; i < d && diagonal; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j && dense[i * d + j] != 0.0) {
                diagonal = false;
                break;
            }
    if (diagonal) {
        std::vector<double> diag(d);
        for (std::size_t i = 0; i < d; ++i) diag[i] = dense[i * d + i];
        return make_quadratic_metric_diag(diag);
    }

    QuadraticMetric metric{d, false, dense, lmin, lmax};
    Eigen::MatrixXd inv = U.llt().solve(Eigen::MatrixXd::Identity(d, d));
    std::vector<double> inv_rm(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) inv_rm[i * d + j] = inv(i, j);

    KernelCapabilities caps;
    caps.supercoercive = true;
    caps.uniformly_convex = true;
    caps.strong_convexity = lmin;
    caps.cofinite = true;
    caps.symmetry_ratio = lmin / lmax;
    caps.grad_stable_on_bounded = true;
    return LegendreKernel(
        std::make_shared<DenseQuadraticKernel>(std::move(metric), std::move(inv_rm), caps));
}

LegendreKernel make_quadratic_metric_diag(const std::vector<double>& diag) {
    if (diag.empty()) throw ContractViolation("make_quadratic_metric_diag: empty diagonal");
    double lmin = kInf, lmax = 0.0;
    std::vector<ScalarSection> sections(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        if (diag[k] <= 0.0)
            throw ContractViolation("make_quadratic_metric_diag: entries must be positive");
        sections[k] = {ScalarSection::Kind::quadratic, diag[k], 2.0};
        lmin = std::min(lmin, diag[k]);
        lmax = std::max(lmax, diag[k]);
    }
    KernelCapabilities caps;
    caps.supercoercive = true;
    caps.uniformly_convex = true;
    caps.strong_convexity = lmin;
    caps.cofinite = true;
    caps.symmetry_ratio = lmin / lmax;
    caps.grad_stable_on_bounded = true;
    QuadraticMetric metric{diag.size(), true, diag, lmin, lmax};
    SampleBox box{std::vector<double>(diag.size(), -3.0), std::vector<double>(diag.size(), 3.0)};
    return LegendreKernel(std::make_shared<DiagQuadraticKernel>(
        std::move(sections), caps, std::move(box), "quadratic metric (diagonal)",
        std::move(metric)));
}

LegendreKernel make_quadratic_identity(std::size_t d, double scale) {
    return make_quadratic_metric_diag(std::vector<double>(d, scale));
}

LegendreKernel make_boltzmann_shannon(std::size_t d) {
    if (d == 0) throw ContractViolation("make_boltzmann_shannon: d must be >= 1");
    std::vector<ScalarSection> sections(d);
    for (auto& s : sections) s = {ScalarSection::Kind::entropy, 1.0, 2.0};
    KernelCapabilities caps;
    caps.supercoercive = true;
    caps.cofinite = true;
    caps.grad_stable_on_bounded = true;
    SampleBox box{std::vector<double>(d, 0.05), std::vector<double>(d, 4.0)};
    return LegendreKernel(std::make_shared<SeparableKernel>(
        std::move(sections), KernelKind::entropy, caps, std::move(box), "Boltzmann-Shannon entropy"));
}

LegendreKernel make_power_norm(double p, double chi, std::size_t d) {
    if (!(p > 1.0)) throw ContractViolation("make_power_norm: p must be > 1");
    if (!(chi >= 1.0)) throw ContractViolation("make_power_norm: chi must be >= 1");
    if (d == 0) throw ContractViolation("make_power_norm: d must be >= 1");
    std::vector<ScalarSection> sections(d);
    for (auto& s : sections) s = {ScalarSection::Kind::power, chi, p};
    KernelCapabilities caps;
    caps.supercoercive = true;
    caps.cofinite = true;
    caps.uniformly_convex = p >= 2.0;
    if (p == 2.0) {
        caps.strong_convexity = chi;
        caps.symmetry_ratio = 1.0;
    }
    caps.grad_stable_on_bounded = true;
    std::ostringstream name;
    name << "power norm (p=" << p << ", chi=" << chi << ")";
    SampleBox box{std::vector<double>(d, -3.0), std::vector<double>(d, 3.0)};
    return LegendreKernel(std::make_shared<SeparableKernel>(
        std::move(sections), KernelKind::power_norm, caps, std::move(box), name.str()));
}

LegendreKernel make_product_kernel(LegendreKernel z_part, LegendreKernel xi_part, double offset) {
    if (!z_part.valid() || !xi_part.valid())
        throw ContractViolation("make_product_kernel: parts must be valid kernels");
    return LegendreKernel(
        std::make_shared<ProductKernel>(std::move(z_part), std::move(xi_part), offset));
}

}  // namespace bfb
