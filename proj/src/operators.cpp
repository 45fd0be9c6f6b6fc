#include "bfb/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

namespace bfb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_psd_symmetric_part(std::size_t d, const std::vector<double>& m, const char* who) {
    Eigen::MatrixXd M(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) M(i, j) = m[i * d + j];
    Eigen::MatrixXd S = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw ContractViolation(std::string(who) + ": symmetric part is not PSD, map not monotone");
}
}  // namespace

// ---------------------------------------------------------------------------
// MonotoneMap builders

namespace {

class LinearMonotoneMap final : public MonotoneMapImpl {
public:
    LinearMonotoneMap(std::size_t d, std::vector<double> dense, std::vector<double> diag,
                      std::vector<double> offset, std::string name)
        : d_(d),
          dense_(std::move(dense)),
          diag_(std::move(diag)),
          offset_(std::move(offset)),
          name_(std::move(name)) {
        if (!dense_.empty()) {
            symmetric_ = true;
            for (std::size_t i = 0; i < d_ && symmetric_; ++i)
                for (std::size_t j = i + 1; j < d_; ++j)
                    if (dense_[i * d_ + j] != dense_[j * d_ + i]) {
                        symmetric_ = false;
                        break;
                    }
        } else {
            symmetric_ = true;
        }
    }

    DualVector eval(const Vector& x) const override {
        detail::check_same_dim(x.dim(), d_, name_.c_str());
        std::vector<double> r(d_, 0.0);
        if (!diag_.empty()) {
            for (std::size_t k = 0; k < d_; ++k) r[k] = diag_[k] * x[k];
        } else {
            for (std::size_t i = 0; i < d_; ++i)
                for (std::size_t j = 0; j < d_; ++j) r[i] += dense_[i * d_ + j] * x[j];
        }
        if (!offset_.empty())
            for (std::size_t k = 0; k < d_; ++k) r[k] += offset_[k];
        return DualVector(std::move(r));
    }

    bool in_dom_interior(const Vector& x) const override { return x.dim() == d_; }
    bool has_potential() const override { return symmetric_; }

    double potential(const Vector& x) const override {
        if (!symmetric_) throw ContractViolation(name_ + ": no potential (matrix not symmetric)");
        double s = 0.0;
        if (!diag_.empty()) {
            for (std::size_t k = 0; k < d_; ++k) s += 0.5 * diag_[k] * x[k] * x[k];
        } else {
            for (std::size_t i = 0; i < d_; ++i)
                for (std::size_t j = 0; j < d_; ++j) s += 0.5 * x[i] * dense_[i * d_ + j] * x[j];
        }
        if (!offset_.empty())
            for (std::size_t k = 0; k < d_; ++k) s += offset_[k] * x[k];
        return s;
    }

    std::size_t dim() const override { return d_; }

    bool is_zero() const override {
        if (!offset_.empty())
            for (double v : offset_)
                if (v != 0.0) return false;
        if (!diag_.empty()) {
            for (double v : diag_)
                if (v != 0.0) return false;
            return true;
        }
        for (double v : dense_)
            if (v != 0.0) return false;
        return true;
    }

    std::string describe() const override { return name_; }

private:
    std::size_t d_;
    std::vector<double> dense_;  // row-major, empty when diagonal form used
    std::vector<double> diag_;
    std::vector<double> offset_;
    bool symmetric_;
    std::string name_;
};

class ConstantMonotoneMap final : public MonotoneMapImpl {
public:
    explicit ConstantMonotoneMap(DualVector c) : c_(std::move(c)) {}
    DualVector eval(const Vector& x) const override {
        detail::check_same_dim(x.dim(), c_.dim(), "constant map");
        return c_;
    }
    bool in_dom_interior(const Vector& x) const override { return x.dim() == c_.dim(); }
    bool has_potential() const override { return true; }
    double potential(const Vector& x) const override { return pair(c_, x); }
    std::size_t dim() const override { return c_.dim(); }
    bool is_zero() const override { return norm2(c_) == 0.0; }
    std::string describe() const override { return "constant " + to_string(c_); }

private:
    DualVector c_;
};

class PowerGradientMap final : public MonotoneMapImpl {
public:
    PowerGradientMap(std::size_t d, double q, double scale, std::size_t lo, std::size_t hi)
        : d_(d), q_(q), scale_(scale), lo_(lo), hi_(hi) {}

    DualVector eval(const Vector& x) const override {
        detail::check_same_dim(x.dim(), d_, "power gradient map");
        std::vector<double> r(d_, 0.0);
        for (std::size_t k = lo_; k < hi_; ++k) {
            double v = x[k];
            if (v != 0.0) {
                double s = v > 0.0 ? 1.0 : -1.0;
                r[k] = scale_ * q_ * s * std::pow(std::fabs(v), q_ - 1.0);
            }
        }
        return DualVector(std::move(r));
    }

    bool in_dom_interior(const Vector& x) const override { return x.dim() == d_; }
    bool has_potential() const override { return true; }
    double potential(const Vector& x) const override {
        double s = 0.0;
        for (std::size_t k = lo_; k < hi_; ++k) s += std::pow(std::fabs(x[k]), q_);
        return scale_ * s;
    }
    std::size_t dim() const override { return d_; }
    std::string describe() const override {
        std::ostringstream os;
        os << "grad of " << scale_ << "*sum|x_k|^" << q_ << " on [" << lo_ << "," << hi_ << ")";
        return os.str();
    }

private:
    std::size_t d_;
    double q_, scale_;
    std::size_t lo_, hi_;
};

}  // namespace

MonotoneMap zero_map(std::size_t d) {
    return MonotoneMap(std::make_shared<LinearMonotoneMap>(
        d, std::vector<double>{}, std::vector<double>(d, 0.0), std::vector<double>{}, "zero map"));
}

MonotoneMap linear_map_dense(std::size_t d, const std::vector<double>& m,
                             const std::vector<double>& offset) {
    if (m.size() != d * d) throw ContractViolation("linear_map_dense: bad matrix size");
    if (!offset.empty() && offset.size() != d)
        throw ContractViolation("linear_map_dense: bad offset size");
    require_psd_symmetric_part(d, m, "linear_map_dense");
    return MonotoneMap(std::make_shared<LinearMonotoneMap>(d, m, std::vector<double>{}, offset,
                                                           "linear map (dense)"));
}

MonotoneMap linear_map_diag(const std::vector<double>& diag, const std::vector<double>& offset) {
    for (double v : diag)
        if (v < 0.0) throw ContractViolation("linear_map_diag: negative diagonal, not monotone");
    if (!offset.empty() && offset.size() != diag.size())
        throw ContractViolation("linear_map_diag: bad offset size");
    return MonotoneMap(std::make_shared<LinearMonotoneMap>(diag.size(), std::vector<double>{},
                                                           diag, offset, "linear map (diagonal)"));
}

MonotoneMap scaled_identity_map(std::size_t d, double s) {
    return linear_map_diag(std::vector<double>(d, s));
}

MonotoneMap translation_gradient_map(const Vector& b, double s) {
    std::vector<double> offset(b.dim());
    for (std::size_t k = 0; k < b.dim(); ++k) offset[k] = -s * b[k];
    return linear_map_diag(std::vector<double>(b.dim(), s), offset);
}

MonotoneMap constant_map(const DualVector& c) {
    return MonotoneMap(std::make_shared<ConstantMonotoneMap>(c));
}

MonotoneMap power_gradient_map(std::size_t d, double q, double scale, std::size_t active_lo,
                               std::size_t active_hi) {
    if (!(q > 1.0)) throw ContractViolation("power_gradient_map: q must be > 1");
    if (scale < 0.0) throw ContractViolation("power_gradient_map: scale must be >= 0");
    if (active_hi > d || active_lo > active_hi)
        throw ContractViolation("power_gradient_map: bad active range");
    return MonotoneMap(std::make_shared<PowerGradientMap>(d, q, scale, active_lo, active_hi));
}

MonotoneMap rotation2d_map() {
    return MonotoneMap(std::make_shared<LinearMonotoneMap>(
        2, std::vector<double>{0.0, -1.0, 1.0, 0.0}, std::vector<double>{}, std::vector<double>{},
        "rotation by 90 degrees"));
}

// ---------------------------------------------------------------------------
// ScalarGraph

double ScalarGraph::lower(double xi) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::constant:
            return a;
        case Kind::linear:
            return a * xi + b;
        case Kind::abs_subdiff:
            if (xi < 0.0) return -a;
            if (xi > 0.0) return a;
            return -a;
        case Kind::interval_cone:
            if (xi <= a) return -kInf;  // left endpoint (or below; dom-checked elsewhere)
            return 0.0;
        case Kind::sign_shift:
            if (xi < a) return -1.0;
            if (xi > a) return 1.0;
            return -1.0;
        case Kind::cubic:
            return a * xi * xi * xi;
    }
    return 0.0;
}

double ScalarGraph::upper(double xi) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::constant:
            return a;
        case Kind::linear:
            return a * xi + b;
        case Kind::abs_subdiff:
            if (xi < 0.0) return -a;
            if (xi > 0.0) return a;
            return a;
        case Kind::interval_cone:
            if (xi >= b) return kInf;
            return 0.0;
        case Kind::sign_shift:
            if (xi < a) return -1.0;
            if (xi > a) return 1.0;
            return 1.0;
        case Kind::cubic:
            return a * xi * xi * xi;
    }
    return 0.0;
}

bool ScalarGraph::in_dom(double xi) const {
    switch (kind) {
        case Kind::interval_cone:
            return xi >= a && xi <= b;
        case Kind::sign_shift:
            return xi > 0.0;
        default:
            return true;
    }
}

double ScalarGraph::dom_lo() const {
    switch (kind) {
        case Kind::interval_cone:
            return a;
        case Kind::sign_shift:
            return 0.0;
        default:
            return -kInf;
    }
}

double ScalarGraph::dom_hi() const { return kind == Kind::interval_cone ? b : kInf; }

double ScalarGraph::selection(double xi) const {
    double lo = lower(xi), hi = upper(xi);
    if (lo <= 0.0 && 0.0 <= hi) return 0.0;
    return std::fabs(lo) <= std::fabs(hi) ? lo : hi;
}

double ScalarGraph::slope(double xi) const {
    switch (kind) {
        case Kind::linear:
            return a;
        case Kind::cubic:
            return 3.0 * a * xi * xi;
        default:
            return 0.0;
    }
}

std::vector<double> ScalarGraph::breakpoints() const {
    switch (kind) {
        case Kind::abs_subdiff:
            return {0.0};
        case Kind::sign_shift:
            return {a};
        case Kind::interval_cone: {
            std::vector<double> b;
            if (std::isfinite(a)) b.push_back(a);
            if (std::isfinite(this->b)) b.push_back(this->b);
            return b;
        }
        default:
            return {};
    }
}

double ScalarGraph::dist(double xi, double s) const {
    if (!in_dom(xi)) return kInf;
    double lo = lower(xi), hi = upper(xi);
    if (s < lo) return lo - s;
    if (s > hi) return s - hi;
    return 0.0;
}

// ---------------------------------------------------------------------------
// SetValuedMap

class SetValuedMapImpl {
public:
    MapKind kind = MapKind::separable;
    std::size_t d = 0;
    std::vector<ScalarGraph> graphs;      // separable
    std::vector<double> matrix;           // linear, row-major
    std::vector<double> offset;           // linear
    std::vector<double> normal;           // halfspace
    double h_offset = 0.0;                // halfspace
    bool euclidean_projection = false;    // simplex
    std::string name;
};

MapKind SetValuedMap::kind() const { return impl_->kind; }
std::size_t SetValuedMap::dim() const { return impl_->d; }

bool SetValuedMap::is_zero() const {
    if (impl_->kind != MapKind::separable) return false;
    for (const auto& g : impl_->graphs)
        if (g.kind != ScalarGraph::Kind::zero) return false;
    return true;
}

bool SetValuedMap::in_dom(const Vector& x, double tol) const {
    if (x.dim() != impl_->d) return false;
    switch (impl_->kind) {
        case MapKind::separable:
            for (std::size_t k = 0; k < impl_->d; ++k)
                if (!impl_->graphs[k].in_dom(x[k])) return false;
            return true;
        case MapKind::linear:
            return true;
        case MapKind::simplex_cone: {
            double s = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) {
                if (x[k] < -tol) return false;
                s += x[k];
            }
            return std::fabs(s - 1.0) <= tol;
        }
        case MapKind::halfspace_cone: {
            double s = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) s += impl_->normal[k] * x[k];
            return s <= impl_->h_offset + tol;
        }
    }
    return false;
}

double SetValuedMap::graph_distance(const Vector& x, const DualVector& xstar) const {
    detail::check_same_dim(x.dim(), impl_->d, "graph_distance");
    detail::check_same_dim(xstar.dim(), impl_->d, "graph_distance");
    switch (impl_->kind) {
        case MapKind::separable: {
            double s2 = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) {
                double dk = impl_->graphs[k].dist(x[k], xstar[k]);
                if (!std::isfinite(dk)) return kInf;
                s2 += dk * dk;
            }
            return std::sqrt(s2);
        }
        case MapKind::linear: {
            double s2 = 0.0;
            for (std::size_t i = 0; i < impl_->d; ++i) {
                double row = impl_->offset.empty() ? 0.0 : impl_->offset[i];
                for (std::size_t j = 0; j < impl_->d; ++j)
                    row += impl_->matrix[i * impl_->d + j] * x[j];
                s2 += (xstar[i] - row) * (xstar[i] - row);
            }
            return std::sqrt(s2);
        }
        case MapKind::simplex_cone: {
            if (!in_dom(x)) return kInf;
            // at strictly positive simplex points the cone is {t * ones};
            // components at (numerical) zero may exceed the common multiplier
            double t = -kInf;
            for (std::size_t k = 0; k < impl_->d; ++k)
                if (x[k] > 1e-12) t = std::max(t, xstar[k]);
            double s2 = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) {
                double dev = x[k] > 1e-12 ? xstar[k] - t : std::max(0.0, xstar[k] - t);
                s2 += dev * dev;
            }
            return std::sqrt(s2);
        }
        case MapKind::halfspace_cone: {
            if (!in_dom(x)) return kInf;
            double ax = 0.0, n2 = 0.0, an = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) {
                ax += impl_->normal[k] * x[k];
                n2 += impl_->normal[k] * impl_->normal[k];
                an += impl_->normal[k] * xstar[k];
            }
            bool boundary = std::fabs(ax - impl_->h_offset) <= 1e-9 * (1.0 + std::fabs(impl_->h_offset));
            double t = boundary ? std::max(0.0, an / n2) : 0.0;
            double s2 = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) {
                double dev = xstar[k] - t * impl_->normal[k];
                s2 += dev * dev;
            }
            return std::sqrt(s2);
        }
    }
    return kInf;
}

bool SetValuedMap::member(const Vector& x, const DualVector& xstar, double tol) const {
    return graph_distance(x, xstar) <= tol;
}

DualVector SetValuedMap::selection(const Vector& x) const {
    detail::check_same_dim(x.dim(), impl_->d, "selection");
    switch (impl_->kind) {
        case MapKind::separable: {
            std::vector<double> r(impl_->d);
            for (std::size_t k = 0; k < impl_->d; ++k) {
                if (!impl_->graphs[k].in_dom(x[k]))
                    throw DomainViolation("selection: point outside dom A");
                r[k] = impl_->graphs[k].selection(x[k]);
            }
            return DualVector(std::move(r));
        }
        case MapKind::linear: {
            std::vector<double> r(impl_->d, 0.0);
            for (std::size_t i = 0; i < impl_->d; ++i) {
                double row = impl_->offset.empty() ? 0.0 : impl_->offset[i];
                for (std::size_t j = 0; j < impl_->d; ++j)
                    row += impl_->matrix[i * impl_->d + j] * x[j];
                r[i] = row;
            }
            return DualVector(std::move(r));
        }
        case MapKind::simplex_cone:
        case MapKind::halfspace_cone:
            if (!in_dom(x)) throw DomainViolation("selection: point outside dom A");
            return DualVector(impl_->d, 0.0);
    }
    throw ContractViolation("selection: unknown map kind");
}

std::pair<Vector, DualVector> SetValuedMap::draw_graph(Rng& rng, const SampleBox& region) const {
    switch (impl_->kind) {
        case MapKind::separable: {
            std::vector<double> x(impl_->d), s(impl_->d);
            for (std::size_t k = 0; k < impl_->d; ++k) {
                const ScalarGraph& g = impl_->graphs[k];
                double lo = std::max(region.lo[k], g.dom_lo());
                double hi = std::min(region.hi[k], g.dom_hi());
                if (g.kind == ScalarGraph::Kind::sign_shift) lo = std::max(lo, 1e-6);
                if (!(lo <= hi)) throw SamplingError("draw_graph: region misses dom A");
                x[k] = rng.uniform(lo, hi);
                double vlo = std::max(g.lower(x[k]), -1e3);
                double vhi = std::min(g.upper(x[k]), 1e3);
                s[k] = rng.uniform(vlo, vhi);
            }
            return {Vector(std::move(x)), DualVector(std::move(s))};
        }
        case MapKind::linear: {
            std::vector<double> x(impl_->d);
            for (std::size_t k = 0; k < impl_->d; ++k) x[k] = rng.uniform(region.lo[k], region.hi[k]);
            Vector vx(std::move(x));
            return {vx, selection(vx)};
        }
        case MapKind::simplex_cone: {
            std::vector<double> x(impl_->d);
            double s = 0.0;
            for (auto& v : x) {
                v = rng.uniform(1e-3, 1.0);
                s += v;
            }
            for (auto& v : x) v /= s;
            double t = rng.uniform(-10.0, 10.0);
            return {Vector(std::move(x)), DualVector(std::vector<double>(impl_->d, t))};
        }
        case MapKind::halfspace_cone: {
            // draw an interior point, then project half of them to the boundary
            std::vector<double> x(impl_->d);
            for (std::size_t k = 0; k < impl_->d; ++k) x[k] = rng.uniform(region.lo[k], region.hi[k]);
            double ax = 0.0, n2 = 0.0;
            for (std::size_t k = 0; k < impl_->d; ++k) {
                ax += impl_->normal[k] * x[k];
                n2 += impl_->normal[k] * impl_->normal[k];
            }
            bool boundary = rng.uniform() < 0.5;
            double shift = boundary ? (impl_->h_offset - ax) / n2 : std::min(0.0, (impl_->h_offset - ax) / n2);
            for (std::size_t k = 0; k < impl_->d; ++k) x[k] += shift * impl_->normal[k];
            std::vector<double> s(impl_->d, 0.0);
            if (boundary) {
                double t = rng.uniform(0.0, 10.0);
                for (std::size_t k = 0; k < impl_->d; ++k) s[k] = t * impl_->normal[k];
            }
            return {Vector(std::move(x)), DualVector(std::move(s))};
        }
    }
    throw ContractViolation("draw_graph: unknown map kind");
}

const std::vector<ScalarGraph>* SetValuedMap::graphs() const {
    return impl_->kind == MapKind::separable ? &impl_->graphs : nullptr;
}

const std::vector<double>* SetValuedMap::linear_matrix() const {
    return impl_->kind == MapKind::linear ? &impl_->matrix : nullptr;
}

const std::vector<double>* SetValuedMap::linear_offset() const {
    return impl_->kind == MapKind::linear ? &impl_->offset : nullptr;
}

bool SetValuedMap::euclidean_projection_allowed() const { return impl_->euclidean_projection; }

const std::vector<double>* SetValuedMap::halfspace_normal() const {
    return impl_->kind == MapKind::halfspace_cone ? &impl_->normal : nullptr;
}

double SetValuedMap::halfspace_offset() const { return impl_->h_offset; }

std::string SetValuedMap::describe() const { return impl_->name; }

namespace {
SetValuedMap make_map(std::shared_ptr<SetValuedMapImpl> impl) {
    return SetValuedMap(std::shared_ptr<const SetValuedMapImpl>(std::move(impl)));
}
}  // namespace

SetValuedMap zero_set_map(std::size_t d) {
    auto impl = std::make_shared<SetValuedMapImpl>();
    impl->kind = MapKind::separable;
    impl->d = d;
    impl->graphs.assign(d, ScalarGraph{ScalarGraph::Kind::zero, 0.0, 0.0});
    impl->name = "zero";
    return make_map(impl);
}

SetValuedMap constant_set_map(const DualVector& c) {
    auto impl = std::make_shared<SetValuedMapImpl>();
    impl->kind = MapKind::separable;
    impl->d = c.dim();
    impl->graphs.resize(c.dim());
    for (std::size_t k = 0; k < c.dim(); ++k)
        impl->graphs[k] = {ScalarGraph::Kind::constant, c[k], 0.0};
    impl->name = "constant " + to_string(c);
    return make_map(impl);
}

SetValuedMap separable_map(std::vector<ScalarGraph> graphs) {
    if (graphs.empty()) throw ContractViolation("separable_map: no graphs");
    for (const auto& g : graphs) {
        if (g.kind == ScalarGraph::Kind::linear && g.a < 0.0)
            throw ContractViolation("separable_map: linear graph with negative slope");
        if (g.kind == ScalarGraph::Kind::abs_subdiff && g.a <= 0.0)
            throw ContractViolation("separable_map: abs_subdiff needs lambda > 0");
        if (g.kind == ScalarGraph::Kind::interval_cone && !(g.a <= g.b))
            throw ContractViolation("separable_map: empty interval");
        if (g.kind == ScalarGraph::Kind::cubic && g.a < 0.0)
            throw ContractViolation("separable_map: cubic graph with negative scale");
        if (g.kind == ScalarGraph::Kind::sign_shift && !(g.a > 0.0))
            throw ContractViolation("separable_map: sign_shift center must be > 0");
    }
    auto impl = std::make_shared<SetValuedMapImpl>();
    impl->kind = MapKind::separable;
    impl->d = graphs.size();
    impl->graphs = std::move(graphs);
    impl->name = "separable (" + std::to_string(impl->d) + " graphs)";
    return make_map(impl);
}

SetValuedMap l1_subdifferential(std::size_t d, double lambda) {
    if (!(lambda > 0.0)) throw ContractViolation("l1_subdifferential: lambda must be > 0");
    std::vector<ScalarGraph> graphs(d, ScalarGraph{ScalarGraph::Kind::abs_subdiff, lambda, 0.0});
    SetValuedMap m = separable_map(std::move(graphs));
    return m;
}

SetValuedMap box_normal_cone(const std::vector<double>& lo, const std::vector<double>& hi) {
    if (lo.size() != hi.size() || lo.empty()) throw ContractViolation("box_normal_cone: bad bounds");
    std::vector<ScalarGraph> graphs(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!(lo[k] <= hi[k])) throw ContractViolation("box_normal_cone: empty box");
        graphs[k] = {ScalarGraph::Kind::interval_cone, lo[k], hi[k]};
    }
    return separable_map(std::move(graphs));
}

SetValuedMap linear_set_map(std::size_t d, const std::vector<double>& m,
                            const std::vector<double>& offset) {
    if (m.size() != d * d) throw ContractViolation("linear_set_map: bad matrix size");
    if (!offset.empty() && offset.size() != d)
        throw ContractViolation("linear_set_map: bad offset size");
    require_psd_symmetric_part(d, m, "linear_set_map");
    auto impl = std::make_shared<SetValuedMapImpl>();
    impl->kind = MapKind::linear;
    impl->d = d;
    impl->matrix = m;
    impl->offset = offset;
    impl->name = "linear graph";
    return make_map(impl);
}

SetValuedMap simplex_normal_cone(std::size_t d, bool euclidean_projection) {
    if (d < 2) throw ContractViolation("simplex_normal_cone: d must be >= 2");
    auto impl = std::make_shared<SetValuedMapImpl>();
    impl->kind = MapKind::simplex_cone;
    impl->d = d;
    impl->euclidean_projection = euclidean_projection;
    impl->name = "normal cone of the unit simplex";
    return make_map(impl);
}

SetValuedMap halfspace_normal_cone(const std::vector<double>& normal, double offset) {
    if (normal.empty()) throw ContractViolation("halfspace_normal_cone: empty normal");
    double n2 = 0.0;
    for (double v : normal) n2 += v * v;
    if (n2 == 0.0) throw ContractViolation("halfspace_normal_cone: zero normal");
    auto impl = std::make_shared<SetValuedMapImpl>();
    impl->kind = MapKind::halfspace_cone;
    impl->d = normal.size();
    impl->normal = normal;
    impl->h_offset = offset;
    impl->name = "normal cone of a halfspace";
    return make_map(impl);
}

}  // namespace bfb
