#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bfb/kernels.hpp"
#include "bfb/rng.hpp"
#include "bfb/vectors.hpp"

namespace bfb {

// ---------------------------------------------------------------------------
// Single-valued operator B, evaluable on the interior of its domain. When B
// is the gradient of a potential psi, the potential is carried along so the
// descent-type checkers can form D_psi.

class MonotoneMapImpl {
public:
    virtual ~MonotoneMapImpl() = default;
    virtual DualVector eval(const Vector& x) const = 0;
    virtual bool in_dom_interior(const Vector& x) const = 0;
    virtual bool has_potential() const = 0;
    virtual double potential(const Vector& x) const = 0;  // psi(x); throws if absent
    virtual std::size_t dim() const = 0;
    virtual bool is_zero() const { return false; }
    virtual std::string describe() const = 0;
};

class MonotoneMap {
public:
    MonotoneMap() = default;
    explicit MonotoneMap(std::shared_ptr<const MonotoneMapImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return impl_ != nullptr; }
    DualVector eval(const Vector& x) const { return impl_->eval(x); }
    bool in_dom_interior(const Vector& x) const { return impl_->in_dom_interior(x); }
    bool has_potential() const { return impl_->has_potential(); }
    double potential(const Vector& x) const { return impl_->potential(x); }
    std::size_t dim() const { return impl_->dim(); }
    bool is_zero() const { return impl_->is_zero(); }
    std::string describe() const { return impl_->describe(); }

private:
    std::shared_ptr<const MonotoneMapImpl> impl_;
};

MonotoneMap zero_map(std::size_t d);
// B(x) = M x + c. M may be given dense (row-major) or diagonal; the symmetric
// part must be positive semidefinite. Potential available when M is symmetric.
MonotoneMap linear_map_dense(std::size_t d, const std::vector<double>& m_row_major,
                             const std::vector<double>& offset = {});
MonotoneMap linear_map_diag(const std::vector<double>& diag, const std::vector<double>& offset = {});
MonotoneMap scaled_identity_map(std::size_t d, double s);
// B(x) = s (x - b), psi = (s/2) ||x - b||^2.
MonotoneMap translation_gradient_map(const Vector& b, double s = 1.0);
// B(x) = c, psi = <c, x>.
MonotoneMap constant_map(const DualVector& c);
// psi(x) = scale * sum_{k in [lo, hi)} |x_k|^q; B = grad psi (zero off-block).
MonotoneMap power_gradient_map(std::size_t d, double q, double scale, std::size_t active_lo,
                               std::size_t active_hi);
MonotoneMap rotation2d_map();  // 90 degree rotation; monotone, not cocoercive

// ---------------------------------------------------------------------------
// One coordinate of a separable maximally monotone graph.
struct ScalarGraph {
    enum class Kind {
        zero,           // {0} on R
        constant,       // {a} on R
        linear,         // {a xi + b}, a >= 0, on R
        abs_subdiff,    // a * Sign(xi), a > 0  (subdifferential of a|.|)
        interval_cone,  // normal cone of [a, b]
        sign_shift,     // Sign(xi - a) restricted to xi > 0
        cubic           // {a xi^3}, a >= 0
    };
    Kind kind = Kind::zero;
    double a = 0.0;
    double b = 0.0;

    double lower(double xi) const;  // inf of the value set (may be -inf)
    double upper(double xi) const;  // sup of the value set (may be +inf)
    bool in_dom(double xi) const;
    double dom_lo() const;
    double dom_hi() const;
    double selection(double xi) const;  // minimal-norm member
    double slope(double xi) const;      // derivative of the single-valued part
    double dist(double xi, double s) const;
    // kinks where the graph is multi-valued; root finders must probe these
    std::vector<double> breakpoints() const;
};

// ---------------------------------------------------------------------------
// Set-valued operator A with enough structure for resolvents and membership
// tests: coordinate-wise graphs, a linear map, or a normal cone.

enum class MapKind { separable, linear, simplex_cone, halfspace_cone };

class SetValuedMapImpl;

class SetValuedMap {
public:
    SetValuedMap() = default;
    explicit SetValuedMap(std::shared_ptr<const SetValuedMapImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return impl_ != nullptr; }
    MapKind kind() const;
    std::size_t dim() const;
    bool is_zero() const;
    bool in_dom(const Vector& x, double tol = 1e-9) const;
    // dist(xstar, A x); +inf when x is outside dom A
    double graph_distance(const Vector& x, const DualVector& xstar) const;
    bool member(const Vector& x, const DualVector& xstar, double tol) const;
    // some canonical element of A x (minimal norm for the built-ins)
    DualVector selection(const Vector& x) const;
    // structural graph sample inside the given box; used by monotonicity tests
    std::pair<Vector, DualVector> draw_graph(Rng& rng, const SampleBox& region) const;
    const std::vector<ScalarGraph>* graphs() const;  // non-null for separable maps
    // linear maps: row-major matrix and offset (offset may be empty)
    const std::vector<double>* linear_matrix() const;
    const std::vector<double>* linear_offset() const;
    // simplex cone only: whether the Euclidean projection form was selected
    bool euclidean_projection_allowed() const;
    // halfspace cone data
    const std::vector<double>* halfspace_normal() const;
    double halfspace_offset() const;
    std::string describe() const;

private:
    std::shared_ptr<const SetValuedMapImpl> impl_;
};

SetValuedMap zero_set_map(std::size_t d);
SetValuedMap constant_set_map(const DualVector& c);
SetValuedMap separable_map(std::vector<ScalarGraph> graphs);
// subdifferential of lambda ||.||_1
SetValuedMap l1_subdifferential(std::size_t d, double lambda);
// normal cone of the box prod [lo_k, hi_k] (+-inf entries allowed)
SetValuedMap box_normal_cone(const std::vector<double>& lo, const std::vector<double>& hi);
// A x = M x + c as a set-valued graph (sym part must be PSD)
SetValuedMap linear_set_map(std::size_t d, const std::vector<double>& m_row_major,
                            const std::vector<double>& offset = {});
SetValuedMap simplex_normal_cone(std::size_t d, bool euclidean_projection = false);
SetValuedMap halfspace_normal_cone(const std::vector<double>& normal, double offset);

}  // namespace bfb
