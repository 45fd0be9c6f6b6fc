#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "bfb/errors.hpp"

namespace bfb {

// Points of the primal space R^d and of its dual are kept as distinct types:
// kernel gradients and operator values live in the dual, iterates in the
// primal. Coordinates are validated to be finite at construction and after
// every arithmetic operation that could overflow.

namespace detail {
void require_finite(const std::vector<double>& coords, const char* what);
}

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0) : c_(dim, fill) {
        detail::require_finite(c_, "Vector");
    }
    Vector(std::initializer_list<double> coords) : c_(coords) {
        detail::require_finite(c_, "Vector");
    }
    explicit Vector(std::vector<double> coords) : c_(std::move(coords)) {
        detail::require_finite(c_, "Vector");
    }

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t k) const { return c_[k]; }
    const std::vector<double>& coords() const { return c_; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> c_;
};

class DualVector {
public:
    DualVector() = default;
    explicit DualVector(std::size_t dim, double fill = 0.0) : c_(dim, fill) {
        detail::require_finite(c_, "DualVector");
    }
    DualVector(std::initializer_list<double> coords) : c_(coords) {
        detail::require_finite(c_, "DualVector");
    }
    explicit DualVector(std::vector<double> coords) : c_(std::move(coords)) {
        detail::require_finite(c_, "DualVector");
    }

    std::size_t dim() const { return c_.size(); }
    double operator[](std::size_t k) const { return c_[k]; }
    const std::vector<double>& coords() const { return c_; }

    friend bool operator==(const DualVector&, const DualVector&) = default;

private:
    std::vector<double> c_;
};

// Canonical pairing <x*, x>.
double pair(const DualVector& xstar, const Vector& x);

// (sum |x_k|^p)^(1/p); p = inf gives max |x_k|. Requires p >= 1.
double norm_p(const Vector& x, double p);
double norm_p(const DualVector& x, double p);
inline constexpr double p_inf = std::numeric_limits<double>::infinity();

// Euclidean norm shorthands used throughout the solver.
double norm2(const Vector& x);
double norm2(const DualVector& x);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(double s, const Vector& a);
DualVector add(const DualVector& a, const DualVector& b);
DualVector sub(const DualVector& a, const DualVector& b);
DualVector scale(double s, const DualVector& a);

// axpy-style update kept out of the hot loop API on purpose; the solver works
// on whole-vector expressions which are clearer at these problem sizes.

std::string to_string(const Vector& x);
std::string to_string(const DualVector& x);

namespace detail {
inline void check_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b)
        throw ContractViolation(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
}
}  // namespace detail

}  // namespace bfb
