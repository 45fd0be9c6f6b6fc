#pragma once

#include <cmath>
#include <vector>

#include "bfb/kernels.hpp"
#include "bfb/rng.hpp"

namespace bfb::testing {

// central finite differences of a scalar field, step h = 1e-5 (1 + ||x||)
inline DualVector fd_gradient(const LegendreKernel& f, const Vector& x) {
    double h = 1e-5 * (1.0 + norm2(x));
    std::vector<double> g(x.dim());
    for (std::size_t k = 0; k < x.dim(); ++k) {
        std::vector<double> up = x.coords(), dn = x.coords();
        up[k] += h;
        dn[k] -= h;
        g[k] = (f.eval(Vector(up)) - f.eval(Vector(dn))) / (2.0 * h);
    }
    return DualVector(std::move(g));
}

// draws from the kernel's sample box with a margin that keeps finite
// differences accurate (away from gradient kinks and domain walls)
inline Vector sample_fd_safe(const LegendreKernel& f, Rng& rng, double margin = 0.2) {
    SampleBox box = f.sample_box();
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<double> c(box.lo.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            double lo = box.lo[k], hi = box.hi[k];
            double v = rng.uniform(lo, hi);
            if (lo < 0.0 && std::fabs(v) < margin) v = v < 0.0 ? -margin : margin;
            if (lo >= 0.0) v = std::max(v, lo + margin * 0.5);
            c[k] = v;
        }
        Vector x(std::move(c));
        if (f.in_int_dom(x)) return x;
    }
    throw SamplingError("sample_fd_safe: kernel box rejected everything");
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / (1.0 + std::fabs(want));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

}  // namespace bfb::testing
