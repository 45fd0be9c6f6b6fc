#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bfb/kernels.hpp"
#include "bfb/report.hpp"

namespace bfb {

// chi_n factors of a varying power-norm family. Sequences are either
// 1 + coeff * ratio^n or an explicit list continued by its last value.
struct ChiSequence {
    enum class Form { one_plus_geometric, list };
    Form form = Form::one_plus_geometric;
    double coeff = 1.0;
    double ratio = 0.5;
    std::vector<double> values;

    double at(std::size_t n) const;
};

// Diagonal metric sequence U_n for variable-metric families.
struct MetricSequence {
    enum class Form { scaled_identity_geometric, diag_list };
    Form form = Form::scaled_identity_geometric;
    std::size_t d = 1;
    double coeff = 1.0;
    double ratio = 0.5;
    std::vector<std::vector<double>> diags;

    std::vector<double> diag_at(std::size_t n) const;
};

// The family (f_n) together with its class constant alpha (D_{f_n} >= alpha D_f)
// and the summable slack sequence eta_n of D_{f_{n+1}} <= (1+eta_n) D_{f_n}.
// Built-in rules satisfy both inequalities by construction; check_schedule is
// the randomized falsifier for declared ones.
class KernelSchedule {
public:
    KernelSchedule() = default;

    static KernelSchedule constant(LegendreKernel f, double alpha = 1.0);

    // f_n = power norm with factor chi_n on R^d. Base is the chi=1 kernel.
    static KernelSchedule power_chi(double p, std::size_t d, ChiSequence chi, double alpha = 1.0,
                                    std::optional<std::vector<double>> declared_eta = std::nullopt);

    // f_n(z, xi) = (chi_n/p) sum |z_k|^p + entropy(xi) + offset on R^{d1+1};
    // base drops the offset and uses chi = 1.
    static KernelSchedule product_chi(double p, std::size_t d1, ChiSequence chi, double offset,
                                      double alpha = 1.0);

    // f_n(x) = <x, U_n x>/2 with diagonal U_n; base is the alpha-scaled identity.
    static KernelSchedule metric(MetricSequence seq, double alpha,
                                 std::optional<std::vector<double>> declared_eta = std::nullopt);

    bool valid() const { return impl_ != nullptr; }
    const LegendreKernel& base() const { return impl_->base; }
    double alpha() const { return impl_->alpha; }
    LegendreKernel kernel_at(std::size_t n) const { return impl_->at(n); }
    double eta_at(std::size_t n) const { return impl_->eta(n); }
    double eta_sum_bound() const { return impl_->eta_sum_bound; }
    const std::optional<LegendreKernel>& limit_kernel() const { return impl_->limit; }
    bool varying() const { return impl_->varying; }
    std::string describe() const { return impl_->name; }

private:
    struct Impl {
        LegendreKernel base;
        double alpha = 1.0;
        std::function<LegendreKernel(std::size_t)> at;
        std::function<double(std::size_t)> eta;
        double eta_sum_bound = 0.0;
        std::optional<LegendreKernel> limit;
        bool varying = false;
        std::string name;
    };
    explicit KernelSchedule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Samples interior pairs and evaluates both schedule inequalities for
// n < n_max; reports the worst signed slack and the pair that produced it.
CheckReport check_schedule(const KernelSchedule& s, std::size_t n_max, std::size_t samples,
                           std::uint64_t seed);

}  // namespace bfb
