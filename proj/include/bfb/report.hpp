#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bfb/vectors.hpp"

namespace bfb {

// Outcome of a sampled falsifier. Checks pass when the worst signed slack
// stays above -tol; a failing check carries the witness that broke it.
struct Witness {
    std::vector<Vector> points;
    std::size_t sample_index = 0;
    std::string label;
};

struct CheckReport {
    std::string name;
    bool pass = true;
    double worst_slack = 0.0;  // most negative margin observed
    double tol = 1e-9;
    std::size_t samples = 0;
    std::optional<Witness> witness;
    std::string detail;
};

}  // namespace bfb
