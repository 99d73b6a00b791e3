#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "primcoal/common.hpp"

namespace primcoal {

/// Non-increasing sequence of non-negative masses with an implicit zero tail.
class MassVector {
public:
    MassVector() = default;

    /// Sorts `masses` into non-increasing order. Throws on negative or
    /// non-finite entries.
    explicit MassVector(std::vector<double> masses) : masses_(std::move(masses)) {
        for (double x : masses_) require(std::isfinite(x) && x >= 0.0, "MassVector: masses must be finite and >= 0");
        std::sort(masses_.begin(), masses_.end(), std::greater<>());
    }

    /// i-th largest mass (0-based); zero past the stored prefix.
    double operator[](std::size_t i) const { return i < masses_.size() ? masses_[i] : 0.0; }
    std::size_t size() const { return masses_.size(); }
    std::span<const double> values() const { return masses_; }

    double l1() const {
        double s = 0.0;
        for (double x : masses_) s += x;
        return s;
    }
    double l2() const { return std::sqrt(sum_squares()); }
    double sum_squares() const {
        double s = 0.0;
        for (double x : masses_) s += x * x;
        return s;
    }

    /// sum_{i<k} x_i^2
    double partial_sum_squares(std::size_t k) const {
        double s = 0.0;
        for (std::size_t i = 0; i < std::min(k, masses_.size()); ++i) s += masses_[i] * masses_[i];
        return s;
    }

private:
    std::vector<double> masses_;
};

} // namespace primcoal
