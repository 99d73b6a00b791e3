#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "primcoal/mass_vector.hpp"

namespace primcoal {

/// Discretisation rules for excursion extraction on sampled paths.
///
/// alpha: minimal excursion length in index units; an excursion starting at
///        a ends at b = min{k >= a + alpha : f(k) = 0}.
/// beta:  level drop closing an excursion above the running minimum: from a,
///        b = min{k >= a + alpha : f(k) <= f(a) - beta}. beta = 0 selects the
///        continuum rule (b is the next time f sits at its running minimum).
struct ExcursionConvention {
    std::size_t alpha = 1;
    double beta = 1.0;

    /// One step, one unit of space: exact for skip-free integer walks.
    static constexpr ExcursionConvention discrete() { return {1, 1.0}; }
    static constexpr ExcursionConvention continuum() { return {1, 0.0}; }
};

struct Excursion {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t length() const { return end - begin; }
    friend bool operator==(const Excursion&, const Excursion&) = default;
};

/// Complete excursions in left-to-right order; an unfinished trailing
/// excursion is not reported.
struct ExcursionSet {
    std::vector<Excursion> intervals;
    ExcursionConvention convention{};

    std::vector<std::size_t> lengths() const;
    std::vector<double> rescaled_lengths(double dx) const;
    std::size_t size() const { return intervals.size(); }
};

/// Excursions of a non-negative path with f(0) = 0 away from zero.
ExcursionSet excursions_above_zero(std::span<const std::int64_t> f,
                                   ExcursionConvention conv = ExcursionConvention::discrete());
ExcursionSet excursions_above_zero(std::span<const double> f,
                                   ExcursionConvention conv = ExcursionConvention::discrete());

/// Excursions of f (f(0) = 0) above its running minimum.
ExcursionSet excursions_above_min(std::span<const std::int64_t> f,
                                  ExcursionConvention conv = ExcursionConvention::discrete());
ExcursionSet excursions_above_min(std::span<const double> f,
                                  ExcursionConvention conv = ExcursionConvention::discrete());

/// Excursion lengths divided by `normaliser`, sorted non-increasing.
MassVector sorted_lengths(const ExcursionSet& e, double normaliser);

} // namespace primcoal
