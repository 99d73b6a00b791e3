#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "primcoal/excursions.hpp"
#include "primcoal/mass_vector.hpp"

namespace primcoal {

/// Real-valued path sampled at x_k = k * dx, k = 0..L.
struct GridPath {
    enum class Drift { parabolic, excursion };

    double dx = 1e-3;
    double lambda = 0.0;
    Drift drift = Drift::parabolic;
    std::vector<double> values;

    double horizon() const { return dx * static_cast<double>(values.empty() ? 0 : values.size() - 1); }
    /// Linear interpolation, clamped to [0, horizon].
    double at(double x) const;
};

/// Default horizon max(10, 2 lambda + 10).
double default_parabolic_horizon(double lambda);

/// B(x) + lambda x - x^2/2 on [0, horizon] with Gaussian increments.
GridPath simulate_parabolic(double lambda, double horizon, double dx, Rng& rng);

/// Standard Brownian excursion of unit length (Vervaat transform of a
/// Brownian bridge at its argmin), minus lambda x. 1/dx must be an integer.
GridPath simulate_excursion(double lambda, double dx, Rng& rng);

/// Excursions of Psi(path) above zero, in index units.
ExcursionSet limit_excursions(const GridPath& path);

/// The k largest excursion lengths of Psi(path) in x units (k = 0: all).
MassVector limit_gamma(const GridPath& path, std::size_t k = 0);

/// Unit-rate Poisson points on [0, horizon] x [0, height].
struct PlanarPoissonPoints {
    double horizon = 0.0;
    double height = 0.0;
    std::vector<std::pair<double, double>> points; // (x, w), sorted by x
};

PlanarPoissonPoints sample_poisson_points(double horizon, double height, Rng& rng);

/// Union of two independent point sets on the same window (intensity adds).
PlanarPoissonPoints superpose(const PlanarPoissonPoints& a, const PlanarPoissonPoints& b);

/// Height cap covering Psi(path): its maximum plus `margin`.
double poisson_height_cap(const GridPath& path, double margin = 1.0);

/// For the k longest excursions of Psi(path) (longest first, ties by left
/// end), the number of points (x, w) with x in the interval and
/// w <= Psi(path)(x). k = 0: all excursions.
std::vector<std::uint64_t> limit_surplus(const GridPath& path, const PlanarPoissonPoints& pts, std::size_t k = 0);

/// Area under Psi(path) over each of the k longest excursions (same order).
std::vector<double> limit_excursion_areas(const GridPath& path, std::size_t k = 0);

/// Symmetric coalescence kernel K(x, y).
struct Kernel {
    std::string name;
    std::function<double(double, double)> rate;

    static Kernel multiplicative();
    static Kernel additive();
    static Kernel constant();
};

struct MLEvent {
    double time = 0.0;
    double mass_a = 0.0;
    double mass_b = 0.0;
};

/// Marcus-Lushnikov trajectory: exact Gillespie simulation up to t_end.
struct MLTrajectory {
    std::vector<double> initial;
    std::vector<MLEvent> events;
    std::vector<double> final_masses; // sorted non-increasing

    /// Masses at time s (s <= t_end), sorted non-increasing.
    std::vector<double> state_at(double s) const;
};

MLTrajectory marcus_lushnikov(std::vector<double> masses, const Kernel& kernel, double t_end, Rng& rng);

} // namespace primcoal
