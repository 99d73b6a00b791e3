#include "primcoal/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "primcoal/lattice_path.hpp"

namespace primcoal {

namespace {

std::size_t grid_steps(double length, double dx) {
    require(dx > 0.0, "grid: dx must be positive");
    require(length > 0.0, "grid: horizon must be positive");
    const double steps = std::round(length / dx);
    require(std::abs(steps * dx - length) <= 1e-9 * length, "grid: length must be a multiple of dx");
    return static_cast<std::size_t>(steps);
}

/// Excursion intervals of Psi(path) sorted longest first, ties by left end.
std::vector<Excursion> ranked_excursions(const GridPath& path, std::size_t k) {
    auto ex = limit_excursions(path).intervals;
    std::stable_sort(ex.begin(), ex.end(), [](const Excursion& a, const Excursion& b) { return a.length() > b.length(); });
    if (k > 0 && ex.size() > k) ex.resize(k);
    return ex;
}

} // namespace

double GridPath::at(double x) const {
    if (values.empty()) return 0.0;
    const double pos = std::clamp(x / dx, 0.0, static_cast<double>(values.size() - 1));
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(k);
    return values[k] * (1.0 - frac) + values[k + 1] * frac;
}

double default_parabolic_horizon(double lambda) { return std::max(10.0, 2.0 * lambda + 10.0); }

GridPath simulate_parabolic(double lambda, double horizon, double dx, Rng& rng) {
    const std::size_t steps = grid_steps(horizon, dx);
    GridPath path;
    path.dx = dx;
    path.lambda = lambda;
    path.drift = GridPath::Drift::parabolic;
    path.values.resize(steps + 1);
    std::normal_distribution<double> gauss(0.0, std::sqrt(dx));
    double b = 0.0;
    path.values[0] = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        b += gauss(rng);
        const double x = static_cast<double>(k) * dx;
        path.values[k] = b + lambda * x - 0.5 * x * x;
    }
    return path;
}

GridPath simulate_excursion(double lambda, double dx, Rng& rng) {
    const std::size_t steps = grid_steps(1.0, dx);
    std::vector<double> bm(steps + 1, 0.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(dx));
    for (std::size_t k = 1; k <= steps; ++k) bm[k] = bm[k - 1] + gauss(rng);
    const double end = bm[steps];
    const double nd = static_cast<double>(steps);
    for (std::size_t k = 0; k <= steps; ++k) bm[k] -= static_cast<double>(k) / nd * end;

    const auto argmin = static_cast<std::size_t>(std::min_element(bm.begin(), bm.end() - 1) - bm.begin());
    GridPath path;
    path.dx = dx;
    path.lambda = lambda;
    path.drift = GridPath::Drift::excursion;
    path.values.resize(steps + 1);
    for (std::size_t k = 0; k < steps; ++k) path.values[k] = bm[(argmin + k) % steps] - bm[argmin];
    path.values[steps] = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) path.values[k] -= lambda * static_cast<double>(k) * dx;
    return path;
}

ExcursionSet limit_excursions(const GridPath& path) {
    const auto reflected = psi(std::span<const double>(path.values));
    return excursions_above_zero(std::span<const double>(reflected), ExcursionConvention::discrete());
}

MassVector limit_gamma(const GridPath& path, std::size_t k) {
    std::vector<double> lengths;
    for (const auto& e : ranked_excursions(path, k)) lengths.push_back(static_cast<double>(e.length()) * path.dx);
    return MassVector(std::move(lengths));
}

PlanarPoissonPoints sample_poisson_points(double horizon, double height, Rng& rng) {
    require(horizon >= 0.0 && height >= 0.0, "sample_poisson_points: window must be non-negative");
    PlanarPoissonPoints pts{horizon, height, {}};
    std::poisson_distribution<long long> count(horizon * height);
    const auto m = horizon * height > 0.0 ? count(rng) : 0;
    pts.points.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) pts.points.emplace_back(horizon * uniform_open(rng), height * uniform_open(rng));
    std::sort(pts.points.begin(), pts.points.end());
    return pts;
}

PlanarPoissonPoints superpose(const PlanarPoissonPoints& a, const PlanarPoissonPoints& b) {
    require(a.horizon == b.horizon && a.height == b.height, "superpose: windows differ");
    PlanarPoissonPoints out{a.horizon, a.height, a.points};
    out.points.insert(out.points.end(), b.points.begin(), b.points.end());
    std::sort(out.points.begin(), out.points.end());
    return out;
}

double poisson_height_cap(const GridPath& path, double margin) {
    const auto reflected = psi(std::span<const double>(path.values));
    return (reflected.empty() ? 0.0 : *std::max_element(reflected.begin(), reflected.end())) + margin;
}

std::vector<std::uint64_t> limit_surplus(const GridPath& path, const PlanarPoissonPoints& pts, std::size_t k) {
    const auto reflected = psi(std::span<const double>(path.values));
    GridPath psi_path = path;
    psi_path.values = reflected;
    std::vector<std::uint64_t> counts;
    for (const auto& e : ranked_excursions(path, k)) {
        const double lo = static_cast<double>(e.begin) * path.dx;
        const double hi = static_cast<double>(e.end) * path.dx;
        auto it = std::lower_bound(pts.points.begin(), pts.points.end(), std::make_pair(lo, -1.0));
        std::uint64_t c = 0;
        for (; it != pts.points.end() && it->first < hi; ++it)
            if (it->first > lo && it->second <= psi_path.at(it->first)) ++c;
        counts.push_back(c);
    }
    return counts;
}

std::vector<double> limit_excursion_areas(const GridPath& path, std::size_t k) {
    const auto reflected = psi(std::span<const double>(path.values));
    std::vector<double> areas;
    for (const auto& e : ranked_excursions(path, k)) {
        double a = 0.0;
        for (std::size_t i = e.begin; i < e.end; ++i) a += 0.5 * (reflected[i] + reflected[i + 1]) * path.dx;
        areas.push_back(a);
    }
    return areas;
}

Kernel Kernel::multiplicative() {
    return {"multiplicative", [](double x, double y) { return x * y; }};
}
Kernel Kernel::additive() {
    return {"additive", [](double x, double y) { return x + y; }};
}
Kernel Kernel::constant() {
    return {"constant", [](double, double) { return 1.0; }};
}

std::vector<double> MLTrajectory::state_at(double s) const {
    std::vector<double> cur = initial;
    for (const auto& ev : events) {
        if (ev.time > s) break;
        auto ia = std::find(cur.begin(), cur.end(), ev.mass_a);
        const double a = *ia;
        cur.erase(ia);
        auto ib = std::find(cur.begin(), cur.end(), ev.mass_b);
        const double b = *ib;
        cur.erase(ib);
        cur.push_back(a + b);
    }
    std::sort(cur.begin(), cur.end(), std::greater<>());
    return cur;
}

MLTrajectory marcus_lushnikov(std::vector<double> masses, const Kernel& kernel, double t_end, Rng& rng) {
    require(t_end >= 0.0, "marcus_lushnikov: t_end must be >= 0");
    for (double x : masses) require(x > 0.0 && std::isfinite(x), "marcus_lushnikov: masses must be positive");
    MLTrajectory traj;
    traj.initial = masses;
    std::vector<double> cur = std::move(masses);
    std::vector<double> rates;
    std::exponential_distribution<double> expo(1.0);
    double time = 0.0;
    while (cur.size() > 1) {
        const std::size_t m = cur.size();
        rates.clear();
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double r = kernel.rate(cur[i], cur[j]);
                rates.push_back(r);
                total += r;
            }
        if (total <= 0.0) break;
        time += expo(rng) / total;
        if (time > t_end) break;
        double target = uniform_open(rng) * total;
        std::size_t bi = 0, bj = 1, idx = 0;
        bool found = false;
        for (std::size_t i = 0; i < m && !found; ++i)
            for (std::size_t j = i + 1; j < m; ++j, ++idx) {
                bi = i;
                bj = j;
                target -= rates[idx];
                if (target <= 0.0) {
                    found = true;
                    break;
                }
            }
        traj.events.push_back({time, cur[bi], cur[bj]});
        const double merged = cur[bi] + cur[bj];
        cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(bj));
        cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(bi));
        cur.push_back(merged);
    }
    std::sort(cur.begin(), cur.end(), std::greater<>());
    traj.final_masses = std::move(cur);
    return traj;
}

} // namespace primcoal
