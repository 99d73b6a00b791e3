#include "primcoal/excursions.hpp"

#include <algorithm>

namespace primcoal {

namespace {

void check_convention(const ExcursionConvention& conv) {
    require(conv.alpha >= 1, "excursion convention: alpha must be >= 1");
    require(conv.beta >= 0.0, "excursion convention: beta must be >= 0");
}

template <class T>
ExcursionSet above_zero(std::span<const T> f, ExcursionConvention conv) {
    check_convention(conv);
    ExcursionSet out{{}, conv};
    if (f.empty()) return out;
    require(f[0] == T{0}, "excursions_above_zero: path must start at 0");
    for (T v : f) require(v >= T{0}, "excursions_above_zero: path must be non-negative");
    std::size_t a = 0;
    for (std::size_t k = conv.alpha; k < f.size(); ++k) {
        if (k >= a + conv.alpha && f[k] == T{0}) {
            out.intervals.push_back({a, k});
            a = k;
        }
    }
    return out;
}

template <class T>
ExcursionSet above_min(std::span<const T> f, ExcursionConvention conv) {
    check_convention(conv);
    ExcursionSet out{{}, conv};
    if (f.empty()) return out;
    require(f[0] == T{0}, "excursions_above_min: path must start at 0");
    std::size_t a = 0;
    T running = f[0];
    for (std::size_t k = 1; k < f.size(); ++k) {
        bool closes;
        if (conv.beta == 0.0) {
            closes = f[k] <= running;
        } else {
            closes = static_cast<double>(f[k]) <= static_cast<double>(f[a]) - conv.beta;
        }
        running = std::min(running, f[k]);
        if (closes && k >= a + conv.alpha) {
            out.intervals.push_back({a, k});
            a = k;
        }
    }
    return out;
}

} // namespace

std::vector<std::size_t> ExcursionSet::lengths() const {
    std::vector<std::size_t> out;
    out.reserve(intervals.size());
    for (const auto& e : intervals) out.push_back(e.length());
    return out;
}

std::vector<double> ExcursionSet::rescaled_lengths(double dx) const {
    std::vector<double> out;
    out.reserve(intervals.size());
    for (const auto& e : intervals) out.push_back(static_cast<double>(e.length()) * dx);
    return out;
}

ExcursionSet excursions_above_zero(std::span<const std::int64_t> f, ExcursionConvention conv) {
    return above_zero(f, conv);
}
ExcursionSet excursions_above_zero(std::span<const double> f, ExcursionConvention conv) {
    return above_zero(f, conv);
}
ExcursionSet excursions_above_min(std::span<const std::int64_t> f, ExcursionConvention conv) {
    return above_min(f, conv);
}
ExcursionSet excursions_above_min(std::span<const double> f, ExcursionConvention conv) {
    return above_min(f, conv);
}

MassVector sorted_lengths(const ExcursionSet& e, double normaliser) {
    require(normaliser > 0.0, "sorted_lengths: normaliser must be positive");
    std::vector<double> v;
    v.reserve(e.size());
    for (const auto& ex : e.intervals) v.push_back(static_cast<double>(ex.length()) / normaliser);
    return MassVector(std::move(v));
}

} // namespace primcoal
