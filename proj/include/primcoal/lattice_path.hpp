#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace primcoal {

/// Maps index k and raw value v to (k * dx, v * dy).
struct Rescaling {
    double dx = 1.0;
    double dy = 1.0;
};

/// Integer-valued path f(0..L), linearly interpolated between integer points
/// when evaluated in rescaled coordinates.
struct LatticePath {
    std::vector<std::int64_t> values;
    Rescaling scale{};

    std::size_t size() const { return values.size(); }
    std::int64_t operator[](std::size_t k) const { return values[k]; }

    /// Rescaled value at rescaled abscissa x (clamped to the path's range).
    double at(double x) const;
};

/// Psi f(k) = f(k) - min_{j<=k} f(j).
std::vector<std::int64_t> psi(std::span<const std::int64_t> f);
std::vector<double> psi(std::span<const double> f);
LatticePath psi(const LatticePath& f);

std::vector<std::int64_t> running_min(std::span<const std::int64_t> f);
std::vector<double> running_min(std::span<const double> f);

/// CSV with columns index,value,psi_value,running_min. With `rescaled` the
/// first column is x = k * dx and values are multiplied by dy.
void write_trace_csv(std::ostream& os, const LatticePath& f, bool rescaled = false);
void write_trace_csv(std::ostream& os, std::span<const double> f, double dx);

} // namespace primcoal
