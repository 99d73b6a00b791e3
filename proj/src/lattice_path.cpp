#include "primcoal/lattice_path.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "primcoal/format.hpp"

namespace primcoal {

namespace {

template <class T>
std::vector<T> running_min_impl(std::span<const T> f) {
    std::vector<T> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = k == 0 ? f[0] : std::min(out[k - 1], f[k]);
    return out;
}

template <class T>
std::vector<T> psi_impl(std::span<const T> f) {
    std::vector<T> out(f.size());
    T m{};
    for (std::size_t k = 0; k < f.size(); ++k) {
        m = k == 0 ? f[0] : std::min(m, f[k]);
        out[k] = f[k] - m;
    }
    return out;
}

} // namespace

double LatticePath::at(double x) const {
    if (values.empty()) return 0.0;
    const double pos = std::clamp(x / scale.dx, 0.0, static_cast<double>(values.size() - 1));
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k + 1 >= values.size()) return static_cast<double>(values.back()) * scale.dy;
    const double frac = pos - static_cast<double>(k);
    const double v = static_cast<double>(values[k]) * (1.0 - frac) + static_cast<double>(values[k + 1]) * frac;
    return v * scale.dy;
}

std::vector<std::int64_t> psi(std::span<const std::int64_t> f) { return psi_impl(f); }
std::vector<double> psi(std::span<const double> f) { return psi_impl(f); }

LatticePath psi(const LatticePath& f) { return {psi(std::span<const std::int64_t>(f.values)), f.scale}; }

std::vector<std::int64_t> running_min(std::span<const std::int64_t> f) { return running_min_impl(f); }
std::vector<double> running_min(std::span<const double> f) { return running_min_impl(f); }

void write_trace_csv(std::ostream& os, const LatticePath& f, bool rescaled) {
    const auto ps = psi(std::span<const std::int64_t>(f.values));
    const auto rm = running_min(std::span<const std::int64_t>(f.values));
    os << (rescaled ? "x" : "index") << ",value,psi_value,running_min\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (rescaled) {
            const double dy = f.scale.dy;
            os << format_double(static_cast<double>(k) * f.scale.dx) << ',' << format_double(static_cast<double>(f.values[k]) * dy)
               << ',' << format_double(static_cast<double>(ps[k]) * dy) << ','
               << format_double(static_cast<double>(rm[k]) * dy) << '\n';
        } else {
            os << k << ',' << f.values[k] << ',' << ps[k] << ',' << rm[k] << '\n';
        }
    }
}

void write_trace_csv(std::ostream& os, std::span<const double> f, double dx) {
    const auto ps = psi(f);
    const auto rm = running_min(f);
    os << "x,value,psi_value,running_min\n";
    for (std::size_t k = 0; k < f.size(); ++k)
        os << format_double(static_cast<double>(k) * dx) << ',' << format_double(f[k]) << ',' << format_double(ps[k])
           << ',' << format_double(rm[k]) << '\n';
}

} // namespace primcoal
