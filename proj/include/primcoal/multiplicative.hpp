#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "primcoal/filtration.hpp"
#include "primcoal/graph.hpp"
#include "primcoal/lattice_path.hpp"
#include "primcoal/mass_vector.hpp"
#include "primcoal/prim.hpp"

namespace primcoal {

/// p_lambda(n) = 1/n + lambda / n^{4/3}. Throws if the result leaves [0,1].
double p_lambda(std::size_t n, double lambda);

/// Optional time-homogeneous clock -ln(1 - p).
double homogeneous_time(double p);

struct CriticalWindowParams {
    std::size_t n = 0;
    double lambda = 0.0;

    double p() const { return p_lambda(n, lambda); }
};

/// Triangular array U*_i(k), 1 <= i < k <= n, of uniforms driving the Prim
/// walk. Ranks are 1-based here to match the walk index (Z(0..n)).
class UniformField {
public:
    static constexpr std::size_t max_full_n = 4096;

    UniformField(std::size_t n, Rng& rng);
    /// Rows i = 1..n-1 concatenated, row i holding U*_i(i+1..n).
    UniformField(std::size_t n, std::vector<double> entries);

    std::size_t n() const { return n_; }
    double star(std::size_t i, std::size_t k) const { return data_[row_offset(i) + (k - i - 1)]; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + row_offset(i), n_ - i};
    }
    /// P_i(j) = U*_{i+1}(i+1+j), i >= 0, j >= 1.
    double planar(std::size_t i, std::size_t j) const { return star(i + 1, i + 1 + j); }

private:
    std::size_t row_offset(std::size_t i) const { return (i - 1) * n_ - (i - 1) * i / 2; }

    std::size_t n_;
    std::vector<double> data_;
};

/// Neighbourhood-size walk Z and its companion Y(i) = sum_{j<=i}(X(j) - 1).
struct ZWalk {
    double t = 0.0;
    LatticePath z;                       // Z(0..n)
    LatticePath y;                       // Y(0..n)
    std::vector<std::uint32_t> increments; // X(1..n), stored 0-based
};

/// Z(i) = Y(i) - min_{j<i} Y(j) + 1 for i >= 1 and Z(0) = 0: Z is Y reflected
/// at its strict running minimum, zeros of Z being the new minima of Y.
bool z_reflects_y(const LatticePath& z, const LatticePath& y);

/// Walk built from the field by
///   X(i) = #{k : U*_i(k) <= t, i + (Z(i-1) - 1)_+ < k <= n}
///   Z(i) = Z(i-1) + X(i) - 1{Z(i-1) > 0}.
/// Verifies z_reflects_y before returning (throws Error otherwise).
ZWalk z_walk(double t, const UniformField& field);
ZWalk z_walk(const CriticalWindowParams& params, const UniformField& field);

/// Component read off the zero gaps of Z: Prim ranks first..last (1-based).
struct WalkComponent {
    std::size_t first = 0;
    std::size_t last = 0;
    std::uint64_t surplus = 0;
    std::size_t size() const { return last - first + 1; }
};

std::vector<WalkComponent> walk_components(const LatticePath& z);

/// Surplus per component: #{(i', j) : i' in [first-1, last-1], 1 <= j < Z(i'),
/// P_{i'}(j) <= t}.
std::vector<WalkComponent> surplus_field(const ZWalk& walk, const UniformField& field);

/// Same law as z_walk + surplus_field without storing the field:
/// X(i) ~ Bin(n - i - (Z(i-1)-1)_+, t), per-step surplus ~ Bin((Z(i-1)-1)_+, t).
struct SparseWalk {
    ZWalk walk;
    std::vector<WalkComponent> components;
};
SparseWalk z_walk_sparse(std::size_t n, double t, Rng& rng);

/// Field U* recovered from a weighted complete graph and its Prim order:
/// row i lists W(u_i, .) over ranks k > i sorted by the time each rank joins
/// the neighbourhood of {u_1..u_{i-1}}.
UniformField reorder_field_from_graph(const WeightedGraph& complete, const PrimOrdering& ord);

/// Sizes divided by n^{2/3}, sorted.
MassVector gamma_times(std::size_t n, std::span<const std::size_t> sizes);
MassVector gamma_times(std::size_t n, const std::vector<WalkComponent>& components);

/// y_x^{n,(lambda)}(x) = Y(n^{2/3} x) / n^{1/3}.
LatticePath y_times(const ZWalk& walk);

/// Coupled G(n, p) over a grid: one sparse edge sample at the largest p,
/// weights uniform on (0, p_max), union-find filtration.
struct GraphSnapshot {
    double lambda = 0.0;
    double p = 0.0;
    std::vector<Block> components;      // first/last are min/max vertex labels
    std::vector<std::uint32_t> labels;  // component root per vertex (if kept)
};

struct GraphRoute {
    std::size_t n = 0;
    double p_max = 0.0;
    std::size_t edges_sampled = 0;
    std::vector<GraphSnapshot> snapshots; // in input grid order
};

GraphRoute graph_route(std::size_t n, std::span<const double> lambdas, Rng& rng, bool keep_labels = false);
/// Grid given directly in edge probabilities.
GraphRoute graph_route_p(std::size_t n, std::span<const double> ps, Rng& rng, bool keep_labels = false);

/// Element of U_down: masses (l2) and aligned surpluses.
struct AugmentedState {
    MassVector masses;
    std::vector<std::uint64_t> surpluses;

    /// Sorts (mass, surplus) pairs by decreasing mass, ties kept in input order.
    static AugmentedState from_pairs(std::vector<std::pair<double, std::uint64_t>> pairs);
    std::uint64_t surplus(std::size_t i) const { return i < surpluses.size() ? surpluses[i] : 0; }
};

AugmentedState augmented_state(std::size_t n, const std::vector<WalkComponent>& components);
AugmentedState augmented_state(std::size_t n, const std::vector<Block>& components);

/// (sum |x_i - x'_i|^2)^{1/2} + sum |x_i s_i - x'_i s'_i|
double d_U(const AugmentedState& a, const AugmentedState& b);

} // namespace primcoal
