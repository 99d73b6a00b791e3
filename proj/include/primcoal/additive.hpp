#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "primcoal/graph.hpp"
#include "primcoal/lattice_path.hpp"
#include "primcoal/mass_vector.hpp"
#include "primcoal/prim.hpp"

namespace primcoal {

/// Increments X(1..n) of a Poisson(1) walk conditioned to first hit -1 at
/// time n. Stored 0-based: increments[i] = X(i+1).
struct ConditionedWalk {
    std::vector<std::uint32_t> increments;

    std::size_t size() const { return increments.size(); }
    /// Y(m) = sum_{j<=m} (X(j) - 1), m = 0..n.
    LatticePath path() const;
};

/// True iff sum X = n - 1 and the partial sums stay >= 0 before time n.
bool is_first_passage(std::span<const std::uint32_t> increments);

/// Rotates a sequence with sum n - 1 to its unique first-passage rotation.
std::vector<std::uint32_t> cycle_lemma_rotation(std::span<const std::uint32_t> increments);

/// Exact sampler: Multinomial(n-1; n equal cells) then the cycle-lemma rotation.
ConditionedWalk sample_conditioned_walk(std::size_t n, Rng& rng);

/// Conditioned walk plus one stored uniform per unit of increment, so that
/// thinning at different t is monotonically coupled.
class ThinnedWalkFamily {
public:
    ThinnedWalkFamily(ConditionedWalk base, Rng& rng);
    /// `uniforms` holds X(1) values for step 1, then X(2) for step 2, ...
    ThinnedWalkFamily(ConditionedWalk base, std::vector<double> uniforms);

    const ConditionedWalk& base() const { return base_; }
    std::size_t size() const { return base_.size(); }
    std::span<const double> unit_uniforms(std::size_t step) const {
        return {uniforms_.data() + offsets_[step], uniforms_.data() + offsets_[step + 1]};
    }

    /// X^{(t)}(i) = #{l <= X(i) : U_i(l) <= t}
    std::vector<std::uint32_t> increments_at(double t) const;
    /// Y^{(t)}(m), m = 0..n.
    LatticePath walk_at(double t) const;

private:
    ConditionedWalk base_;
    std::vector<double> uniforms_;
    std::vector<std::size_t> offsets_;
};

/// Thinned walk path at level t with fresh uniforms.
LatticePath thin(const ConditionedWalk& walk, double t, Rng& rng);
LatticePath thin(const ThinnedWalkFamily& family, double t);

/// t = 1 - lambda / sqrt(n); throws unless 0 <= lambda <= sqrt(n).
double additive_level(std::size_t n, double lambda);

/// y_+^{n,(lambda)}(x) = Y^{(t)}(n x) / sqrt(n) on x in [0,1].
LatticePath y_plus(const ThinnedWalkFamily& family, double lambda);

/// Excursion lengths of Y^{(t)} above its running minimum (unit drop
/// convention) divided by n, sorted. l1 norm is 1.
MassVector gamma_plus(const ThinnedWalkFamily& family, double lambda);
/// Same, from an arbitrary thinned walk path over 0..n.
MassVector gamma_plus_from_walk(const LatticePath& y);

struct ParkingBlock {
    std::size_t start = 0;       // first place of the block
    std::size_t cars = 0;        // occupied places before the closing empty place
    std::size_t empty_place = 0; // the empty place closing the block
    std::size_t size() const { return cars + 1; }
};

/// Cars on the circular parking Z/nZ (places 0..n-1).
struct ParkingConfiguration {
    std::size_t n = 0;
    std::vector<std::size_t> choices;
    std::vector<char> occupied;
    std::vector<ParkingBlock> blocks; // ordered by empty_place
};

/// Parks cars with the given first choices, probing rightwards mod n.
/// Requires choices.size() <= n - 1.
ParkingConfiguration park(std::size_t n, std::span<const std::size_t> choices);
ParkingConfiguration park(std::size_t n, std::size_t m, Rng& rng);

struct ForestMerge {
    double time = 0.0;
    Vertex node_a = 0; // endpoints of the new edge
    Vertex node_b = 0;
    std::size_t size_a = 0; // sizes of the two merging trees
    std::size_t size_b = 0;
};

/// Pitman's coalescing random forest on n labelled nodes.
struct ForestProcess {
    std::size_t n = 0;
    std::vector<ForestMerge> merges;

    std::size_t merges_by(double s) const;
    /// Sorted (non-increasing) tree sizes at time s.
    std::vector<std::size_t> sizes_at(double s) const;
};

ForestProcess pitman_forest(std::size_t n, Rng& rng);

enum class TreeSampler { pruefer, aldous_broder };

struct CayleyPercolation {
    WeightedGraph tree;
    PrimOrdering order;
    double t = 0.0;
    std::vector<std::size_t> component_sizes; // in Prim order
    std::vector<std::uint32_t> thinned_out_degrees; // X^t(i), i in Prim order
};

/// Uniform Cayley tree with i.i.d. uniform edge weights, percolated at t.
CayleyPercolation percolate_cayley(std::size_t n, double t, Rng& rng, TreeSampler sampler = TreeSampler::pruefer);

/// Number of edges from u_i to its children (later Prim ranks) with weight <= t.
std::vector<std::uint32_t> prim_out_degrees(const WeightedGraph& tree, const PrimOrdering& ord, double t);

/// W = (n - N)/sqrt(n), N ~ Binomial(n-1, 1 - lambda/sqrt(n)).
double time_change_W(std::size_t n, double lambda, Rng& rng);

} // namespace primcoal
