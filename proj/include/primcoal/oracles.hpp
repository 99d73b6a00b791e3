#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "primcoal/graph.hpp"

namespace primcoal {

/// Exact non-negative rational in lowest terms.
class Rational {
public:
    Rational(std::int64_t num = 0, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);

private:
    std::int64_t num_;
    std::int64_t den_;
};

/// Probability, over a uniformly random ordering of the edge weights, that
/// `event` holds for the weighted graph. Iterates all |E|! orderings
/// (weights (r+1)/(|E|+1) for rank r). Throws if |E| > 10.
Rational enumerate_weight_orders(std::size_t n, const std::vector<Edge>& edges,
                                 const std::function<bool(const WeightedGraph&)>& event);

/// Probability, over a uniform relabelling of all vertices except `fixed`,
/// that `event` holds; the argument maps vertex -> new label.
Rational enumerate_relabellings(std::size_t n, Vertex fixed,
                                const std::function<bool(const std::vector<std::size_t>&)>& event);

/// Probability that Prim exploration from `target.front()` visits `target`
/// in order, weights uniformly ordered.
Rational prim_visit_probability(std::size_t n, const std::vector<Edge>& edges, const std::vector<Vertex>& target);

/// Probability that the smallest-label exploration visits `target` under a
/// uniform relabelling fixing `target.front()`.
Rational standard_visit_probability(std::size_t n, const std::vector<Edge>& edges,
                                    const std::vector<Vertex>& target);

using DegreeLaw = std::map<std::vector<std::uint32_t>, Rational>;

/// Out-degrees in breadth-first order (children by increasing label) of a
/// tree rooted at `root`.
std::vector<std::uint32_t> bfs_out_degrees(std::size_t n, const std::vector<Edge>& edges, Vertex root = 0);

/// Exact law of the breadth-first out-degree sequence of a uniform Cayley
/// tree rooted at 0, from all n^{n-2} Pruefer sequences. n <= 7.
DegreeLaw enumerate_cayley(std::size_t n);

/// Exact law of Poisson(1) increments conditioned on first hitting -1 at n:
/// weight of x is (n-1)! / prod x_i! over first-passage sequences. n <= 10.
DegreeLaw conditioned_walk_law(std::size_t n);

/// Exact law of the thinned increments at level t (binomial thinning of
/// each X(i) mixed over conditioned_walk_law). Keys are encoded sequences.
std::map<std::vector<std::uint32_t>, double> thinned_walk_law(std::size_t n, double t);

} // namespace primcoal
