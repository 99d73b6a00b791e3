#include "primcoal/stats.hpp"

#include <algorithm>
#include <cmath>

#include "primcoal/common.hpp"

namespace primcoal {

nlohmann::json TestVerdict::to_json() const {
    return {{"description", description}, {"statistic", statistic}, {"threshold", threshold},
            {"passed", passed},           {"seeds", seeds},         {"sample_size_a", sample_size_a},
            {"sample_size_b", sample_size_b}};
}

void EmpiricalDistribution::add(const std::string& outcome, double weight) {
    require(weight >= 0.0, "EmpiricalDistribution: negative weight");
    weights_[outcome] += weight;
    total_ += weight;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
    for (const auto& [k, w] : other.weights_) weights_[k] += w;
    total_ += other.total_;
}

double EmpiricalDistribution::probability(const std::string& outcome) const {
    auto it = weights_.find(outcome);
    return it == weights_.end() || total_ == 0.0 ? 0.0 : it->second / total_;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    require(!a.empty() && !b.empty(), "ks_statistic: empty sample");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return d;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
    require(alpha > 0.0 && alpha < 1.0, "ks_critical_value: alpha must lie in (0,1)");
    require(n > 0 && m > 0, "ks_critical_value: empty sample");
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    const double nd = static_cast<double>(n), md = static_cast<double>(m);
    return c * std::sqrt((nd + md) / (nd * md));
}

TestVerdict ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha,
                          std::string description) {
    TestVerdict v;
    v.description = std::move(description);
    v.statistic = ks_statistic(a, b);
    v.threshold = ks_critical_value(alpha, a.size(), b.size());
    v.passed = v.statistic < v.threshold;
    v.sample_size_a = a.size();
    v.sample_size_b = b.size();
    return v;
}

double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    double s = 0.0;
    for (const auto& [k, w] : a.weights()) s += std::abs(a.probability(k) - b.probability(k));
    for (const auto& [k, w] : b.weights())
        if (!a.weights().count(k)) s += b.probability(k);
    return 0.5 * s;
}

TestVerdict tv_discrete(const EmpiricalDistribution& a, const EmpiricalDistribution& b, double threshold,
                        std::string description) {
    TestVerdict v;
    v.description = std::move(description);
    v.statistic = tv_distance(a, b);
    v.threshold = threshold;
    v.passed = v.statistic < threshold;
    v.sample_size_a = static_cast<std::size_t>(a.total());
    v.sample_size_b = static_cast<std::size_t>(b.total());
    return v;
}

} // namespace primcoal
