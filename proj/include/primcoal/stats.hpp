#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace primcoal {

/// Outcome of one statistical or exact check.
struct TestVerdict {
    std::string description;
    double statistic = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::vector<std::uint64_t> seeds;
    std::size_t sample_size_a = 0;
    std::size_t sample_size_b = 0;

    nlohmann::json to_json() const;
};

/// Weighted distribution over encoded discrete outcomes.
class EmpiricalDistribution {
public:
    void add(const std::string& outcome, double weight = 1.0);
    void merge(const EmpiricalDistribution& other);

    double total() const { return total_; }
    std::size_t support_size() const { return weights_.size(); }
    /// Normalised probability of an outcome (0 if unseen).
    double probability(const std::string& outcome) const;
    const std::map<std::string, double>& weights() const { return weights_; }

private:
    std::map<std::string, double> weights_;
    double total_ = 0.0;
};

/// sup_x |F_a(x) - F_b(x)| for two real samples.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// c(alpha) sqrt((n + m) / (n m)), c(alpha) = sqrt(-ln(alpha/2)/2) (1.949 at 1e-3).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

TestVerdict ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha = 1e-3,
                          std::string description = "two-sample KS");

/// 1/2 sum |p - q| over the joint support.
double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

TestVerdict tv_discrete(const EmpiricalDistribution& a, const EmpiricalDistribution& b, double threshold,
                        std::string description = "total variation");

/// Encodes an integer sequence as a comma-separated outcome key.
template <class Seq>
std::string encode_outcome(const Seq& seq) {
    std::string s;
    for (const auto& v : seq) {
        if (!s.empty()) s += ',';
        s += std::to_string(v);
    }
    return s;
}

} // namespace primcoal
