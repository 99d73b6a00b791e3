#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace primcoal {

using Vertex = std::uint32_t;
using Rng = std::mt19937_64;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an input violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for replicate `index` of a run with `master` seed. Independent of how
/// replicates are scheduled across workers.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    const std::uint64_t a = splitmix64(s);
    s = a ^ (index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL);
    splitmix64(s);
    return splitmix64(s);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(stream_seed(master, index)),
                      static_cast<std::uint32_t>(stream_seed(master, index) >> 32),
                      static_cast<std::uint32_t>(index)};
    return Rng(seq);
}

/// Uniform on the open interval (0,1) with 53 random bits.
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

} // namespace primcoal
