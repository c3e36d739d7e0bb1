#pragma once

#include "vertexlab/scalar.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace vertexlab {

using Uint128 = unsigned __int128;

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Counter-based stream: key = master seed, counter = (draw index, replica index).
// Every draw consumes exactly one Philox block.
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t replica);

    PhiloxCounter next_block();
    Uint128 next_u128();
    double next_unit();  // in (0, 1)
    double next_exponential(double rate);

    std::uint64_t draws() const { return draw_; }
    std::uint64_t replica() const { return replica_; }

private:
    PhiloxKey key_{};
    std::uint64_t replica_ = 0;
    std::uint64_t draw_ = 0;
};

// Finite law with exact rational probabilities. Outcome k is returned when
// U < ceil(CDF_k * 2^128) for a uniform 128-bit integer U, so the sampled law
// is the exact law rounded to the dyadic grid 2^-128.
class DyadicCategorical {
public:
    explicit DyadicCategorical(const std::vector<ExactScalar>& probabilities);

    int sample(Rng& rng) const;
    int size() const { return static_cast<int>(bounds_.size()) + 1; }
    const std::vector<ExactScalar>& probabilities() const { return probabilities_; }

private:
    struct Bound {
        bool any = false;   // false when CDF_k = 0
        Uint128 last = 0;   // largest U mapped to an outcome <= k
    };
    std::vector<Bound> bounds_;  // one per outcome except the last
    std::vector<ExactScalar> probabilities_;
};

}  // namespace vertexlab
