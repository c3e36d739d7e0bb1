#include "vertexlab/random.hpp"

#include <cmath>

namespace vertexlab {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

PhiloxCounter round_once(const PhiloxCounter& c, const PhiloxKey& k) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        counter = round_once(counter, key);
    }
    return counter;
}

Rng::Rng(std::uint64_t master_seed, std::uint64_t replica)
    : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
      replica_(replica) {}

PhiloxCounter Rng::next_block() {
    PhiloxCounter ctr{static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
                      static_cast<std::uint32_t>(replica_), static_cast<std::uint32_t>(replica_ >> 32)};
    ++draw_;
    return philox4x32_10(ctr, key_);
}

Uint128 Rng::next_u128() {
    PhiloxCounter b = next_block();
    Uint128 out = 0;
    for (int i = 3; i >= 0; --i) out = (out << 32) | b[static_cast<std::size_t>(i)];
    return out;
}

double Rng::next_unit() {
    PhiloxCounter b = next_block();
    std::uint64_t bits = (static_cast<std::uint64_t>(b[1]) << 32 | b[0]) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::next_exponential(double rate) { return -std::log(next_unit()) / rate; }

}  // namespace vertexlab
