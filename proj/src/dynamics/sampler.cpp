#include "vertexlab/errors.hpp"
#include "vertexlab/random.hpp"

namespace vertexlab {

namespace {

// ceil(p * 2^128) for 0 <= p < 1 as a 128-bit integer.
Uint128 dyadic_ceiling(const ExactScalar& p) {
    mpz_class scaled = p.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 128);
    mpz_class out;
    mpz_cdiv_q(out.get_mpz_t(), scaled.get_mpz_t(), p.get_den_mpz_t());
    mpz_class low = out;
    mpz_fdiv_r_2exp(low.get_mpz_t(), low.get_mpz_t(), 64);
    mpz_class high = out;
    mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), 64);
    return (static_cast<Uint128>(mpz_get_ui(high.get_mpz_t())) << 64) | mpz_get_ui(low.get_mpz_t());
}

}  // namespace

DyadicCategorical::DyadicCategorical(const std::vector<ExactScalar>& probabilities)
    : probabilities_(probabilities) {
    if (probabilities.empty()) throw ArgumentError("empty distribution");
    ExactScalar cdf = 0;
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (probabilities[k] < 0) {
            throw RegimeError("negative transition probability " + to_string(probabilities[k]) +
                              "; parameters are outside the nonnegativity regime");
        }
        cdf += probabilities[k];
        if (k + 1 == probabilities.size()) break;
        if (cdf > 1) throw RegimeError("transition probabilities exceed 1");
        Bound b;
        if (cdf == 1) {
            b.any = true;
            b.last = ~static_cast<Uint128>(0);
        } else if (cdf > 0) {
            b.any = true;
            b.last = dyadic_ceiling(cdf) - 1;
        }
        bounds_.push_back(b);
    }
    if (cdf != 1) throw RegimeError("transition probabilities sum to " + to_string(cdf) + " instead of 1");
}

int DyadicCategorical::sample(Rng& rng) const {
    if (bounds_.empty()) return 0;
    Uint128 u = rng.next_u128();
    for (std::size_t k = 0; k < bounds_.size(); ++k) {
        if (bounds_[k].any && u <= bounds_[k].last) return static_cast<int>(k);
    }
    return static_cast<int>(bounds_.size());
}

}  // namespace vertexlab
