#include "vertexlab/errors.hpp"
#include "vertexlab/residues.hpp"

#include <mpfr.h>

#include <cmath>
#include <vector>

namespace vertexlab {

namespace {

// Owning MPFR value.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

Real from_exact(const ExactScalar& x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.get(), x.get_mpq_t(), MPFR_RNDN);
    return r;
}

std::string decimal_string(const Real& x, int bits) {
    const int digits = std::max(6, static_cast<int>(std::floor(bits * 0.30103)));
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, x.get());
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

void require_precision(int bits) {
    if (bits < 32 || bits > 1 << 16) throw ArgumentError("precision must be between 32 and 65536 bits");
}

// Accepts the value at `bits` if a run at twice the precision agrees to about `bits` bits.
ApproxValue settle(const Real& low, const Real& high, int bits) {
    Real diff(2 * bits);
    mpfr_sub(diff.get(), high.get(), low.get(), MPFR_RNDN);
    mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
    Real scale(2 * bits);
    mpfr_abs(scale.get(), high.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(scale.get(), scale.get(), -(bits - 16), MPFR_RNDN);
    if (mpfr_cmp(diff.get(), scale.get()) > 0) {
        throw TruncationError("precision underflow: " + std::to_string(bits) + " bits lose the result to cancellation");
    }
    ApproxValue out;
    out.value = mpfr_get_d(high.get(), MPFR_RNDN);
    out.decimal = decimal_string(high, bits);
    out.precision_bits = bits;
    return out;
}

Real exponential_sum(const std::map<ExponentialResidueSum::Key, ExactScalar>& terms, const ExactScalar& a,
                     const ExactScalar& prefactor, mpfr_prec_t prec) {
    Real total(prec), term(prec), e(prec);
    const Real ra = from_exact(a, prec);
    for (const auto& [key, c] : terms) {
        mpfr_set_q(term.get(), ExactScalar(c * pow(a, key.first)).get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(e.get(), ExactScalar(a * key.second).get_mpq_t(), MPFR_RNDN);
        mpfr_exp(e.get(), e.get(), MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), e.get(), MPFR_RNDN);
        mpfr_add(total.get(), total.get(), term.get(), MPFR_RNDN);
    }
    mpfr_set_q(term.get(), prefactor.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(total.get(), total.get(), term.get(), MPFR_RNDN);
    return total;
}

// 1 - (1-q)^{-x} sum_{k} A_k b^{x+k+1}/(x+k+1)!, with b = (1-q) t, kappa = q/(1-q) and
// A(v) = e^{-t} (1-v)^{-1} (1 + kappa v)^{-x} exp(t kappa v / (1 + kappa v)).
Real asep_series(const ExactScalar& q, const ExactScalar& t, int x, mpfr_prec_t prec, int terms) {
    const ExactScalar kappa = q / (1 - q);
    const ExactScalar b = (1 - q) * t;
    const auto K = static_cast<std::size_t>(terms);
    // (1 + kappa v)^{-x} and exp(t kappa v/(1 + kappa v)) as exact-input MPFR series.
    std::vector<Real> binom(K, Real(prec)), S(K, Real(prec)), E(K, Real(prec)), A(K, Real(prec));
    mpfr_set_ui(binom[0].get(), 1, MPFR_RNDN);
    for (std::size_t k = 1; k < K; ++k) {
        ExactScalar f = kappa * ExactScalar(-x - static_cast<long>(k) + 1) / ExactScalar(static_cast<long>(k));
        Real rf = from_exact(f, prec);
        mpfr_mul(binom[k].get(), binom[k - 1].get(), rf.get(), MPFR_RNDN);
    }
    {
        Real power = from_exact(t, prec);
        Real rk = from_exact(-kappa, prec);
        for (std::size_t k = 1; k < K; ++k) {
            // S_k = t (-1)^{k-1} kappa^k
            mpfr_mul(power.get(), power.get(), rk.get(), MPFR_RNDN);
            mpfr_neg(S[k].get(), power.get(), MPFR_RNDN);
        }
    }
    mpfr_set_ui(E[0].get(), 1, MPFR_RNDN);
    Real acc(prec), tmp(prec);
    for (std::size_t k = 1; k < K; ++k) {
        mpfr_set_zero(acc.get(), 1);
        for (std::size_t j = 1; j <= k; ++j) {
            mpfr_mul(tmp.get(), S[j].get(), E[k - j].get(), MPFR_RNDN);
            mpfr_mul_ui(tmp.get(), tmp.get(), static_cast<unsigned long>(j), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDN);
        }
        mpfr_div_ui(E[k].get(), acc.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    }
    Real running(prec);
    for (std::size_t k = 0; k < K; ++k) {
        mpfr_set_zero(acc.get(), 1);
        for (std::size_t j = 0; j <= k; ++j) {
            mpfr_mul(tmp.get(), binom[j].get(), E[k - j].get(), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDN);
        }
        mpfr_add(running.get(), running.get(), acc.get(), MPFR_RNDN);
        A[k] = running;
    }
    Real sum(prec), rb = from_exact(b, prec), term(prec), fact(prec);
    const long first = std::max(0L, -static_cast<long>(x) - 1);
    for (long k = first; k < terms; ++k) {
        const long m = x + k + 1;
        mpfr_pow_ui(term.get(), rb.get(), static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_fac_ui(fact.get(), static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_div(term.get(), term.get(), fact.get(), MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), A[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    Real scale = from_exact(pow(1 - q, -x), prec);
    mpfr_mul(sum.get(), sum.get(), scale.get(), MPFR_RNDN);
    Real et = from_exact(-t, prec);
    mpfr_exp(et.get(), et.get(), MPFR_RNDN);
    mpfr_mul(sum.get(), sum.get(), et.get(), MPFR_RNDN);
    Real out(prec);
    mpfr_ui_sub(out.get(), 1, sum.get(), MPFR_RNDN);
    return out;
}

}  // namespace

ApproxValue evaluate_exponential_sum(const std::map<ExponentialResidueSum::Key, ExactScalar>& terms,
                                     const ExactScalar& a, const ExactScalar& prefactor, int precision_bits) {
    require_precision(precision_bits);
    Real low = exponential_sum(terms, a, prefactor, precision_bits);
    Real high = exponential_sum(terms, a, prefactor, 2 * precision_bits);
    return settle(low, high, precision_bits);
}

ApproxValue q_moment_asep(const ExactScalar& q, const ExactScalar& t, const std::vector<int>& x,
                          int precision_bits) {
    require_precision(precision_bits);
    if (!(q > 0 && q < 1)) throw RegimeError("ASEP moments need 0 < q < 1");
    if (t < 0) throw ArgumentError("time must be nonnegative");
    if (x.size() != 1) throw ArgumentError("ASEP moments are available for one point only");
    const int point = x[0];
    // Terms decay like b^m/m! against growth max(1, kappa)^k; grow the series until it settles.
    int terms = 32;
    Real previous = asep_series(q, t, point, 2 * precision_bits, terms);
    for (;;) {
        terms *= 2;
        if (terms > 1 << 14) throw TruncationError("ASEP series did not settle");
        Real current = asep_series(q, t, point, 2 * precision_bits, terms);
        Real diff(2 * precision_bits);
        mpfr_sub(diff.get(), current.get(), previous.get(), MPFR_RNDN);
        if (mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) < -(precision_bits + 8)) {
            Real low = asep_series(q, t, point, precision_bits, terms);
            return settle(low, current, precision_bits);
        }
        previous = current;
    }
}

}  // namespace vertexlab
