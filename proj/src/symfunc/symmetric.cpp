#include "vertexlab/errors.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/symfunc.hpp"

#include <algorithm>
#include <numeric>

namespace vertexlab {

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

void require_distinct(const SpectralVector& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            if (u[i] == u[j]) {
                throw ArgumentError("coinciding spectral points; evaluate through lattice paths instead");
            }
        }
    }
}

// sigma(prod_{a<b} (u_a - q u_b)/(u_a - u_b)) for the permuted order perm.
ExactScalar cross_term(const ExactScalar& q, const SpectralVector& u, const std::vector<int>& perm) {
    ExactScalar out = 1;
    for (std::size_t a = 0; a < perm.size(); ++a) {
        for (std::size_t b = a + 1; b < perm.size(); ++b) {
            const ExactScalar& ua = u[static_cast<std::size_t>(perm[a])];
            const ExactScalar& ub = u[static_cast<std::size_t>(perm[b])];
            out *= (ua - q * ub) / (ua - ub);
        }
    }
    return out;
}

ExactScalar product_one_minus_s(const ExactScalar& s, const SpectralVector& u) {
    ExactScalar out = 1;
    for (const auto& x : u) {
        ExactScalar d = 1 - s * x;
        if (d == 0) throw DegenerateParameter("su = 1 makes the symmetric functions singular");
        out *= d;
    }
    return out;
}

}  // namespace

ExactScalar arrow_ratio(const ModelParams& p, const ExactScalar& u) {
    const ExactScalar& s = p.s_value();
    ExactScalar d = 1 - s * u;
    if (d == 0) throw DegenerateParameter("su = 1 makes the symmetric functions singular");
    return (u - s) / d;
}

ExactScalar c_factor(const ModelParams& p, const Signature& nu) {
    ExactScalar out = 1;
    for (const auto& [part, count] : nu.multiplicities()) {
        ExactScalar den = q_pochhammer(p.q, p.q, count);
        if (den == 0) throw DegenerateParameter("(q;q)_n vanishes in c(nu)");
        out *= q_pochhammer(p.s_sq, p.q, count) / den;
    }
    return out;
}

FEvaluator::FEvaluator(const ModelParams& p, SpectralVector u) : p_(p), u_(std::move(u)) {
    require_distinct(u_);
    const int M = static_cast<int>(u_.size());
    prefactor_ = pow(1 - p_.q, M) / product_one_minus_s(p_.s_value(), u_);
    perms_ = all_permutations(M);
    for (const auto& perm : perms_) cross_.push_back(cross_term(p_.q, u_, perm));
    for (const auto& x : u_) ratios_.push_back(arrow_ratio(p_, x));
    powers_.assign(u_.size(), std::vector<ExactScalar>{ExactScalar(1)});
}

const ExactScalar& FEvaluator::power(std::size_t var, int k) {
    auto& row = powers_[var];
    while (static_cast<int>(row.size()) <= k) row.push_back(row.back() * ratios_[var]);
    return row[static_cast<std::size_t>(k)];
}

ExactScalar FEvaluator::operator()(const Signature& mu) {
    if (mu.length() != static_cast<int>(u_.size())) throw ArgumentError("F_mu needs as many variables as parts");
    ExactScalar total = 0;
    for (std::size_t s = 0; s < perms_.size(); ++s) {
        ExactScalar term = cross_[s];
        for (std::size_t i = 0; i < perms_[s].size() && term != 0; ++i) {
            term *= power(static_cast<std::size_t>(perms_[s][i]), mu[static_cast<int>(i)]);
        }
        total += term;
    }
    return prefactor_ * total;
}

ExactScalar FEvaluator::prefactor_bound() const {
    ExactScalar sum = 0;
    for (const auto& c : cross_) sum += abs(c);
    return abs(prefactor_) * sum;
}

ExactScalar FEvaluator::ratio_bound() const {
    ExactScalar r = 0;
    for (const auto& a : ratios_) r = std::max(r, abs(a));
    return r;
}

ExactScalar F_sym(const ModelParams& p, const Signature& mu, const SpectralVector& u) {
    FEvaluator eval(p, u);
    return eval(mu);
}

ExactScalar G_sym(const ModelParams& p, const Signature& nu, const SpectralVector& v) {
    require_distinct(v);
    const ExactScalar& s = p.s_value();
    const ExactScalar& q = p.q;
    const int n = nu.length();
    const int k = nu.multiplicity(0);
    const int N = static_cast<int>(v.size());
    const int moving = n - k;
    if (N < moving) return 0;

    ExactScalar den = q_pochhammer(q, q, N - moving) * q_pochhammer(p.s_sq, q, k);
    if (den == 0) throw DegenerateParameter("vanishing Pochhammer factor in the G prefactor");
    ExactScalar pref = q_pochhammer(p.s_sq, q, n) / den * pow(1 - q, N) / product_one_minus_s(s, v);

    std::vector<ExactScalar> ratios;
    for (const auto& x : v) ratios.push_back(arrow_ratio(p, x));
    ExactScalar qk = pow(q, k);
    ExactScalar total = 0;
    for (const auto& perm : all_permutations(N)) {
        ExactScalar term = cross_term(q, v, perm);
        for (int j = 0; j < N && term != 0; ++j) {
            auto idx = static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]);
            if (j < moving) {
                if (v[idx] == s) throw DegenerateParameter("v = s is a pole of G");
                term *= pow(ratios[idx], nu[j]) * v[idx] / (v[idx] - s);
            } else {
                term *= 1 - s * qk * v[idx];
            }
        }
        total += term;
    }
    return pref * total;
}

ExactScalar principal_F(const ModelParams& p, const Signature& mu, const ExactScalar& u, int M) {
    if (mu.length() != M) throw ArgumentError("principal_F needs M equal to the signature length");
    const ExactScalar& s = p.s_value();
    ExactScalar den = q_pochhammer(s * u, p.q, M);
    if (den == 0) throw DegenerateParameter("(su;q)_M vanishes");
    ExactScalar out = q_pochhammer(p.q, p.q, M) / den;
    for (int i = 0; i < M; ++i) out *= pow(arrow_ratio(p, pow(p.q, i) * u), mu[i]);
    return out;
}

ExactScalar principal_G(const ModelParams& p, const Signature& nu, const ExactScalar& v, int N) {
    const ExactScalar& s = p.s_value();
    const ExactScalar& q = p.q;
    const int n = nu.length();
    const int k = nu.multiplicity(0);
    const int moving = n - k;
    if (N < moving) return 0;
    if (v == 0) throw DegenerateParameter("principal_G needs v != 0");
    ExactScalar den = q_pochhammer(q, q, N - moving) * q_pochhammer(s * v, q, n) * q_pochhammer(s * v, q, N) *
                      q_pochhammer(p.s_sq, q, k) * q_pochhammer(s / v, 1 / q, moving);
    if (den == 0) throw DegenerateParameter("vanishing denominator in the principal specialization of G");
    ExactScalar out = q_pochhammer(q, q, N) * q_pochhammer(s * v, q, N + k) * q_pochhammer(p.s_sq, q, n) / den;
    for (int j = 0; j < moving; ++j) out *= pow(arrow_ratio(p, pow(q, j) * v), nu[j]);
    return out;
}

ExactScalar G_rho(const ModelParams& p, const Signature& nu) {
    const int n = nu.length();
    if (n > 0 && nu.smallest() == 0) return 0;
    const ExactScalar& s = p.s_value();
    return pow(-s, nu.size()) * q_pochhammer(p.s_sq, p.q, n) * pow(p.s_sq, -n);
}

}  // namespace vertexlab
