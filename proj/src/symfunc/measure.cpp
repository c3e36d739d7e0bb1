#include "vertexlab/errors.hpp"
#include "vertexlab/symfunc.hpp"

#include "vertexlab/qseries.hpp"

#include <algorithm>

namespace vertexlab {

namespace {

SpectralVector with_extra(const SpectralVector& u, const ExactScalar& x) {
    SpectralVector out = u;
    out.push_back(x);
    return out;
}

ExactScalar nonzero(const ExactScalar& x, const char* what) {
    if (x == 0) throw DivisionByZero(what);
    return x;
}

SpectralVector su_products(const MeasureSpec& spec) {
    if (spec.params.su_mode_only()) return spec.u;
    SpectralVector out;
    for (const auto& u : spec.u) out.push_back(spec.params.s_value() * u);
    return out;
}

// (s^2 - su)/(1 - su) = -s (u - s)/(1 - su).
ExactScalar scaled_ratio(const ExactScalar& s_sq, const ExactScalar& su) {
    if (su == 1) throw DegenerateParameter("su = 1 makes the measure singular");
    return (s_sq - su) / (1 - su);
}

// (-s)^{|mu|} F_mu(u) through the products su_i, for pairwise distinct su_i.
class ScaledF {
public:
    ScaledF(const ModelParams& p, const SpectralVector& su) {
        for (std::size_t i = 0; i < su.size(); ++i) {
            for (std::size_t j = i + 1; j < su.size(); ++j) {
                if (su[i] == su[j]) throw ArgumentError("su mode needs pairwise distinct spectral parameters");
            }
        }
        prefactor_ = pow(1 - p.q, static_cast<long>(su.size()));
        for (const auto& t : su) {
            prefactor_ /= 1 - t;
            ratios_.push_back(scaled_ratio(p.s_sq, t));
        }
        std::vector<int> perm(su.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        do {
            ExactScalar c = 1;
            for (std::size_t a = 0; a < perm.size(); ++a) {
                for (std::size_t b = a + 1; b < perm.size(); ++b) {
                    const auto& ta = su[static_cast<std::size_t>(perm[a])];
                    const auto& tb = su[static_cast<std::size_t>(perm[b])];
                    c *= (ta - p.q * tb) / (ta - tb);
                }
            }
            perms_.push_back(perm);
            cross_.push_back(c);
        } while (std::next_permutation(perm.begin(), perm.end()));
        prepare();
    }

    // Integer arithmetic over the common denominator L prod_j b_j^{mu_1}, where
    // cross_k = cross_num_k / L and ratio_j = a_j / b_j.
    ExactScalar operator()(const Signature& mu) const {
        if (mu.empty()) return prefactor_;
        const int top = mu[0];
        if (top != table_top_) rebuild(top);
        mpz_class total = 0, term;
        for (std::size_t k = 0; k < perms_.size(); ++k) {
            term = cross_num_[k];
            for (std::size_t i = 0; i < perms_[k].size(); ++i) {
                term *= table_[static_cast<std::size_t>(perms_[k][i])][static_cast<std::size_t>(mu[static_cast<int>(i)])];
            }
            total += term;
        }
        ExactScalar out(total, denominator_);
        out.canonicalize();
        return prefactor_ * out;
    }

private:
    void prepare() {
        for (const auto& r : ratios_) {
            num_.push_back(r.get_num());
            den_.push_back(r.get_den());
        }
        common_ = 1;
        for (const auto& c : cross_) mpz_lcm(common_.get_mpz_t(), common_.get_mpz_t(), c.get_den_mpz_t());
        for (const auto& c : cross_) cross_num_.push_back(c.get_num() * (common_ / c.get_den()));
    }

    // table_[j][e] = a_j^e b_j^{top - e}.
    void rebuild(int top) const {
        table_.assign(ratios_.size(), {});
        denominator_ = common_;
        for (std::size_t j = 0; j < ratios_.size(); ++j) {
            std::vector<mpz_class> a_pow(static_cast<std::size_t>(top) + 1), b_pow(static_cast<std::size_t>(top) + 1);
            a_pow[0] = 1;
            b_pow[0] = 1;
            for (int e = 1; e <= top; ++e) {
                a_pow[static_cast<std::size_t>(e)] = a_pow[static_cast<std::size_t>(e) - 1] * num_[j];
                b_pow[static_cast<std::size_t>(e)] = b_pow[static_cast<std::size_t>(e) - 1] * den_[j];
            }
            for (int e = 0; e <= top; ++e) {
                table_[j].push_back(a_pow[static_cast<std::size_t>(e)] * b_pow[static_cast<std::size_t>(top - e)]);
            }
            denominator_ *= b_pow[static_cast<std::size_t>(top)];
        }
        table_top_ = top;
    }

    ExactScalar prefactor_;
    std::vector<ExactScalar> ratios_;
    std::vector<mpz_class> num_, den_;
    std::vector<std::vector<int>> perms_;
    std::vector<ExactScalar> cross_;
    std::vector<mpz_class> cross_num_;
    mpz_class common_;
    mutable std::vector<std::vector<mpz_class>> table_;
    mutable mpz_class denominator_;
    mutable int table_top_ = -1;
};

}  // namespace

void require_admissible(const MeasureSpec& spec) {
    for (const auto& su : su_products(spec)) {
        if (!(abs(scaled_ratio(spec.params.s_sq, su)) < 1)) {
            throw MeasureUndefined("admissibility |s (u - s)/(1 - s u)| < 1 fails at su = " + to_string(su));
        }
    }
}

ExactScalar measure_weight(const MeasureSpec& spec, const Signature& nu) {
    const int n = static_cast<int>(spec.u.size());
    if (nu.length() != n) throw ArgumentError("signature length must equal the number of spectral parameters");
    if (n == 0) return 1;
    require_admissible(spec);
    if (nu.smallest() == 0) return 0;
    Signature base = nu.shifted(-1);
    if (spec.params.su_mode_only()) {
        return c_factor(spec.params, base) * ScaledF(spec.params, spec.u)(base);
    }
    const ExactScalar& s = spec.params.s_value();
    return pow(-s, nu.size() - n) * c_factor(spec.params, base) * F_value(spec.params, base, spec.u);
}

namespace {

// c(nu) as a product over multiplicities, with the per-count factors cached.
class CFactor {
public:
    explicit CFactor(const ModelParams& p) : p_(p) {}

    ExactScalar operator()(const Signature& nu) {
        ExactScalar out = 1;
        const auto& parts = nu.parts();
        for (std::size_t i = 0; i < parts.size();) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == parts[i]) ++j;
            out *= factor(static_cast<int>(j - i));
            i = j;
        }
        return out;
    }

private:
    const ExactScalar& factor(int count) {
        while (static_cast<int>(table_.size()) <= count) {
            const int m = static_cast<int>(table_.size());
            const ExactScalar den = q_pochhammer(p_.q, p_.q, m);
            if (den == 0) throw DegenerateParameter("(q;q)_n vanishes in c(nu)");
            table_.push_back(q_pochhammer(p_.s_sq, p_.q, m) / den);
        }
        return table_[static_cast<std::size_t>(count)];
    }

    ModelParams p_;
    std::vector<ExactScalar> table_;
};

}  // namespace

std::vector<WeightedSignature> enumerate_measure(const MeasureSpec& spec, int cutoff) {
    std::vector<WeightedSignature> out;
    if (spec.u.empty()) {
        out.push_back({Signature{}, ExactScalar(1)});
        return out;
    }
    for (int largest = cutoff; largest >= 1; --largest) {
        for (auto& item : enumerate_measure_layer(spec, largest)) out.push_back(std::move(item));
    }
    return out;
}

std::vector<WeightedSignature> enumerate_measure_layer(const MeasureSpec& spec, int largest) {
    const int n = static_cast<int>(spec.u.size());
    std::vector<WeightedSignature> out;
    if (n == 0 || largest < 1) return out;
    require_admissible(spec);
    ScaledF F(spec.params, su_products(spec));
    CFactor c(spec.params);
    for (const auto& rest : enumerate_signatures(n - 1, 0, largest - 1)) {
        std::vector<int> parts{largest - 1};
        parts.insert(parts.end(), rest.parts().begin(), rest.parts().end());
        const Signature base(std::move(parts));
        out.push_back({base.shifted(1), c(base) * F(base)});
    }
    return out;
}

ExactScalar kernel_lambda_minus(const ModelParams& p, const SpectralVector& u, const ExactScalar& u_new,
                                const Signature& nu, const Signature& mu) {
    ExactScalar step = skew_F_one_row(p, mu, nu, u_new);
    if (step == 0) return 0;
    ExactScalar den = nonzero(F_value(p, nu, with_extra(u, u_new)), "F_nu vanishes in the kernel denominator");
    return F_value(p, mu, u) / den * step;
}

ExactScalar kernel_lambda_circ(const ModelParams& p, const SpectralVector& v, const ExactScalar& v_new,
                               const Signature& lambda, const Signature& mu) {
    ExactScalar step = skew_G_one_row(p, mu, lambda, v_new);
    if (step == 0) return 0;
    step *= c_factor(p, lambda) / c_factor(p, mu);
    ExactScalar den =
        nonzero(G_conj_value(p, lambda, with_extra(v, v_new)), "G^c_lambda vanishes in the kernel denominator");
    return G_conj_value(p, mu, v) / den * step;
}

ExactScalar kernel_q_plus(const ModelParams& p, const ExactScalar& u, const SpectralVector& v, const Signature& lambda,
                          const Signature& nu) {
    ExactScalar step = skew_F_one_row(p, lambda, nu, u);
    if (step == 0) return 0;
    const ExactScalar& s = p.s_value();
    const int m = lambda.length();
    ExactScalar pref = (1 - s * u) / nonzero(1 - pow(p.q, m + 1), "1 - q^{m+1} vanishes");
    for (const auto& vj : v) pref *= (1 - u * vj) / nonzero(1 - p.q * u * vj, "1 - q u v vanishes");
    ExactScalar den = nonzero(G_conj_value(p, lambda, v), "G^c_lambda vanishes in the kernel denominator");
    return pref * G_conj_value(p, nu, v) / den * step;
}

ExactScalar kernel_q_circ(const ModelParams& p, const SpectralVector& u, const ExactScalar& v, const Signature& mu,
                          const Signature& nu) {
    ExactScalar step = skew_G_one_row(p, mu, nu, v);
    if (step == 0) return 0;
    step *= c_factor(p, nu) / c_factor(p, mu);
    ExactScalar pref = 1;
    for (const auto& ui : u) pref *= (1 - ui * v) / nonzero(1 - p.q * ui * v, "1 - q u v vanishes");
    ExactScalar den = nonzero(F_value(p, mu, u), "F_mu vanishes in the kernel denominator");
    return pref * F_value(p, nu, u) / den * step;
}

ExactScalar kernel_q_circ_zero(const ModelParams& p, const ExactScalar& v, const Signature& mu, const Signature& nu) {
    ExactScalar step = skew_G_one_row(p, mu, nu, v);
    if (step == 0) return 0;
    return pow(-p.s_value(), nu.size() - mu.size()) * c_factor(p, nu) / c_factor(p, mu) * step;
}

ExactScalar kernel_q_plus_rho(const ModelParams& p, const ExactScalar& u, const Signature& lambda,
                              const Signature& nu) {
    if (nu.length() != lambda.length() + 1) return 0;
    if (!lambda.empty() && lambda.smallest() == 0) throw ArgumentError("the rho dynamics lives on nu_n >= 1");
    if (nu.smallest() == 0) return 0;
    Signature lt = lambda.shifted(-1);
    Signature nt = nu.shifted(-1);
    ExactScalar step = skew_F_one_row(p, lt, nt, u);
    if (step == 0) return 0;
    return pow(-p.s_value(), nt.size() - lt.size()) * c_factor(p, nt) / c_factor(p, lt) * step;
}

ExactScalar multiset_geometric_tail(int M, const ExactScalar& r, int C) {
    if (M < 0) throw ArgumentError("negative dimension");
    if (!(r >= 0 && r < 1)) throw TruncationError("tail certificate needs a ratio in [0, 1)");
    if (M == 0) return 0;
    ExactScalar head = 0;
    ExactScalar rn = 1;
    for (int N = 0; N <= C; ++N) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(N + M - 1), static_cast<unsigned long>(M - 1));
        head += ExactScalar(binom) * rn;
        rn *= r;
    }
    return pow(1 - r, -M) - head;
}

}  // namespace vertexlab
