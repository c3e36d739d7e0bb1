#include "vertexlab/identities.hpp"

#include "vertexlab/errors.hpp"
#include "vertexlab/qseries.hpp"

#include <algorithm>
#include <numeric>

namespace vertexlab {

namespace {

const std::vector<std::pair<IdentityKind, std::string>>& kind_names() {
    static const std::vector<std::pair<IdentityKind, std::string>> names{
        {IdentityKind::cauchy, "cauchy"},
        {IdentityKind::skew_cauchy, "skew_cauchy"},
        {IdentityKind::pieri_F, "pieri_F"},
        {IdentityKind::pieri_G, "pieri_G"},
        {IdentityKind::branching, "branching"},
        {IdentityKind::shift, "shift"},
        {IdentityKind::eigenrelation, "eigenrelation"},
        {IdentityKind::commutation, "commutation"},
        {IdentityKind::moment_recombination, "moment_recombination"},
    };
    return names;
}

SpectralVector head(const SpectralVector& u, int n, const char* what) {
    if (static_cast<int>(u.size()) < n) throw ArgumentError(std::string("not enough ") + what + " parameters");
    return SpectralVector(u.begin(), u.begin() + n);
}

ExactScalar c_ratio_bound(const ModelParams& p, int n) {
    ExactScalar b = 1;
    for (int j = 1; j <= n; ++j) {
        ExactScalar den = q_pochhammer(p.q, p.q, j);
        if (den == 0) throw DegenerateParameter("(q;q)_n vanishes");
        b = std::max<ExactScalar>(b, abs(q_pochhammer(p.s_sq, p.q, j) / den));
    }
    return pow(b, n);
}

ExactScalar max_abs_ratio(const ModelParams& p, const SpectralVector& v) {
    ExactScalar a = 0;
    for (const auto& x : v) a = std::max<ExactScalar>(a, abs(arrow_ratio(p, x)));
    return a;
}

ExactScalar cross_abs_sum(const ExactScalar& q, const SpectralVector& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    ExactScalar total = 0;
    do {
        ExactScalar c = 1;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                const auto& va = v[static_cast<std::size_t>(idx[a])];
                const auto& vb = v[static_cast<std::size_t>(idx[b])];
                if (va == vb) throw TruncationError("tail bound needs distinct spectral points");
                c *= (va - q * vb) / (va - vb);
            }
        }
        total += abs(c);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return total;
}

// Sum over one free top part kappa_1 = m + t, t > C, of g1 a^{t-1} times a factor bounded by K A^{base + t}.
ExactScalar free_part_tail(const ExactScalar& g1, const GeometricBound& other, long base, const ExactScalar& a,
                           int C) {
    ExactScalar r = a * other.A;
    if (!(r < 1)) throw TruncationError("geometric ratio of the free part is not below 1");
    return g1 * other.K * pow(other.A, base + 1) * pow(r, C) / (1 - r);
}

// Sum over t > C of term1 r^{t-1} in absolute value.
ExactScalar geometric_tail(const ExactScalar& term1, const ExactScalar& r, int C) {
    if (!(r < 1)) throw TruncationError("geometric ratio of the free part is not below 1");
    return abs(term1) * pow(r, C) / (1 - r);
}

IdentityInstance finish(std::string inputs, ExactScalar lhs, ExactScalar rhs, ExactScalar tail,
                        const IdentityConfig& cfg) {
    IdentityInstance inst{std::move(inputs), std::move(lhs), std::move(rhs), std::move(tail), false};
    if (inst.tail_bound == 0) {
        inst.pass = inst.lhs == inst.rhs;
    } else {
        inst.pass = abs(inst.lhs - inst.rhs) <= inst.tail_bound && inst.tail_bound <= cfg.tolerance;
    }
    return inst;
}

std::vector<Signature> signatures_up_to(int length, int max_part) { return enumerate_signatures(length, 0, max_part); }

ExactScalar pair_product(const ModelParams& p, const SpectralVector& u, const SpectralVector& v) {
    ExactScalar out = 1;
    for (const auto& a : u) {
        for (const auto& b : v) {
            ExactScalar den = 1 - a * b;
            if (den == 0) throw DegenerateParameter("uv = 1");
            out *= (1 - p.q * a * b) / den;
        }
    }
    return out;
}

void run_cauchy(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    for (int M = 1; M <= cfg.max_size; ++M) {
        for (int N = 1; N <= cfg.max_size; ++N) {
            auto u = head(cfg.u, M, "u");
            auto v = head(cfg.v, N, "v");
            FEvaluator F(p, u);
            ExactScalar lhs = 0;
            for (const auto& mu : signatures_up_to(M, cfg.cutoff)) lhs += F(mu) * G_conj_value(p, mu, v);
            ExactScalar rhs = q_pochhammer(p.q, p.q, M) * pair_product(p, u, v);
            for (const auto& x : u) rhs /= 1 - p.s_value() * x;
            auto gb = G_conj_bound(p, v, M);
            ExactScalar r = F.ratio_bound() * gb.A;
            ExactScalar tail = F.prefactor_bound() * gb.K * multiset_geometric_tail(M, r, cfg.cutoff);
            rep.instances.push_back(
                finish("M=" + std::to_string(M) + " N=" + std::to_string(N), lhs, rhs, tail, cfg));
        }
    }
}

void run_skew_cauchy(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    const ExactScalar u = head(cfg.u, 1, "u")[0];
    const ExactScalar v = head(cfg.v, 1, "v")[0];
    const ExactScalar r = abs(arrow_ratio(p, u) * arrow_ratio(p, v));
    for (int N = 0; N < cfg.max_size; ++N) {
        for (const auto& lambda : signatures_up_to(N + 1, cfg.max_part)) {
            for (const auto& nu : signatures_up_to(N, cfg.max_part)) {
                const int m = std::max(lambda.largest(), nu.largest());
                ExactScalar lhs = 0, tail = 0;
                for (const auto& kappa : interlacing_above(nu, 1, m + cfg.cutoff)) {
                    ExactScalar g = skew_G_one_row(p, lambda, kappa, v);
                    if (g == 0) continue;
                    ExactScalar term = c_factor(p, kappa) / c_factor(p, lambda) * g * skew_F_one_row(p, nu, kappa, u);
                    lhs += term;
                    if (kappa.largest() == m + 1) tail += geometric_tail(term, r, cfg.cutoff);
                }
                ExactScalar rhs = 0;
                for (const auto& mu : interlacing_below(nu, 0)) {
                    ExactScalar f = skew_F_one_row(p, mu, lambda, u);
                    if (f == 0) continue;
                    rhs += f * c_factor(p, nu) / c_factor(p, mu) * skew_G_one_row(p, mu, nu, v);
                }
                rhs *= (1 - p.q * u * v) / (1 - u * v);
                rep.instances.push_back(finish("lambda=" + lambda.str() + " nu=" + nu.str(), lhs, rhs, tail, cfg));
            }
        }
    }
}

void run_pieri_F(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    const ExactScalar v = head(cfg.v, 1, "v")[0];
    const ExactScalar av = abs(arrow_ratio(p, v));
    for (int N = 1; N <= cfg.max_size; ++N) {
        auto u = head(cfg.u, N, "u");
        FEvaluator F(p, u);
        GeometricBound fb{F.prefactor_bound(), F.ratio_bound()};
        for (const auto& lambda : signatures_up_to(N, cfg.max_part)) {
            const int m = lambda.largest();
            ExactScalar lhs = 0, tail = 0;
            for (const auto& kappa : interlacing_above(lambda, 0, m + cfg.cutoff)) {
                ExactScalar g = skew_G_one_row(p, lambda, kappa, v);
                if (g == 0) continue;
                g *= c_factor(p, kappa) / c_factor(p, lambda);
                lhs += g * F(kappa);
                if (kappa.largest() == m + 1) tail += free_part_tail(abs(g), fb, kappa.size() - 1, av, cfg.cutoff);
            }
            ExactScalar rhs = F(lambda) * pair_product(p, u, {v});
            rep.instances.push_back(finish("N=" + std::to_string(N) + " lambda=" + lambda.str(), lhs, rhs, tail, cfg));
        }
    }
}

void run_pieri_G(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    const ExactScalar u = head(cfg.u, 1, "u")[0];
    const ExactScalar au = abs(arrow_ratio(p, u));
    const int n = std::min<int>(cfg.max_size, static_cast<int>(cfg.v.size()));
    auto v = head(cfg.v, n, "v");
    for (int N = 0; N < cfg.max_size; ++N) {
        auto gb = G_conj_bound(p, v, N + 1);
        for (const auto& nu : signatures_up_to(N, cfg.max_part)) {
            const int m = nu.largest();
            ExactScalar lhs = 0, tail = 0;
            for (const auto& kappa : interlacing_above(nu, 1, m + cfg.cutoff)) {
                ExactScalar f = skew_F_one_row(p, nu, kappa, u);
                if (f == 0) continue;
                lhs += G_conj_value(p, kappa, v) * f;
                if (kappa.largest() == m + 1) {
                    // G^c carries c(kappa), which stays constant along the free part.
                    tail += free_part_tail(abs(f), gb, kappa.size() - 1, au, cfg.cutoff);
                }
            }
            ExactScalar rhs = (1 - pow(p.q, N + 1)) / (1 - p.s_value() * u) * pair_product(p, {u}, v) *
                              G_conj_value(p, nu, v);
            rep.instances.push_back(finish("N=" + std::to_string(N) + " nu=" + nu.str(), lhs, rhs, tail, cfg));
        }
    }
}

void run_branching(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    for (int N = 1; N <= cfg.max_size; ++N) {
        auto u = head(cfg.u, N, "u");
        SpectralVector first(u.begin(), u.end() - 1);
        for (const auto& mu : signatures_up_to(N, cfg.max_part)) {
            ExactScalar lhs = F_sym(p, mu, u);
            ExactScalar split = 0;
            for (const auto& kappa : interlacing_below(mu, 1)) {
                ExactScalar f = skew_F_one_row(p, kappa, mu, u.back());
                if (f != 0) split += f * F_value(p, kappa, first);
            }
            rep.instances.push_back(finish("F split N=" + std::to_string(N) + " mu=" + mu.str(), lhs, split, 0, cfg));
            rep.instances.push_back(
                finish("F paths N=" + std::to_string(N) + " mu=" + mu.str(), lhs, skew_F(p, Signature{}, mu, u), 0, cfg));
        }
        auto v = head(cfg.v, N, "v");
        SpectralVector vfirst(v.begin(), v.end() - 1);
        for (int n = 0; n <= cfg.max_size; ++n) {
            for (const auto& nu : signatures_up_to(n, cfg.max_part)) {
                ExactScalar lhs = G_sym(p, nu, v);
                ExactScalar split = 0;
                for (const auto& kappa : interlacing_below(nu, 0)) {
                    ExactScalar g = skew_G_one_row(p, kappa, nu, v.back());
                    if (g != 0) split += g * G_value(p, kappa, vfirst);
                }
                std::string tag = "N=" + std::to_string(N) + " nu=" + nu.str();
                rep.instances.push_back(finish("G split " + tag, lhs, split, 0, cfg));
                Signature bottom(std::vector<int>(static_cast<std::size_t>(n), 0));
                rep.instances.push_back(finish("G paths " + tag, lhs, skew_G(p, bottom, nu, v), 0, cfg));
            }
        }
    }
}

void run_shift(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    for (int M = 1; M <= cfg.max_size; ++M) {
        auto u = head(cfg.u, M, "u");
        FEvaluator F(p, u);
        ExactScalar ratio = 1;
        for (const auto& x : u) ratio *= arrow_ratio(p, x);
        for (const auto& mu : signatures_up_to(M, cfg.max_part)) {
            for (int r = 0; r <= 3; ++r) {
                rep.instances.push_back(finish("M=" + std::to_string(M) + " mu=" + mu.str() + " r=" + std::to_string(r),
                                               F(mu.shifted(r)), pow(ratio, r) * F(mu), 0, cfg));
            }
        }
    }
}

void run_eigenrelation(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    const ExactScalar v = head(cfg.v, 1, "v")[0];
    const ExactScalar av = abs(arrow_ratio(p, v));
    for (int m = 1; m <= cfg.max_size; ++m) {
        auto u = head(cfg.u, m, "u");
        auto z = head(cfg.z, m, "z");
        FEvaluator Fu(p, u);
        FEvaluator Fz(p, z);
        GeometricBound zb{Fz.prefactor_bound(), Fz.ratio_bound()};
        ExactScalar eig = pair_product(p, z, {v}) / pair_product(p, u, {v});
        for (const auto& mu : signatures_up_to(m, cfg.max_part)) {
            const int top = mu.largest();
            ExactScalar lhs = 0, tail = 0;
            ExactScalar Fmu = Fu(mu);
            if (Fmu == 0) throw DegenerateParameter("F_mu(u) vanishes, so the eigenfunction is undefined");
            // Q(mu -> nu) Psi_nu = pref G^c_{nu/mu}(v) F_nu(z) / F_mu(u).
            const ExactScalar pref = 1 / (pair_product(p, u, {v}) * Fmu);
            for (const auto& nu : interlacing_above(mu, 0, top + cfg.cutoff)) {
                ExactScalar g = skew_G_one_row(p, mu, nu, v);
                if (g == 0) continue;
                g *= c_factor(p, nu) / c_factor(p, mu);
                lhs += pref * g * Fz(nu);
                if (nu.largest() == top + 1) tail += abs(pref) * free_part_tail(abs(g), zb, nu.size() - 1, av, cfg.cutoff);
            }
            ExactScalar rhs = eig * Fz(mu) / Fmu;
            rep.instances.push_back(finish("m=" + std::to_string(m) + " mu=" + mu.str(), lhs, rhs, tail, cfg));
        }
    }
}

void run_commutation(const IdentityConfig& cfg, IdentityReport& rep) {
    const auto& p = cfg.params;
    const ExactScalar v = head(cfg.v, 1, "v")[0];
    for (int m = 0; m < cfg.max_size; ++m) {
        auto all = head(cfg.u, m + 1, "u");
        SpectralVector u(all.begin(), all.end() - 1);
        const ExactScalar un = all.back();
        const ExactScalar r = abs(arrow_ratio(p, v) * arrow_ratio(p, un));
        for (const auto& nu : signatures_up_to(m + 1, cfg.max_part)) {
            for (const auto& mu : signatures_up_to(m, cfg.max_part)) {
                const int top = std::max(nu.largest(), mu.largest());
                ExactScalar lhs = 0, tail = 0;
                for (const auto& kappa : interlacing_above(nu, 0, top + cfg.cutoff)) {
                    ExactScalar a = kernel_lambda_minus(p, u, un, kappa, mu);
                    if (a == 0) continue;
                    ExactScalar term = kernel_q_circ(p, all, v, nu, kappa) * a;
                    lhs += term;
                    if (kappa.largest() == top + 1) tail += geometric_tail(term, r, cfg.cutoff);
                }
                ExactScalar rhs = 0;
                for (const auto& lambda : interlacing_below(nu, 1)) {
                    ExactScalar a = kernel_lambda_minus(p, u, un, nu, lambda);
                    if (a != 0) rhs += a * kernel_q_circ(p, u, v, lambda, mu);
                }
                rep.instances.push_back(finish("nu=" + nu.str() + " mu=" + mu.str(), lhs, rhs, tail, cfg));
            }
        }
    }
}

void run_recombination(const IdentityConfig& cfg, IdentityReport& rep) {
    const ExactScalar qhat = 1 / cfg.params.q;
    for (int l = 1; l <= static_cast<int>(cfg.z.size()); ++l) {
        std::vector<ExactScalar> X(cfg.z.begin(), cfg.z.begin() + l);
        auto [lhs, rhs] = recombination_sides(qhat, X);
        rep.instances.push_back(finish("l=" + std::to_string(l), lhs, rhs, 0, cfg));
    }
}

}  // namespace

IdentityKind parse_identity_kind(const std::string& name) {
    for (const auto& [kind, text] : kind_names()) {
        if (text == name) return kind;
    }
    throw ArgumentError("unknown identity suite: " + name);
}

std::string identity_kind_name(IdentityKind kind) {
    for (const auto& [k, text] : kind_names()) {
        if (k == kind) return text;
    }
    return "unknown";
}

const std::vector<IdentityKind>& all_identity_kinds() {
    static const std::vector<IdentityKind> kinds = [] {
        std::vector<IdentityKind> out;
        for (const auto& entry : kind_names()) out.push_back(entry.first);
        return out;
    }();
    return kinds;
}

bool IdentityReport::all_pass() const {
    return std::all_of(instances.begin(), instances.end(), [](const IdentityInstance& i) { return i.pass; });
}

GeometricBound F_bound(const ModelParams& p, const SpectralVector& u) {
    FEvaluator F(p, u);
    return {F.prefactor_bound(), F.ratio_bound()};
}

GeometricBound G_conj_bound(const ModelParams& p, const SpectralVector& v, int n) {
    const ExactScalar& s = p.s_value();
    const ExactScalar& q = p.q;
    const int N = static_cast<int>(v.size());
    ExactScalar denom_v = 1;
    ExactScalar p1 = 1;
    for (const auto& x : v) {
        ExactScalar d = 1 - s * x;
        if (d == 0 || x == s) throw DegenerateParameter("singular spectral point in the G bound");
        denom_v *= abs(d);
        p1 *= std::max<ExactScalar>(ExactScalar(1), abs(x / (x - s)));
    }
    ExactScalar worst = 0;
    for (int k = 0; k <= n; ++k) {
        if (N < n - k) continue;
        ExactScalar den = q_pochhammer(q, q, N - n + k) * q_pochhammer(p.s_sq, q, k);
        if (den == 0) throw DegenerateParameter("vanishing Pochhammer factor in the G bound");
        ExactScalar pref = abs(q_pochhammer(p.s_sq, q, n) / den) * abs(pow(1 - q, N)) / denom_v;
        ExactScalar p2 = 1;
        ExactScalar qk = pow(q, k);
        for (const auto& x : v) p2 *= std::max<ExactScalar>(ExactScalar(1), abs(1 - s * qk * x));
        worst = std::max<ExactScalar>(worst, pref * p2);
    }
    Signature bottom(std::vector<int>(static_cast<std::size_t>(n), 0));
    ExactScalar K = worst * cross_abs_sum(q, v) * p1 * c_ratio_bound(p, n) / abs(c_factor(p, bottom));
    return {K, max_abs_ratio(p, v)};
}

std::pair<ExactScalar, ExactScalar> recombination_sides(const ExactScalar& qhat, const std::vector<ExactScalar>& X) {
    const int l = static_cast<int>(X.size());
    ExactScalar lhs = 0;
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
        int k = __builtin_popcount(mask);
        ExactScalar term = pow(qhat, static_cast<long>(l - k) * (l - k + 1) / 2);
        int j = 0;
        for (int i = 1; i <= l; ++i) {
            if (mask >> (i - 1) & 1u) {
                ++j;
                term *= X[static_cast<std::size_t>(i - 1)] - pow(qhat, i - j + 1);
            }
        }
        lhs += term;
    }
    ExactScalar rhs = 1;
    for (const auto& x : X) rhs *= x;
    return {lhs, rhs};
}

IdentityReport identity_suite(IdentityKind kind, const IdentityConfig& config) {
    IdentityReport rep;
    rep.suite = identity_kind_name(kind);
    switch (kind) {
        case IdentityKind::cauchy: run_cauchy(config, rep); break;
        case IdentityKind::skew_cauchy: run_skew_cauchy(config, rep); break;
        case IdentityKind::pieri_F: run_pieri_F(config, rep); break;
        case IdentityKind::pieri_G: run_pieri_G(config, rep); break;
        case IdentityKind::branching: run_branching(config, rep); break;
        case IdentityKind::shift: run_shift(config, rep); break;
        case IdentityKind::eigenrelation: run_eigenrelation(config, rep); break;
        case IdentityKind::commutation: run_commutation(config, rep); break;
        case IdentityKind::moment_recombination: run_recombination(config, rep); break;
    }
    return rep;
}

}  // namespace vertexlab
