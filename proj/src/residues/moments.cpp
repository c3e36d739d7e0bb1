#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"
#include "vertexlab/residues.hpp"

#include <algorithm>

namespace vertexlab {

namespace {

SpectralVector su_values(const MomentQuery& query) {
    if (query.params.su_mode_only()) return query.u;
    SpectralVector out;
    for (const auto& u : query.u) out.push_back(query.params.s_value() * u);
    return out;
}

// (u - s)/(u - 1/s) written through su.
ExactScalar power_base(const ExactScalar& s_sq, const ExactScalar& su) { return (s_sq - su) / (1 - su); }

}  // namespace

void require_generic(const MomentQuery& query) {
    const auto su = su_values(query);
    const auto& q = query.params.q;
    for (std::size_t i = 0; i < su.size(); ++i) {
        if (su[i] == 1) throw DegenerateParameter("u_i = 1/s puts a pole on the integrand");
        for (std::size_t j = 0; j < su.size(); ++j) {
            if (i != j && su[i] == su[j]) throw DegenerateParameter("spectral parameters must be pairwise distinct");
            if (su[i] == q * su[j]) throw DegenerateParameter("u_i = q u_j is excluded");
        }
    }
    for (std::size_t i = 0; i < query.x.size(); ++i) {
        if (query.x[i] < 1) throw ArgumentError("moment points must be >= 1");
        if (i > 0 && query.x[i] > query.x[i - 1]) throw ArgumentError("moment points must be nonincreasing");
    }
}

ExactScalar res_sigma(const MomentQuery& query, const std::vector<int>& sigma) {
    const auto su = su_values(query);
    const auto& q = query.params.q;
    const int n = static_cast<int>(su.size());
    const int l = static_cast<int>(sigma.size());
    if (l != static_cast<int>(query.x.size())) throw ArgumentError("sigma must assign every moment point");
    std::vector<bool> in_image(static_cast<std::size_t>(n), false);
    for (int j : sigma) {
        if (j < 0 || j >= n || in_image[static_cast<std::size_t>(j)]) throw ArgumentError("sigma must be injective");
        in_image[static_cast<std::size_t>(j)] = true;
    }
    auto at = [&](int j) -> const ExactScalar& { return su[static_cast<std::size_t>(j)]; };
    auto cross = [&](const ExactScalar& a, const ExactScalar& b) -> ExactScalar {
        if (a == b) throw DegenerateParameter("coinciding spectral parameters in a residue");
        return (a - q * b) / (a - b);
    };
    ExactScalar out = pow(1 - q, l) * pow(q, l * (l - 1) / 2);
    for (int i = 0; i < l; ++i) {
        const auto& u = at(sigma[static_cast<std::size_t>(i)]);
        if (u == 1) throw DegenerateParameter("u_i = 1/s puts a pole on the integrand");
        out *= pow(power_base(query.params.s_sq, u), query.x[static_cast<std::size_t>(i)] - 1);
    }
    for (int a = 0; a < n; ++a) {
        if (!in_image[static_cast<std::size_t>(a)]) continue;
        for (int b = 0; b < n; ++b) {
            if (!in_image[static_cast<std::size_t>(b)]) out *= cross(at(a), at(b));
        }
    }
    for (int a = 0; a < l; ++a) {
        for (int b = a + 1; b < l; ++b) out *= cross(at(sigma[static_cast<std::size_t>(a)]), at(sigma[static_cast<std::size_t>(b)]));
    }
    return out;
}

ExactScalar centered_moment(const MomentQuery& query) {
    require_generic(query);
    ExactScalar out = 0;
    for_each_injection(static_cast<int>(query.x.size()), static_cast<int>(query.u.size()),
                       [&](const std::vector<int>& sigma) { out += res_sigma(query, sigma); });
    return out;
}

LinearFactorExpression centered_moment_integrand(const MomentQuery& query) {
    const ExactScalar& s = query.params.s_value();
    const auto& q = query.params.q;
    const int l = static_cast<int>(query.x.size());
    using LFE = LinearFactorExpression;
    LFE out = LFE::constant(1);
    for (int a = 0; a < l; ++a) {
        for (int b = a + 1; b < l; ++b) {
            out *= LFE::from_form(LinearForm::variable(a) - LinearForm::variable(b));
            out *= LFE::from_form(LinearForm::variable(a) - LinearForm::variable(b, q), -1);
        }
    }
    for (int i = 0; i < l; ++i) {
        const LinearForm w = LinearForm::variable(i);
        out *= LFE::from_form(w, -1);
        const int e = query.x[static_cast<std::size_t>(i)] - 1;
        if (e != 0) {
            out *= LFE::from_form(LinearForm::constant(1) - w * s, e);
            out *= LFE::from_form(LinearForm::constant(1) - w * (1 / s), -e);
        }
        for (const auto& u : query.u) {
            out *= LFE::from_form(LinearForm::constant(1) - w * (q * u));
            out *= LFE::from_form(LinearForm::constant(1) - w * u, -1);
        }
    }
    return out;
}

ExactScalar centered_moment_by_residues(const MomentQuery& query) {
    require_generic(query);
    const int l = static_cast<int>(query.x.size());
    const auto& q = query.params.q;
    const LinearFactorExpression integrand = centered_moment_integrand(query);
    ExactScalar sum = 0;
    for_each_injection(l, static_cast<int>(query.u.size()), [&](const std::vector<int>& sigma) {
        LinearFactorExpression r = integrand;
        for (int i = 0; i < l && !r.is_zero(); ++i) {
            r = residue_at_simple_pole(r, i, 1 / query.u[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])]);
        }
        sum += r.evaluate({});
    });
    return pow(ExactScalar(-1), l) * pow(q, l * (l - 1) / 2) * sum;
}

ExactScalar q_moment(const MomentQuery& query) {
    require_generic(query);
    const auto& q = query.params.q;
    const int l = static_cast<int>(query.x.size());
    if (l > 30) throw ArgumentError("too many moment points for the subset expansion");
    ExactScalar total = 0;
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
        MomentQuery sub{query.params, query.u, {}};
        int k = 0;
        long norm = 0;
        for (int i = 0; i < l; ++i) {
            if (mask & (1u << i)) {
                sub.x.push_back(query.x[static_cast<std::size_t>(i)]);
                ++k;
                norm += i + 1;
            }
        }
        // With X_i = q^{-i} q^{h(x_i)} and qhat = 1/q each subset contributes
        // (-1)^k q^{kl - k(k-1)/2 - |I|} times its centered moment.
        ExactScalar centered = k == 0 ? ExactScalar(1) : centered_moment(sub);
        total += pow(ExactScalar(-1), k) * pow(q, static_cast<long>(k) * l - k * (k - 1) / 2 - norm) * centered;
    }
    return total;
}

ExactScalar q_moment_six_vertex(const ExactScalar& q, const SpectralVector& t, const std::vector<int>& x) {
    require_six_vertex_regime(q, t);
    return q_moment(MomentQuery{ModelParams::su_mode(q, 1 / q), t, x});
}

ExactScalar r_coefficient_by_injections(const Signature& lambda, const std::vector<int>& x, const ExactScalar& q) {
    const int l = static_cast<int>(x.size());
    ExactScalar sum = 0;
    for_each_injection(l, lambda.length(), [&](const std::vector<int>& sigma) {
        long exponent = 0;
        for (int i = 0; i < l; ++i) {
            const int j = sigma[static_cast<std::size_t>(i)];
            if (lambda[j] < x[static_cast<std::size_t>(i)] - 1) return;
            exponent += j + 1;
            for (int p = 0; p < i; ++p) exponent += sigma[static_cast<std::size_t>(p)] > j ? 1 : 0;
        }
        sum += pow(q, exponent);
    });
    return pow(q, -l) * pow(1 - q, l) * sum;
}

ExactScalar r_coefficient_product(const Signature& lambda, const std::vector<int>& x, const ExactScalar& q) {
    ExactScalar out = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out *= pow(q, static_cast<long>(i)) - pow(q, height(lambda, x[i] - 1));
    }
    return out;
}

std::pair<ExactScalar, ExactScalar> injection_shift_sides(const std::vector<ExactScalar>& X, const std::vector<int>& bounds) {
    const int k = static_cast<int>(bounds.size());
    int top = 0;
    for (std::size_t p = 0; p < bounds.size(); ++p) {
        if (bounds[p] < 1) throw ArgumentError("bounds must be positive");
        if (p > 0 && bounds[p] < bounds[p - 1]) throw ArgumentError("bounds must be nondecreasing");
        top = std::max(top, bounds[p]);
    }
    if (static_cast<int>(X.size()) <= top) throw ArgumentError("not enough indeterminates");
    ExactScalar lhs = 0;
    for_each_injection(k, top, [&](const std::vector<int>& sigma) {
        ExactScalar term = 1;
        for (int p = 0; p < k; ++p) {
            const int i = sigma[static_cast<std::size_t>(p)] + 1;
            if (i > bounds[static_cast<std::size_t>(p)]) return;
            int inv = 0;
            for (int r = 0; r < p; ++r) inv += sigma[static_cast<std::size_t>(r)] + 1 > i ? 1 : 0;
            term *= X[static_cast<std::size_t>(i + inv)];
        }
        lhs += term;
    });
    ExactScalar rhs = 1;
    for (int p = 0; p < k; ++p) {
        ExactScalar part = 0;
        for (int i = p + 1; i <= bounds[static_cast<std::size_t>(p)]; ++i) part += X[static_cast<std::size_t>(i)];
        rhs *= part;
    }
    return {lhs, rhs};
}

}  // namespace vertexlab
