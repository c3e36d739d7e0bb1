#include "vertexlab/errors.hpp"
#include "vertexlab/residues.hpp"

#include <algorithm>
#include <numeric>

namespace vertexlab {

LinearFactorExpression correlation_integrand(const CorrelationQuery& query) {
    const ExactScalar& s = query.params.s_value();
    const auto& q = query.params.q;
    const Signature& theta = query.theta;
    const int k = theta.length();
    using LFE = LinearFactorExpression;
    auto w = [](int i) { return LinearForm::variable(i); };

    // F^c_theta(1/w_1, ..., 1/w_k) without the (1-q)^k c(theta) / prod (1 - s/w_i) prefactor.
    LFE symmetrized;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        LFE term = LFE::constant(1);
        for (int a = 0; a < k; ++a) {
            const int pa = perm[static_cast<std::size_t>(a)];
            for (int b = a + 1; b < k; ++b) {
                const int pb = perm[static_cast<std::size_t>(b)];
                term *= LFE::from_form(w(pb) - w(pa) * q);
                term *= LFE::from_form(w(pb) - w(pa), -1);
            }
            const int e = theta[a];
            if (e != 0) {
                term *= LFE::from_form(LinearForm::constant(1) - w(pa) * s, e);
                term *= LFE::from_form(w(pa) + (-s), -e);
            }
        }
        symmetrized += term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    LFE out = symmetrized;
    for (int a = 0; a < k; ++a) {
        out *= LFE::from_form(w(a) + (-s), -1);
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            out *= LFE::from_form(w(a) - w(b));
            out *= LFE::from_form(w(a) - w(b) * q, -1);
        }
        for (const auto& u : query.u) {
            out *= LFE::from_form(LinearForm::constant(1) - w(a) * (q * u));
            out *= LFE::from_form(LinearForm::constant(1) - w(a) * u, -1);
        }
    }
    ExactScalar factorial = 1;
    for (int i = 2; i <= k; ++i) factorial *= i;
    const ExactScalar prefactor = pow(ExactScalar(-1), k) * pow(q, k * (k + 1) / 2) / factorial *
                                  pow(-s, theta.size()) * c_factor(query.params, theta);
    return (out * prefactor).combined();
}

ExactScalar q_correlation_exact(const CorrelationQuery& query) {
    const int k = query.theta.length();
    const int n = static_cast<int>(query.u.size());
    if (k > n) return 0;
    MomentQuery generic{query.params, query.u, {}};
    require_generic(generic);
    const LinearFactorExpression integrand = correlation_integrand(query);
    ExactScalar sum = 0;
    for_each_injection(k, n, [&](const std::vector<int>& tau) {
        LinearFactorExpression r = integrand;
        for (int i = 0; i < k && !r.is_zero(); ++i) {
            r = residue_at_simple_pole(r, i, 1 / query.u[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])]);
        }
        sum += r.evaluate({});
    });
    return sum;
}

}  // namespace vertexlab
