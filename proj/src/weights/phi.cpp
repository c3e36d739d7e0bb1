#include "vertexlab/errors.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/weights.hpp"

namespace vertexlab {

namespace {

// Integer e with q^e = x and |e| <= limit, if any.
std::optional<int> q_log(const ExactScalar& q, const ExactScalar& x, int limit) {
    if (x == 0 || q == 0) return std::nullopt;
    if (abs(q) == 1) {
        if (x == 1) return 0;
        if (x == q) return 1;
        return std::nullopt;
    }
    ExactScalar ax = abs(x);
    // Walk toward |x| from 1 in the direction that changes |q^e| monotonically.
    for (int sign : {1, -1}) {
        ExactScalar step = sign == 1 ? q : ExactScalar(1 / q);
        ExactScalar cur = 1;
        bool shrinking = abs(step) < 1;
        for (int e = 0; e <= limit; ++e) {
            if (cur == x) return sign * e;
            ExactScalar ac = abs(cur);
            if (shrinking ? ac < ax : ac > ax) break;
            cur *= step;
        }
    }
    return std::nullopt;
}

}  // namespace

ExactScalar phi_beta_binomial(const PhiArgs& a, int j, int m) {
    if (m < 0 || j < 0 || j > m) throw ArgumentError("phi needs 0 <= j <= m");
    ExactScalar den = q_pochhammer(a.nu, a.q, m) * q_pochhammer(a.q, a.q, j) * q_pochhammer(a.q, a.q, m - j);
    if (den == 0) throw DegenerateParameter("vanishing denominator in phi");
    // mu^j (nu/mu;q)_j written as prod (mu - nu q^k) so that mu = 0 is allowed.
    ExactScalar head = 1, qk = 1;
    for (int k = 0; k < j; ++k) {
        head *= a.mu - a.nu * qk;
        qk *= a.q;
    }
    return head * q_pochhammer(a.mu, a.q, m - j) * q_pochhammer(a.q, a.q, m) / den;
}

std::optional<int> phi_exponent(const PhiArgs& a, int limit) {
    if (a.nu == 0) return std::nullopt;
    auto e = q_log(a.q, a.mu / a.nu, limit);
    if (e && *e >= 0) return e;
    return std::nullopt;
}

ExactScalar phi_beta_binomial_infinite(const PhiArgs& a, int j) {
    auto J = phi_exponent(a);
    if (!J) throw ArgumentError("phi(.|infinity) is supported only for mu = q^J nu");
    if (j < 0) throw ArgumentError("phi needs j >= 0");
    ExactScalar den = q_pochhammer(a.q, a.q, j) * q_pochhammer(a.nu, a.q, *J);
    if (den == 0) throw DegenerateParameter("vanishing denominator in phi");
    return pow(a.mu, j) * q_pochhammer(pow(a.q, -*J), a.q, j) / den;
}

bool phi_nonneg_region(const PhiArgs& a, std::optional<int> m) {
    const ExactScalar& q = a.q;
    const ExactScalar& mu = a.mu;
    const ExactScalar& nu = a.nu;
    if (q > 0 && q < 1 && mu >= 0 && mu <= 1 && nu <= mu) return true;
    if (q > 0 && q < 1 && nu <= 0 && phi_exponent(a)) return true;
    if (!m) return false;
    if (q > 1 && nu < 0 && mu != 0) {
        auto e = q_log(q, nu / mu, 4096);
        if (e && *e >= 0) return true;
    }
    if (q > 0) {
        auto em = q_log(q, mu, 4096);
        auto en = q_log(q, nu, 4096);
        if (em && en) {
            if (*em >= 0 && *en >= 0 && *en >= *em) return true;
            if (*em <= 0 && *en <= 0 && *en <= -*m && *en <= *em) return true;
        }
    }
    return false;
}

}  // namespace vertexlab
