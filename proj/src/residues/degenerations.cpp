#include "vertexlab/errors.hpp"
#include "vertexlab/residues.hpp"

namespace vertexlab {

namespace {

void require_moment_points(const std::vector<int>& x) {
    if (x.empty()) throw ArgumentError("at least one moment point is needed");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 1) throw ArgumentError("moment points must be >= 1");
        if (i > 0 && x[i] > x[i - 1]) throw ArgumentError("moment points must be nonincreasing");
    }
}

// prod_{a<b} (w_a - w_b)/(w_a - q w_b).
LinearFactorExpression nested_cross(int l, const ExactScalar& q) {
    using LFE = LinearFactorExpression;
    LFE out = LFE::constant(1);
    for (int a = 0; a < l; ++a) {
        for (int b = a + 1; b < l; ++b) {
            out *= LFE::from_form(LinearForm::variable(a) - LinearForm::variable(b));
            out *= LFE::from_form(LinearForm::variable(a) - LinearForm::variable(b, q), -1);
        }
    }
    return out;
}

ExactScalar nested_prefactor(int l, const ExactScalar& q) { return pow(ExactScalar(-1), l) * pow(q, l * (l - 1) / 2); }

}  // namespace

ExactScalar q_moment_q_hahn(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& qJ, int n,
                            const std::vector<int>& x) {
    require_moment_points(x);
    if (!(q > 0 && q < 1)) throw RegimeError("q-Hahn moments need 0 < q < 1");
    if (!(s_sq < 0)) throw RegimeError("q-Hahn moments need s^2 < 0");
    if (n < 0) throw ArgumentError("negative number of steps");
    const int l = static_cast<int>(x.size());
    using LFE = LinearFactorExpression;
    // In z = w/s the contours surround 1, q, ..., and leave 0 and 1/s^2 outside.
    LFE integrand = nested_cross(l, q);
    for (int i = 0; i < l; ++i) {
        const LinearForm z = LinearForm::variable(i);
        const LinearForm damped = LinearForm::constant(1) - z * s_sq;
        integrand *= LFE::from_form(z, -1);
        const int e = x[static_cast<std::size_t>(i)] - 2 - n;
        if (e != 0) integrand *= LFE::from_form(damped, e);
        if (x[static_cast<std::size_t>(i)] > 1) integrand *= LFE::from_form(LinearForm::constant(1) - z, 1 - x[static_cast<std::size_t>(i)]);
        if (n != 0) integrand *= LFE::from_form(LinearForm::constant(1) - z * (qJ * s_sq), n);
    }
    ExponentialResidueSum sum(integrand, l, ExactScalar(1), q, false);
    return nested_prefactor(l, q) * sum.exact_value();
}

ApproxValue q_moment_q_boson(const ExactScalar& q, const ExactScalar& t, const std::vector<int>& x,
                             int precision_bits) {
    require_moment_points(x);
    if (!(q > 0 && q < 1)) throw RegimeError("q-Boson moments need 0 < q < 1");
    if (t < 0) throw ArgumentError("time must be nonnegative");
    const int l = static_cast<int>(x.size());
    using LFE = LinearFactorExpression;
    LFE integrand = nested_cross(l, q);
    for (int i = 0; i < l; ++i) {
        const LinearForm w = LinearForm::variable(i);
        integrand *= LFE::from_form(w, -1);
        if (x[static_cast<std::size_t>(i)] > 1) integrand *= LFE::from_form(w + ExactScalar(1), 1 - x[static_cast<std::size_t>(i)]);
    }
    ExponentialResidueSum sum(integrand, l, ExactScalar(-1), q, true);
    return evaluate_exponential_sum(sum.coefficients(), (1 - q) * t, nested_prefactor(l, q), precision_bits);
}

}  // namespace vertexlab
