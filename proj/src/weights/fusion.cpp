#include "vertexlab/errors.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/weights.hpp"

#include <vector>

namespace vertexlab {

namespace {

// Terminating 4phi3 with the lower Pochhammer symbols multiplied out:
// sum_k z^k (q^{-n};q)_k/(q;q)_k prod (a_i;q)_k prod (b_i q^k;q)_{n-k}.
ExactScalar regularized_4phi3(int n, const std::array<ExactScalar, 3>& a, const std::array<ExactScalar, 3>& b,
                              const ExactScalar& q, const ExactScalar& z) {
    ExactScalar total = 0;
    ExactScalar qn = pow(q, -n);
    for (int k = 0; k <= n; ++k) {
        ExactScalar term = pow(z, k) * q_pochhammer(qn, q, k) / q_pochhammer(q, q, k);
        for (const auto& ai : a) term *= q_pochhammer(ai, q, k);
        if (term == 0) continue;
        for (const auto& bi : b) term *= q_pochhammer(bi * pow(q, k), q, n - k);
        total += term;
    }
    return total;
}

void check_fused_state(const FusedSpin& spin, const VertexState& st) {
    if (st.i1 < 0 || st.i2 < 0 || st.j1 < 0 || st.j2 < 0) throw ArgumentError("negative multiplicity");
    if (spin.J && (st.j1 > *spin.J || st.j2 > *spin.J)) throw ArgumentError("horizontal multiplicity exceeds J");
}

}  // namespace

ExactScalar weight_L_fused_su(const ExactScalar& q, const ExactScalar& s_sq, const FusedSpin& spin,
                              const ExactScalar& su, const VertexState& st) {
    check_fused_state(spin, st);
    if (st.i1 + st.j1 != st.i2 + st.j2) return 0;
    const int i1 = st.i1, j1 = st.j1, i2 = st.i2, j2 = st.j2;
    const ExactScalar& qJ = spin.qJ;

    // w^{(J)} written through su and s^2, then multiplied by (-s)^{j2} and the conjugation factor.
    ExactScalar num = pow(s_sq, j2 - i1) * pow(su, i1) * pow(q, static_cast<long>(i1) * (i1 + 2 * j1 - 1) / 2) *
                      q_pochhammer(q, q, j1) * q_pochhammer(su / s_sq, q, j1 - i2);
    if (i1 % 2) num = -num;
    ExactScalar den = q_pochhammer(q, q, i1) * q_pochhammer(q, q, j2) * q_pochhammer(su, q, i1 + j1);
    if (den == 0) throw DegenerateParameter("vanishing denominator in the fused weight");
    std::array<ExactScalar, 3> upper{pow(q, -i2), qJ * su, q * s_sq / su};
    std::array<ExactScalar, 3> lower{s_sq, pow(q, 1 + j1 - i2), qJ * pow(q, 1 - i1 - j1)};
    ExactScalar phi = regularized_4phi3(i1, upper, lower, q, q);

    ExactScalar conj_den = q_pochhammer(q, q, i2) * q_pochhammer(s_sq, q, i1);
    if (conj_den == 0) throw DegenerateParameter("vanishing (s^2;q) or (q;q) factor in the conjugation");
    ExactScalar conj = q_pochhammer(s_sq, q, i2) * q_pochhammer(q, q, i1) / conj_den;
    return num / den * phi * conj;
}

ExactScalar weight_L_fused(const ModelParams& p, const FusedSpin& spin, const ExactScalar& u,
                           const VertexState& st) {
    ExactScalar su = p.s ? ExactScalar(*p.s * u) : u;
    return weight_L_fused_su(p.q, p.s_sq, spin, su, st);
}

ExactScalar weight_w_fused(const ModelParams& p, const FusedSpin& spin, const ExactScalar& u,
                           const VertexState& st) {
    const ExactScalar& s = p.s_value();
    ExactScalar L = weight_L_fused(p, spin, u, st);
    if (L == 0) return 0;
    ExactScalar den = q_pochhammer(p.s_sq, p.q, st.i2) * q_pochhammer(p.q, p.q, st.i1);
    if (den == 0) throw DegenerateParameter("vanishing (s^2;q) or (q;q) factor in the conjugation");
    return pow(-s, -st.j2) * q_pochhammer(p.q, p.q, st.i2) * q_pochhammer(p.s_sq, p.q, st.i1) / den * L;
}

ExactScalar weight_L_fused_at_s(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& qJ,
                                const VertexState& st) {
    if (st.i1 + st.j1 != st.i2 + st.j2 || st.j2 > st.i1 || st.j2 < 0) return 0;
    const int i1 = st.i1, j2 = st.j2;
    ExactScalar den = q_pochhammer(s_sq, q, i1) * q_pochhammer(q, q, j2) * q_pochhammer(q, q, i1 - j2);
    if (den == 0) throw DegenerateParameter("vanishing denominator in the product-form weight");
    return pow(s_sq * qJ, j2) * q_pochhammer(1 / qJ, q, j2) * q_pochhammer(s_sq * qJ, q, i1 - j2) *
           q_pochhammer(q, q, i1) / den;
}

ExactScalar fusion_collapse_oracle(const ModelParams& p, int J, const ExactScalar& u, int i1, int j1_total,
                                   int i2, int j2_total) {
    if (J < 1 || j1_total < 0 || j1_total > J || j2_total < 0 || j2_total > J) {
        throw ArgumentError("horizontal totals must lie in {0..J}");
    }
    ExactScalar su = p.s ? ExactScalar(*p.s * u) : u;
    const ExactScalar& q = p.q;
    std::vector<ExactScalar> row_su(static_cast<std::size_t>(J));
    for (int r = 0; r < J; ++r) row_su[static_cast<std::size_t>(r)] = su * pow(q, r);

    ExactScalar total = 0;
    for (int in = 0; in < (1 << J); ++in) {
        int count = 0, weight = 0;
        for (int r = 0; r < J; ++r) {
            if (in >> r & 1) {
                ++count;
                weight += r;
            }
        }
        if (count != j1_total) continue;
        ExactScalar p_in = pow(q, weight) / q_exchangeable_norm(J, j1_total, q);
        for (int out = 0; out < (1 << J); ++out) {
            if (__builtin_popcount(static_cast<unsigned>(out)) != j2_total) continue;
            ExactScalar prob = p_in;
            int vertical = i1;
            for (int r = 0; r < J && prob != 0; ++r) {
                int h_in = in >> r & 1, h_out = out >> r & 1;
                int next = vertical + h_in - h_out;
                if (next < 0) {
                    prob = 0;
                    break;
                }
                prob *= weight_L_su(q, p.s_sq, row_su[static_cast<std::size_t>(r)], {vertical, h_in, next, h_out});
                vertical = next;
            }
            if (vertical == i2) total += prob;
        }
    }
    return total;
}

}  // namespace vertexlab
