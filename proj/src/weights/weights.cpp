#include "vertexlab/weights.hpp"

#include "vertexlab/errors.hpp"
#include "vertexlab/qseries.hpp"

namespace vertexlab {

ModelParams ModelParams::full(const ExactScalar& q, const ExactScalar& s) {
    if (q == 0 || s == 0) throw DegenerateParameter("q and s must be nonzero");
    return ModelParams{q, s * s, s};
}

ModelParams ModelParams::su_mode(const ExactScalar& q, const ExactScalar& s_sq) {
    if (q == 0 || s_sq == 0) throw DegenerateParameter("q and s must be nonzero");
    return ModelParams{q, s_sq, std::nullopt};
}

const ExactScalar& ModelParams::s_value() const {
    if (!s) throw ArgumentError("operation needs s itself, but only s^2 is stored");
    return *s;
}

FusedSpin FusedSpin::integer(const ExactScalar& q, int J) {
    if (J < 1) throw ArgumentError("fused spin J must be positive");
    return FusedSpin{pow(q, J), J};
}

namespace {

ExactScalar denominator(const ExactScalar& su) {
    ExactScalar d = 1 - su;
    if (d == 0) throw DegenerateParameter("su = 1 makes the vertex weights singular");
    return d;
}

bool unfused_state(const VertexState& st) {
    return st.i1 >= 0 && st.i2 >= 0 && (st.j1 == 0 || st.j1 == 1) && (st.j2 == 0 || st.j2 == 1) &&
           st.i1 + st.j1 == st.i2 + st.j2;
}

}  // namespace

ExactScalar weight_w(const ModelParams& p, const ExactScalar& u, const VertexState& st) {
    const ExactScalar& s = p.s_value();
    ExactScalar d = denominator(s * u);
    if (!unfused_state(st)) return 0;
    const ExactScalar& q = p.q;
    if (st.j1 == 0 && st.j2 == 0) return (1 - s * pow(q, st.i1) * u) / d;
    if (st.j1 == 0 && st.j2 == 1) return (1 - p.s_sq * pow(q, st.i2)) * u / d;
    if (st.j1 == 1 && st.j2 == 1) return (u - s * pow(q, st.i1)) / d;
    return (1 - pow(q, st.i2)) / d;
}

ExactScalar weight_w_conj(const ModelParams& p, const ExactScalar& u, const VertexState& st) {
    ExactScalar w = weight_w(p, u, st);
    if (w == 0 || st.i1 == st.i2) return w;
    ExactScalar den = q_pochhammer(p.q, p.q, st.i2) * q_pochhammer(p.s_sq, p.q, st.i1);
    if (den == 0) throw DegenerateParameter("vanishing (s^2;q) or (q;q) factor in the conjugation");
    return q_pochhammer(p.s_sq, p.q, st.i2) * q_pochhammer(p.q, p.q, st.i1) / den * w;
}

ExactScalar weight_L_su(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& su,
                        const VertexState& st) {
    ExactScalar d = denominator(su);
    if (!unfused_state(st)) return 0;
    if (st.j1 == 0 && st.j2 == 0) return (1 - pow(q, st.i1) * su) / d;
    if (st.j1 == 0 && st.j2 == 1) return -su * (1 - pow(q, st.i1)) / d;
    if (st.j1 == 1 && st.j2 == 1) return (s_sq * pow(q, st.i1) - su) / d;
    return (1 - s_sq * pow(q, st.i1)) / d;
}

ExactScalar weight_L(const ModelParams& p, const ExactScalar& u, const VertexState& st) {
    ExactScalar su = p.s ? ExactScalar(*p.s * u) : u;
    return weight_L_su(p.q, p.s_sq, su, st);
}

SixVertexTable six_vertex_weights(const ExactScalar& q, const ExactScalar& t) {
    if (t == 1) throw DegenerateParameter("t = 1 makes the six vertex weights singular");
    ExactScalar s_sq = 1 / q;
    SixVertexTable out;
    const auto& st = SixVertexTable::states();
    for (std::size_t i = 0; i < st.size(); ++i) out.values[i] = weight_L_su(q, s_sq, t, st[i]);
    return out;
}

const std::array<VertexState, 6>& SixVertexTable::states() {
    static const std::array<VertexState, 6> table{{
        {0, 0, 0, 0},
        {1, 0, 1, 0},
        {1, 0, 0, 1},
        {0, 1, 0, 1},
        {0, 1, 1, 0},
        {1, 1, 1, 1},
    }};
    return table;
}

std::pair<ExactScalar, ExactScalar> six_vertex_params_from_weights(const ExactScalar& b1, const ExactScalar& b2) {
    // b2 q^2 - (b1 + b2) q + b1 = (q - 1)(b2 q - b1), so q = b1 / b2.
    if (b2 == 0) throw DegenerateParameter("L(0,1;0,1) = 0 does not determine q");
    ExactScalar q = b1 / b2;
    if (q == b1) throw DegenerateParameter("weights do not determine t");
    ExactScalar t = (1 - b1) / (q - b1);
    return {q, t};
}

void require_higher_spin_regime(const ExactScalar& q, const ExactScalar& s, const std::vector<ExactScalar>& u) {
    if (!(q > 0 && q < 1)) throw RegimeError("regime violation: 0 < q < 1");
    if (!(s > -1 && s < 0)) throw RegimeError("regime violation: -1 < s < 0");
    for (const auto& x : u) {
        if (x < 0) throw RegimeError("regime violation: u_i >= 0");
    }
}

void require_six_vertex_regime(const ExactScalar& q, const std::vector<ExactScalar>& t) {
    if (!(q > 0 && q < 1)) throw RegimeError("regime violation: 0 < q < 1");
    for (const auto& x : t) {
        // t = su with s = q^{-1/2}, so u > q^{-1/2} is t > 1/q.
        if (!(x * q > 1)) throw RegimeError("regime violation: u_i > q^{-1/2}");
    }
}

}  // namespace vertexlab
