#pragma once

#include "vertexlab/scalar.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vertexlab {

// Model parameters. In full mode s is stored; in su mode only s^2 is known and
// spectral arguments of the L-weights are the products su.
struct ModelParams {
    ExactScalar q;
    ExactScalar s_sq;
    std::optional<ExactScalar> s;

    static ModelParams full(const ExactScalar& q, const ExactScalar& s);
    static ModelParams su_mode(const ExactScalar& q, const ExactScalar& s_sq);

    bool su_mode_only() const { return !s.has_value(); }
    const ExactScalar& s_value() const;  // throws in su mode
};

// (i1, j1) incoming from below and left; (i2, j2) outgoing up and right.
struct VertexState {
    int i1 = 0;
    int j1 = 0;
    int i2 = 0;
    int j2 = 0;
};

struct FusedSpin {
    ExactScalar qJ;
    std::optional<int> J;

    static FusedSpin integer(const ExactScalar& q, int J);
    static FusedSpin generic(const ExactScalar& qJ) { return FusedSpin{qJ, std::nullopt}; }
};

// w_u of the higher spin model.
ExactScalar weight_w(const ModelParams& p, const ExactScalar& u, const VertexState& st);

// (s^2;q)_{i2}(q;q)_{i1} / ((q;q)_{i2}(s^2;q)_{i1}) * w_u.
ExactScalar weight_w_conj(const ModelParams& p, const ExactScalar& u, const VertexState& st);

// Stochastic weight L_u = (-s)^{j2} w^c_u. In su mode, u is interpreted as su.
ExactScalar weight_L(const ModelParams& p, const ExactScalar& u, const VertexState& st);

// L as a function of (q, s^2, su) only.
ExactScalar weight_L_su(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& su,
                        const VertexState& st);

// Fused stochastic weight L^{(J)}, rational in q^J, through (su, s^2).
ExactScalar weight_L_fused_su(const ExactScalar& q, const ExactScalar& s_sq, const FusedSpin& spin,
                              const ExactScalar& su, const VertexState& st);
ExactScalar weight_L_fused(const ModelParams& p, const FusedSpin& spin, const ExactScalar& u,
                           const VertexState& st);

// Fused w^{(J)} = (-s)^{-j2} (q;q)_{i2}(s^2;q)_{i1} / ((s^2;q)_{i2}(q;q)_{i1}) L^{(J)}; needs s.
ExactScalar weight_w_fused(const ModelParams& p, const FusedSpin& spin, const ExactScalar& u,
                           const VertexState& st);

// Product form of L^{(J)} at u = s.
ExactScalar weight_L_fused_at_s(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& qJ,
                                const VertexState& st);

// Stacks J unfused vertices with su, q su, ..., q^{J-1} su (bottom to top), feeds the
// q-exchangeable input with j1_total arrows from the left, and returns the probability
// of i2 arrows on top and j2_total arrows on the right.
ExactScalar fusion_collapse_oracle(const ModelParams& p, int J, const ExactScalar& u, int i1, int j1_total,
                                   int i2, int j2_total);

// q-deformed Beta-binomial distribution phi_{q,mu,nu}(j|m).
struct PhiArgs {
    ExactScalar q;
    ExactScalar mu;
    ExactScalar nu;
};
ExactScalar phi_beta_binomial(const PhiArgs& a, int j, int m);
// m = infinity; requires mu = q^J nu for an integer J >= 0.
ExactScalar phi_beta_binomial_infinite(const PhiArgs& a, int j);
// Returns the integer J with mu = q^J nu (0 <= J <= limit), if any.
std::optional<int> phi_exponent(const PhiArgs& a, int limit = 4096);
bool phi_nonneg_region(const PhiArgs& a, std::optional<int> m);

// Table ordering: L(0,0;0,0), L(1,0;1,0)=b1, L(1,0;0,1), L(0,1;0,1)=b2, L(0,1;1,0), L(1,1;1,1).
struct SixVertexTable {
    std::array<ExactScalar, 6> values;
    ExactScalar b1() const { return values[1]; }
    ExactScalar b2() const { return values[3]; }
    static const std::array<VertexState, 6>& states();
};
// t = su with s^2 = 1/q.
SixVertexTable six_vertex_weights(const ExactScalar& q, const ExactScalar& t);

// Solves L(0,1;0,1) = b2 and L(1,0;1,0) = b1 for (q, t).
std::pair<ExactScalar, ExactScalar> six_vertex_params_from_weights(const ExactScalar& b1, const ExactScalar& b2);

// X W and W~ X for one block (m below, n above), row-major.
using YangBaxterMatrix = std::array<ExactScalar, 16>;
std::pair<YangBaxterMatrix, YangBaxterMatrix> yang_baxter_sides(const ModelParams& p, const ExactScalar& u1,
                                                                 const ExactScalar& u2, int m, int n);

// Verifies the intertwining relation X W = W~ X for all 0 <= m <= m_max, 0 <= n <= n_max.
bool yang_baxter_check(const ModelParams& p, const ExactScalar& u1, const ExactScalar& u2, int m_max, int n_max);

// Checks the nonnegativity regime 0 < q < 1, -1 < s < 0 and u >= 0; throws RegimeError quoting the inequality.
void require_higher_spin_regime(const ExactScalar& q, const ExactScalar& s, const std::vector<ExactScalar>& u);
void require_six_vertex_regime(const ExactScalar& q, const std::vector<ExactScalar>& t);

}  // namespace vertexlab
