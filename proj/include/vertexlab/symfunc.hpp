#pragma once

#include "vertexlab/scalar.hpp"
#include "vertexlab/signature.hpp"
#include "vertexlab/weights.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vertexlab {

using SpectralVector = std::vector<ExactScalar>;

// (u - s) / (1 - s u), the per-step factor of a horizontal arrow run.
ExactScalar arrow_ratio(const ModelParams& p, const ExactScalar& u);

ExactScalar c_factor(const ModelParams& p, const Signature& nu);

// Symmetrization formulas; spectral points must be pairwise distinct.
ExactScalar F_sym(const ModelParams& p, const Signature& mu, const SpectralVector& u);
ExactScalar G_sym(const ModelParams& p, const Signature& nu, const SpectralVector& v);

// Symmetrization for distinct points, lattice paths otherwise.
ExactScalar F_value(const ModelParams& p, const Signature& mu, const SpectralVector& u);
ExactScalar G_value(const ModelParams& p, const Signature& nu, const SpectralVector& v);
// G^c_nu = c(nu) / c(0^n) G_nu, the conjugation relative to the bottom boundary 0^n.
ExactScalar G_conj_value(const ModelParams& p, const Signature& nu, const SpectralVector& v);

// Caches permutation cross terms and powers for repeated F_mu(u) at fixed u.
class FEvaluator {
public:
    FEvaluator(const ModelParams& p, SpectralVector u);
    ExactScalar operator()(const Signature& mu);
    // Upper bound K with |F_mu(u)| <= K * ratio_bound()^{|mu|} for every mu.
    ExactScalar prefactor_bound() const;
    ExactScalar ratio_bound() const;

private:
    const ExactScalar& power(std::size_t var, int k);

    ModelParams p_;
    SpectralVector u_;
    ExactScalar prefactor_;
    std::vector<std::vector<int>> perms_;
    std::vector<ExactScalar> cross_;
    std::vector<ExactScalar> ratios_;
    std::vector<std::vector<ExactScalar>> powers_;
};

// One-row transfer: F_{upper/lower}(u) has an arrow entering from the left,
// G_{upper/lower}(v) does not. Arguments are (lower, upper).
ExactScalar skew_F_one_row(const ModelParams& p, const Signature& lower, const Signature& upper, const ExactScalar& u);
ExactScalar skew_G_one_row(const ModelParams& p, const Signature& lower, const Signature& upper, const ExactScalar& v);

// Signatures one row above kappa that interlace it, with the length growing by `grow` (0 or 1)
// and the first part at most `top`.
std::vector<Signature> interlacing_above(const Signature& kappa, int grow, int top);
// Signatures one row below lambda that it interlaces, with the length shrinking by `drop` (0 or 1).
std::vector<Signature> interlacing_below(const Signature& lambda, int drop);

// Multi-row skew functions by branching over intermediate signatures; u_1 is the bottom row.
ExactScalar skew_F(const ModelParams& p, const Signature& lower, const Signature& upper, const SpectralVector& u);
ExactScalar skew_G(const ModelParams& p, const Signature& lower, const Signature& upper, const SpectralVector& v);

// Conjugated versions: multiplied by c(upper) / c(lower).
ExactScalar skew_F_conj(const ModelParams& p, const Signature& lower, const Signature& upper, const SpectralVector& u);
ExactScalar skew_G_conj(const ModelParams& p, const Signature& lower, const Signature& upper, const SpectralVector& v);

// Skew function at (u, qu, ..., q^{J-1}u) as one row of fused weights; with_left_input
// selects F (J arrows enter from the left) or G (none). q^J may be generic for G.
ExactScalar skew_fused_one_row(const ModelParams& p, const Signature& lower, const Signature& upper,
                               const ExactScalar& u, const FusedSpin& spin, bool with_left_input);

ExactScalar principal_F(const ModelParams& p, const Signature& mu, const ExactScalar& u, int M);
ExactScalar principal_G(const ModelParams& p, const Signature& nu, const ExactScalar& v, int N);
ExactScalar G_rho(const ModelParams& p, const Signature& nu);

// Measure M_{u;rho}(nu) = 1_{nu_n >= 1} (-s)^{|nu|-n} F^c_{nu - 1^n}(u).
// In su mode the entries of u are the products s u_i, which must be pairwise distinct.
struct MeasureSpec {
    ModelParams params;
    SpectralVector u;
};
void require_admissible(const MeasureSpec& spec);
ExactScalar measure_weight(const MeasureSpec& spec, const Signature& nu);

// All nu in Sign_n^+ with nu_n >= 1 and nu_1 <= cutoff with their weights.
struct WeightedSignature {
    Signature nu;
    ExactScalar weight;
};
std::vector<WeightedSignature> enumerate_measure(const MeasureSpec& spec, int cutoff);
// The nu with nu_1 = largest.
std::vector<WeightedSignature> enumerate_measure_layer(const MeasureSpec& spec, int largest);

// Markov kernels between measures.
ExactScalar kernel_lambda_minus(const ModelParams& p, const SpectralVector& u, const ExactScalar& u_new,
                                const Signature& nu, const Signature& mu);
ExactScalar kernel_lambda_circ(const ModelParams& p, const SpectralVector& v, const ExactScalar& v_new,
                               const Signature& lambda, const Signature& mu);
ExactScalar kernel_q_plus(const ModelParams& p, const ExactScalar& u, const SpectralVector& v, const Signature& lambda,
                          const Signature& nu);
ExactScalar kernel_q_circ(const ModelParams& p, const SpectralVector& u, const ExactScalar& v, const Signature& mu,
                          const Signature& nu);
// Specializations u = 0^m and v = rho.
ExactScalar kernel_q_circ_zero(const ModelParams& p, const ExactScalar& v, const Signature& mu, const Signature& nu);
ExactScalar kernel_q_plus_rho(const ModelParams& p, const ExactScalar& u, const Signature& lambda, const Signature& nu);

// sum_{N > C} binom(N + M - 1, M - 1) r^N, the tail of (1 - r)^{-M}.
ExactScalar multiset_geometric_tail(int M, const ExactScalar& r, int C);

}  // namespace vertexlab
