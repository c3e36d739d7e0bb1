#pragma once

#include "vertexlab/linear_factor.hpp"
#include "vertexlab/signature.hpp"
#include "vertexlab/symfunc.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vertexlab {

// E prod q^{h(x_i)} under M_{u;rho} at time n = u.size(). In su mode the entries
// of u are the products s u_i.
struct MomentQuery {
    ModelParams params;
    SpectralVector u;
    std::vector<int> x;  // x_1 >= ... >= x_l >= 1
};

struct CorrelationQuery {
    ModelParams params;  // needs s
    SpectralVector u;
    Signature theta;
};

// Pairwise distinct su_i, su_i != q su_j, su_i != 1 and x nonincreasing with x_l >= 1.
void require_generic(const MomentQuery& query);

// Closed-form residue of an injective assignment sigma: {0..l-1} -> {0..n-1}.
ExactScalar res_sigma(const MomentQuery& query, const std::vector<int>& sigma);
// Calls f(sigma) for every injective map {0..l-1} -> {0..n-1}.
void for_each_injection(int l, int n, const std::function<void(const std::vector<int>&)>& f);

// E prod (q^{i-1} - q^{h(x_i)}) as the sum of res_sigma.
ExactScalar centered_moment(const MomentQuery& query);
// The same quantity from the integrand in w_1..w_l, by iterated simple-pole residues
// at w_i = 1/u_{sigma(i)}. Needs s.
ExactScalar centered_moment_by_residues(const MomentQuery& query);
LinearFactorExpression centered_moment_integrand(const MomentQuery& query);

// E prod q^{h(x_i)} from centered moments of subsequences of x.
ExactScalar q_moment(const MomentQuery& query);

// Stochastic six vertex model in (q, t) form: s^2 = 1/q and su_i = t_i.
ExactScalar q_moment_six_vertex(const ExactScalar& q, const SpectralVector& t, const std::vector<int>& x);

// E Q_{theta + 1^k} by residues of the symmetrized correlation integrand.
ExactScalar q_correlation_exact(const CorrelationQuery& query);
LinearFactorExpression correlation_integrand(const CorrelationQuery& query);

// Nested residues for integrals over q-nested contours around a point c: variable
// k (0-based, of l) is integrated after variables k+1..l-1 and picks the poles
// c q^j, j = 0..l-1-k. Each variable may carry a factor exp(a w).
class ExponentialResidueSum {
public:
    // value = sum over keys (j, P) of coefficient * a^j * exp(a P)
    using Key = std::pair<int, ExactScalar>;

    ExponentialResidueSum(LinearFactorExpression integrand, int variables, const ExactScalar& center,
                          const ExactScalar& q, bool exponential);
    const std::map<Key, ExactScalar>& coefficients() const { return coefficients_; }
    // Exact value when no exponential factor is present.
    ExactScalar exact_value() const;

private:
    std::map<Key, ExactScalar> coefficients_;
};

// q-Hahn system from a reservoir at 1 after n steps with parameters (q, s^2, q^J).
ExactScalar q_moment_q_hahn(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& qJ, int n,
                            const std::vector<int>& x);

// Floating result of a transcendental formula.
struct ApproxValue {
    double value = 0;
    std::string decimal;  // at the working precision
    int precision_bits = 0;
};

// sum_k c_k a^{j_k} exp(a P_k) at the given precision; throws TruncationError when
// doubling the precision changes the result beyond the working precision.
ApproxValue evaluate_exponential_sum(const std::map<ExponentialResidueSum::Key, ExactScalar>& terms,
                                     const ExactScalar& a, const ExactScalar& prefactor, int precision_bits);

// q-Boson from a reservoir at 1, at time t.
ApproxValue q_moment_q_boson(const ExactScalar& q, const ExactScalar& t, const std::vector<int>& x,
                             int precision_bits = 128);
// ASEP from step data y_i(0) = -i, one-point moment E q^{h(x)}.
ApproxValue q_moment_asep(const ExactScalar& q, const ExactScalar& t, const std::vector<int>& x,
                          int precision_bits = 128);

// q^{-l} (1-q)^l times the sum over injective sigma (1-based) with lambda_{sigma(i)} >= x_i - 1
// of q^{sigma(1) + ... + sigma(l) + inv(sigma)}.
ExactScalar r_coefficient_by_injections(const Signature& lambda, const std::vector<int>& x, const ExactScalar& q);
// prod_i (q^{i-1} - q^{h_lambda(x_i - 1)}).
ExactScalar r_coefficient_product(const Signature& lambda, const std::vector<int>& x, const ExactScalar& q);

// Sum over pairwise distinct (i_1..i_k), 1 <= i_p <= n_p with n_1 <= ... <= n_k, of prod_p X_{i_p + inv_p} and
// the product prod_p (X_p + ... + X_{n_p}); X is 1-based (X[0] unused).
std::pair<ExactScalar, ExactScalar> injection_shift_sides(const std::vector<ExactScalar>& X,
                                                          const std::vector<int>& bounds);

}  // namespace vertexlab
