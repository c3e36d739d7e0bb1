#pragma once

#include "vertexlab/symfunc.hpp"

#include <string>
#include <vector>

namespace vertexlab {

enum class IdentityKind {
    cauchy,
    skew_cauchy,
    pieri_F,
    pieri_G,
    branching,
    shift,
    eigenrelation,
    commutation,
    moment_recombination,
};

IdentityKind parse_identity_kind(const std::string& name);
std::string identity_kind_name(IdentityKind kind);
const std::vector<IdentityKind>& all_identity_kinds();

struct IdentityConfig {
    ModelParams params;
    SpectralVector u;
    SpectralVector v;
    SpectralVector z;              // eigenfunction points; also the X's of the recombination identity
    int max_size = 2;              // M, N, m bounds
    int max_part = 2;              // largest part of the fixed signatures
    int cutoff = 30;               // free parts range up to (fixed bound) + cutoff
    ExactScalar tolerance = rational(1, 1000000000000);  // largest acceptable certified tail
};

struct IdentityInstance {
    std::string inputs;
    ExactScalar lhs;
    ExactScalar rhs;
    ExactScalar tail_bound;  // 0 for terminating identities
    bool pass = false;
};

struct IdentityReport {
    std::string suite;
    std::vector<IdentityInstance> instances;
    bool all_pass() const;
};

IdentityReport identity_suite(IdentityKind kind, const IdentityConfig& config);

// Bounds K, A with |G^c_nu(v)| <= K A^{|nu|} for every nu of length n.
struct GeometricBound {
    ExactScalar K;
    ExactScalar A;
};
GeometricBound G_conj_bound(const ModelParams& p, const SpectralVector& v, int n);
GeometricBound F_bound(const ModelParams& p, const SpectralVector& u);

// Both sides of sum_{I} qhat^{(l-k)(l-k+1)/2} prod_j (X_{i_j} - qhat^{i_j - j + 1}) = X_1 ... X_l.
std::pair<ExactScalar, ExactScalar> recombination_sides(const ExactScalar& qhat, const std::vector<ExactScalar>& X);

}  // namespace vertexlab
