#pragma once

#include "vertexlab/scalar.hpp"

namespace vertexlab {

// (z;q)_n with the negative-n branch prod_{k=0}^{-n-1} (1 - z q^{n+k})^{-1}.
ExactScalar q_pochhammer(const ExactScalar& z, const ExactScalar& q, long n);

// (q;q)_n / ((q;q)_k (q;q)_{n-k}), computed by the Pascal-type recursion.
ExactScalar q_binomial(long n, long k, const ExactScalar& q);

// Partition function of q-exchangeable binary vectors: sum over h in {0,1}^J with
// |h| = j of q^{sum (r-1) h_r}, equal to q^{j(j-1)/2} q_binomial(J, j).
ExactScalar q_exchangeable_norm(long J, long j, const ExactScalar& q);

}  // namespace vertexlab
