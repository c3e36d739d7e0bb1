#include "vertexlab/qseries.hpp"

#include "vertexlab/errors.hpp"

#include <vector>

namespace vertexlab {

ExactScalar q_pochhammer(const ExactScalar& z, const ExactScalar& q, long n) {
    ExactScalar out = 1;
    if (n > 0) {
        ExactScalar zq = z;
        for (long k = 0; k < n; ++k) {
            out *= 1 - zq;
            zq *= q;
        }
        return out;
    }
    if (n < 0) {
        ExactScalar zq = z * pow(q, n);
        for (long k = 0; k < -n; ++k) {
            ExactScalar f = 1 - zq;
            if (f == 0) throw DivisionByZero("vanishing factor in (z;q)_n with n < 0");
            out /= f;
            zq *= q;
        }
    }
    return out;
}

ExactScalar q_binomial(long n, long k, const ExactScalar& q) {
    if (n < 0 || k < 0 || k > n) throw ArgumentError("q_binomial requires 0 <= k <= n");
    // Row of the q-Pascal triangle: [n,k] = [n-1,k-1] + q^k [n-1,k].
    std::vector<ExactScalar> row{1};
    for (long m = 1; m <= n; ++m) {
        std::vector<ExactScalar> next(static_cast<std::size_t>(m + 1));
        ExactScalar qk = 1;
        for (long j = 0; j <= m; ++j) {
            ExactScalar v = 0;
            if (j >= 1) v += row[static_cast<std::size_t>(j - 1)];
            if (j < m) v += qk * row[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j)] = v;
            qk *= q;
        }
        row.swap(next);
    }
    return row[static_cast<std::size_t>(k)];
}

ExactScalar q_exchangeable_norm(long J, long j, const ExactScalar& q) {
    if (j < 0 || j > J) return 0;
    return pow(q, j * (j - 1) / 2) * q_binomial(J, j, q);
}

}  // namespace vertexlab
