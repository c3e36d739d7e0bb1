#include "vertexlab/errors.hpp"
#include "vertexlab/weights.hpp"

namespace vertexlab {

namespace {

using Mat4 = std::array<std::array<ExactScalar, 4>, 4>;

Mat4 multiply(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            ExactScalar v = 0;
            for (int k = 0; k < 4; ++k) v += a[i][k] * b[k][j];
            c[i][j] = v;
        }
    }
    return c;
}

// Two stacked vertices: lower one with u_low sees (k_low in, k_low' out),
// the upper one with u_high sees (k_high, k_high'); the middle edge is summed.
ExactScalar two_vertex(const ModelParams& p, const ExactScalar& u_low, const ExactScalar& u_high, int m, int n,
                       int k_low, int k_high, int k_low_out, int k_high_out) {
    int l = m + k_low - k_low_out;
    if (l < 0) return 0;
    return weight_w(p, u_low, {m, k_low, l, k_low_out}) * weight_w(p, u_high, {l, k_high, n, k_high_out});
}

}  // namespace

std::pair<YangBaxterMatrix, YangBaxterMatrix> yang_baxter_sides(const ModelParams& p, const ExactScalar& u1,
                                                                 const ExactScalar& u2, int m, int n) {
    const ExactScalar& q = p.q;
    if (u1 == q * u2 || u2 == q * u1) throw DegenerateParameter("X is singular when u1 = q u2 or u2 = q u1");
    Mat4 X{};
    for (auto& row : X) row.fill(0);
    X[0][0] = u1 - q * u2;
    X[1][1] = q * (u1 - u2);
    X[1][2] = (1 - q) * u1;
    X[2][1] = (1 - q) * u2;
    X[2][2] = u1 - u2;
    X[3][3] = u1 - q * u2;

    Mat4 W, Wt;
    for (int row = 0; row < 4; ++row) {
        int k1 = row >> 1, k2 = row & 1;
        for (int col = 0; col < 4; ++col) {
            int k1o = col >> 1, k2o = col & 1;
            W[row][col] = two_vertex(p, u1, u2, m, n, k1, k2, k1o, k2o);
            Wt[row][col] = two_vertex(p, u2, u1, m, n, k2, k1, k2o, k1o);
        }
    }
    const Mat4 lhs = multiply(X, W);
    const Mat4 rhs = multiply(Wt, X);
    std::pair<YangBaxterMatrix, YangBaxterMatrix> out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.first[static_cast<std::size_t>(4 * i + j)] = lhs[i][j];
            out.second[static_cast<std::size_t>(4 * i + j)] = rhs[i][j];
        }
    }
    return out;
}

bool yang_baxter_check(const ModelParams& p, const ExactScalar& u1, const ExactScalar& u2, int m_max, int n_max) {
    for (int m = 0; m <= m_max; ++m) {
        for (int n = 0; n <= n_max; ++n) {
            const auto [lhs, rhs] = yang_baxter_sides(p, u1, u2, m, n);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace vertexlab
