#include "vertexlab/errors.hpp"
#include "vertexlab/symfunc.hpp"

#include <functional>
#include <map>

namespace vertexlab {

namespace {

std::vector<int> column_counts(const Signature& sig, int width) {
    std::vector<int> counts(static_cast<std::size_t>(width + 1), 0);
    for (int part : sig.parts()) ++counts[static_cast<std::size_t>(part)];
    return counts;
}

using VertexWeight = std::function<ExactScalar(const VertexState&)>;

// Walks columns left to right carrying the horizontal multiplicity; the row must end empty.
ExactScalar transfer_row(const Signature& lower, const Signature& upper, int entering, int max_horizontal,
                         const VertexWeight& weight) {
    const int width = std::max(lower.largest(), upper.largest());
    auto below = column_counts(lower, width);
    auto above = column_counts(upper, width);
    ExactScalar out = 1;
    int j = entering;
    for (int x = 0; x <= width; ++x) {
        const int i1 = below[static_cast<std::size_t>(x)];
        const int i2 = above[static_cast<std::size_t>(x)];
        const int j2 = i1 + j - i2;
        if (j2 < 0 || (max_horizontal >= 0 && j2 > max_horizontal)) return 0;
        if (i1 != 0 || j != 0 || i2 != 0 || j2 != 0) out *= weight({i1, j, i2, j2});
        if (out == 0) return 0;
        j = j2;
    }
    return j == 0 ? out : ExactScalar(0);
}

// Signatures kappa' one row above kappa (length grows by `grow` in {0,1}) that interlace
// kappa and stay componentwise below `bound`.
void interlacing_successors(const Signature& kappa, int grow, const Signature& bound,
                            const std::function<void(const Signature&)>& visit) {
    const int k = kappa.length();
    const int len = k + grow;
    std::vector<int> parts(static_cast<std::size_t>(len));
    std::function<void(int)> rec = [&](int i) {
        if (i == len) {
            visit(Signature(parts));
            return;
        }
        int lo = i < k ? kappa[i] : 0;
        int hi = i == 0 ? bound[0] : std::min(kappa[i - 1], bound[i]);
        for (int x = lo; x <= hi; ++x) {
            parts[static_cast<std::size_t>(i)] = x;
            rec(i + 1);
        }
    };
    rec(0);
}

ExactScalar multi_row(const ModelParams& p, const Signature& lower, const Signature& upper,
                      const SpectralVector& u, bool with_left_input) {
    const int grow = with_left_input ? 1 : 0;
    const int rows = static_cast<int>(u.size());
    if (upper.length() != lower.length() + grow * rows) return 0;
    if (rows == 0) return lower == upper ? ExactScalar(1) : ExactScalar(0);
    std::map<Signature, ExactScalar> current{{lower, ExactScalar(1)}};
    for (int r = 0; r < rows; ++r) {
        std::map<Signature, ExactScalar> next;
        const bool last = r + 1 == rows;
        for (const auto& [kappa, value] : current) {
            auto step = [&](const Signature& succ) {
                ExactScalar t = with_left_input ? skew_F_one_row(p, kappa, succ, u[static_cast<std::size_t>(r)])
                                                : skew_G_one_row(p, kappa, succ, u[static_cast<std::size_t>(r)]);
                if (t != 0) next[succ] += value * t;
            };
            if (last) {
                step(upper);
            } else {
                interlacing_successors(kappa, grow, upper, step);
            }
        }
        current = std::move(next);
    }
    auto it = current.find(upper);
    return it == current.end() ? ExactScalar(0) : it->second;
}

bool pairwise_distinct(const SpectralVector& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            if (u[i] == u[j]) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Signature> interlacing_above(const Signature& kappa, int grow, int top) {
    std::vector<int> bound(static_cast<std::size_t>(kappa.length() + grow), top);
    std::vector<Signature> out;
    if (top < kappa.largest()) return out;
    interlacing_successors(kappa, grow, Signature(bound), [&](const Signature& s) { out.push_back(s); });
    return out;
}

std::vector<Signature> interlacing_below(const Signature& lambda, int drop) {
    const int len = lambda.length() - drop;
    std::vector<Signature> out;
    if (len < 0) return out;
    std::vector<int> parts(static_cast<std::size_t>(len));
    std::function<void(int)> rec = [&](int i) {
        if (i == len) {
            out.emplace_back(parts);
            return;
        }
        int lo = i + 1 < lambda.length() ? lambda[i + 1] : 0;
        for (int x = lo; x <= lambda[i]; ++x) {
            parts[static_cast<std::size_t>(i)] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

ExactScalar F_value(const ModelParams& p, const Signature& mu, const SpectralVector& u) {
    if (mu.length() != static_cast<int>(u.size())) throw ArgumentError("F_mu needs as many variables as parts");
    return pairwise_distinct(u) ? F_sym(p, mu, u) : skew_F(p, Signature{}, mu, u);
}

ExactScalar G_value(const ModelParams& p, const Signature& nu, const SpectralVector& v) {
    if (pairwise_distinct(v)) return G_sym(p, nu, v);
    return skew_G(p, Signature(std::vector<int>(static_cast<std::size_t>(nu.length()), 0)), nu, v);
}

ExactScalar G_conj_value(const ModelParams& p, const Signature& nu, const SpectralVector& v) {
    ExactScalar g = G_value(p, nu, v);
    if (g == 0) return g;
    Signature bottom(std::vector<int>(static_cast<std::size_t>(nu.length()), 0));
    return c_factor(p, nu) / c_factor(p, bottom) * g;
}

ExactScalar skew_F_one_row(const ModelParams& p, const Signature& lower, const Signature& upper,
                           const ExactScalar& u) {
    if (upper.length() != lower.length() + 1) return 0;
    return transfer_row(lower, upper, 1, 1, [&](const VertexState& st) { return weight_w(p, u, st); });
}

ExactScalar skew_G_one_row(const ModelParams& p, const Signature& lower, const Signature& upper,
                           const ExactScalar& v) {
    if (upper.length() != lower.length()) return 0;
    return transfer_row(lower, upper, 0, 1, [&](const VertexState& st) { return weight_w(p, v, st); });
}

ExactScalar skew_F(const ModelParams& p, const Signature& lower, const Signature& upper, const SpectralVector& u) {
    return multi_row(p, lower, upper, u, true);
}

ExactScalar skew_G(const ModelParams& p, const Signature& lower, const Signature& upper, const SpectralVector& v) {
    return multi_row(p, lower, upper, v, false);
}

ExactScalar skew_F_conj(const ModelParams& p, const Signature& lower, const Signature& upper,
                        const SpectralVector& u) {
    ExactScalar f = skew_F(p, lower, upper, u);
    return f == 0 ? f : ExactScalar(c_factor(p, upper) / c_factor(p, lower) * f);
}

ExactScalar skew_G_conj(const ModelParams& p, const Signature& lower, const Signature& upper,
                        const SpectralVector& v) {
    ExactScalar g = skew_G(p, lower, upper, v);
    return g == 0 ? g : ExactScalar(c_factor(p, upper) / c_factor(p, lower) * g);
}

ExactScalar skew_fused_one_row(const ModelParams& p, const Signature& lower, const Signature& upper,
                               const ExactScalar& u, const FusedSpin& spin, bool with_left_input) {
    int entering = 0;
    if (with_left_input) {
        if (!spin.J) throw ArgumentError("F needs an integer number of fused rows");
        entering = *spin.J;
    }
    if (upper.length() != lower.length() + entering) return 0;
    const int cap = spin.J ? *spin.J : -1;
    return transfer_row(lower, upper, entering, cap,
                        [&](const VertexState& st) { return weight_w_fused(p, spin, u, st); });
}

}  // namespace vertexlab
