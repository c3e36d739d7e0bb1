#include "vertexlab/errors.hpp"
#include "vertexlab/residues.hpp"

#include <algorithm>

namespace vertexlab {

void for_each_injection(int l, int n, const std::function<void(const std::vector<int>&)>& f) {
    if (l < 0 || n < 0) throw ArgumentError("negative size in injection enumeration");
    if (l > n) return;
    std::vector<int> sigma(static_cast<std::size_t>(l), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<void(int)> extend = [&](int i) {
        if (i == l) {
            f(sigma);
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            sigma[static_cast<std::size_t>(i)] = j;
            extend(i + 1);
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    extend(0);
}

namespace {

int pole_order(const LinearFactorExpression& expr, VarId v, const ExactScalar& pole) {
    int order = 0;
    for (const auto& t : expr.terms()) {
        for (const auto& [at, m] : term_poles(t, v)) {
            if (at.is_constant() && at.constant_term() == pole) order = std::max(order, m);
        }
    }
    return order;
}

}  // namespace

ExponentialResidueSum::ExponentialResidueSum(LinearFactorExpression integrand, int variables,
                                             const ExactScalar& center, const ExactScalar& q, bool exponential) {
    if (variables < 0) throw ArgumentError("negative number of integration variables");
    std::map<Key, LinearFactorExpression> state;
    state.emplace(Key{0, ExactScalar(0)}, integrand.combined());
    for (int k = variables - 1; k >= 0; --k) {
        std::vector<ExactScalar> poles;
        ExactScalar p = center;
        for (int j = 0; j <= variables - 1 - k; ++j, p *= q) poles.push_back(p);
        std::map<Key, LinearFactorExpression> next;
        for (const auto& [key, expr] : state) {
            for (const auto& pole : poles) {
                const int order = pole_order(expr, k, pole);
                if (order == 0) continue;
                const LinearForm at = LinearForm::constant(pole);
                const int shifts = exponential ? order : 1;
                ExactScalar factorial = 1;
                for (int j = 0; j < shifts; ++j) {
                    if (j > 0) factorial *= j;
                    LinearFactorExpression body =
                        j == 0 ? expr : expr * LinearFactorExpression::from_form(LinearForm::variable(k) - at, j);
                    LinearFactorExpression r = body.residue(k, at, true).combined();
                    if (r.is_zero()) continue;
                    Key nk{key.first + j, exponential ? key.second + pole : key.second};
                    auto& slot = next[nk];
                    slot += r * (1 / factorial);
                    slot = slot.combined();
                }
            }
        }
        state = std::move(next);
    }
    for (const auto& [key, expr] : state) {
        ExactScalar c = expr.constant_value();
        if (c != 0) coefficients_[key] = c;
    }
}

ExactScalar ExponentialResidueSum::exact_value() const {
    ExactScalar out = 0;
    for (const auto& [key, c] : coefficients_) {
        if (key.first != 0 || key.second != 0) throw ArgumentError("residue sum carries exponential factors");
        out += c;
    }
    return out;
}

}  // namespace vertexlab
