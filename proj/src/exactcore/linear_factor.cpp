#include "vertexlab/linear_factor.hpp"

#include "vertexlab/errors.hpp"

#include <algorithm>

namespace vertexlab {

namespace {

int cmp_scalar(const ExactScalar& a, const ExactScalar& b) {
    int c = cmp(a, b);
    return (c > 0) - (c < 0);
}

// Folds raw factors into a canonical term. Returns false when the term is zero.
bool canonicalize(ExactScalar& coefficient, std::vector<Factor>& raw, std::vector<Factor>& out) {
    out.clear();
    if (coefficient == 0) return false;
    std::vector<Factor> normal;
    normal.reserve(raw.size());
    for (auto& f : raw) {
        if (f.exponent == 0) continue;
        if (f.form.is_constant()) {
            const ExactScalar& c = f.form.constant_term();
            if (c == 0) {
                if (f.exponent < 0) throw DivisionByZero("constant factor vanishes with negative exponent");
                return false;
            }
            coefficient *= pow(c, f.exponent);
            continue;
        }
        auto [scale, form] = f.form.normalized();
        if (scale != 1) coefficient *= pow(scale, f.exponent);
        normal.push_back(Factor{std::move(form), f.exponent});
    }
    std::sort(normal.begin(), normal.end(),
              [](const Factor& a, const Factor& b) { return compare(a.form, b.form) < 0; });
    for (auto& f : normal) {
        if (!out.empty() && out.back().form == f.form) {
            out.back().exponent += f.exponent;
        } else {
            out.push_back(std::move(f));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Factor& f) { return f.exponent == 0; }),
              out.end());
    return true;
}

bool make_term(ExactScalar coefficient, std::vector<Factor> raw, Term& term) {
    std::vector<Factor> out;
    if (!canonicalize(coefficient, raw, out)) return false;
    term.coefficient = std::move(coefficient);
    term.factors = std::move(out);
    return true;
}

int compare_factors(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a[i].form, b[i].form);
        if (c) return c;
        if (a[i].exponent != b[i].exponent) return a[i].exponent < b[i].exponent ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

// Generalized binomial coefficient C(e, k) for integer e.
ExactScalar binom_general(long e, long k) {
    ExactScalar out = 1;
    for (long i = 0; i < k; ++i) out = out * ExactScalar(e - i) / ExactScalar(i + 1);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- LinearForm

LinearForm LinearForm::variable(VarId v, const ExactScalar& coeff) {
    LinearForm f;
    if (coeff != 0) f.coeffs_.emplace_back(v, coeff);
    return f;
}

LinearForm LinearForm::constant(const ExactScalar& c) {
    LinearForm f;
    f.constant_ = c;
    return f;
}

ExactScalar LinearForm::coefficient(VarId v) const {
    for (const auto& [id, a] : coeffs_) {
        if (id == v) return a;
    }
    return 0;
}

bool LinearForm::contains(VarId v) const {
    for (const auto& [id, a] : coeffs_) {
        if (id == v) return true;
    }
    return false;
}

LinearForm LinearForm::operator+(const LinearForm& other) const {
    LinearForm out;
    out.constant_ = constant_ + other.constant_;
    std::size_t i = 0, j = 0;
    while (i < coeffs_.size() || j < other.coeffs_.size()) {
        if (j == other.coeffs_.size() || (i < coeffs_.size() && coeffs_[i].first < other.coeffs_[j].first)) {
            out.coeffs_.push_back(coeffs_[i++]);
        } else if (i == coeffs_.size() || other.coeffs_[j].first < coeffs_[i].first) {
            out.coeffs_.push_back(other.coeffs_[j++]);
        } else {
            ExactScalar a = coeffs_[i].second + other.coeffs_[j].second;
            if (a != 0) out.coeffs_.emplace_back(coeffs_[i].first, a);
            ++i;
            ++j;
        }
    }
    return out;
}

LinearForm LinearForm::operator-(const LinearForm& other) const { return *this + other * ExactScalar(-1); }

LinearForm LinearForm::operator*(const ExactScalar& c) const {
    if (c == 0) return LinearForm::constant(0);
    LinearForm out = *this;
    for (auto& [id, a] : out.coeffs_) a *= c;
    out.constant_ *= c;
    return out;
}

LinearForm LinearForm::operator+(const ExactScalar& c) const {
    LinearForm out = *this;
    out.constant_ += c;
    return out;
}

LinearForm LinearForm::substitute(VarId v, const LinearForm& value) const {
    ExactScalar a = coefficient(v);
    if (a == 0) return *this;
    LinearForm rest = *this;
    rest.coeffs_.erase(std::remove_if(rest.coeffs_.begin(), rest.coeffs_.end(),
                                      [v](const auto& p) { return p.first == v; }),
                       rest.coeffs_.end());
    return rest + value * a;
}

ExactScalar LinearForm::evaluate(const Assignment& at) const {
    ExactScalar out = constant_;
    for (const auto& [id, a] : coeffs_) {
        auto it = at.find(id);
        if (it == at.end()) throw ArgumentError("unassigned variable w" + std::to_string(id));
        out += a * it->second;
    }
    return out;
}

std::pair<ExactScalar, LinearForm> LinearForm::normalized() const {
    if (coeffs_.empty() || coeffs_.front().second == 1) return {ExactScalar(1), *this};
    ExactScalar lead = coeffs_.front().second;
    return {lead, *this * (1 / lead)};
}

LinearForm LinearForm::solve_for(VarId v) const {
    ExactScalar a = coefficient(v);
    if (a == 0) throw ArgumentError("variable does not occur in form");
    LinearForm rest = *this - LinearForm::variable(v, a);
    return rest * (-1 / a);
}

std::string LinearForm::str() const {
    std::string out;
    for (const auto& [id, a] : coeffs_) {
        if (!out.empty()) out += " + ";
        out += (a == 1 ? std::string() : to_string(a) + "*") + "w" + std::to_string(id);
    }
    if (constant_ != 0 || out.empty()) {
        if (!out.empty()) out += " + ";
        out += to_string(constant_);
    }
    return out;
}

int compare(const LinearForm& a, const LinearForm& b) {
    std::size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i].first != b.coeffs_[i].first) return a.coeffs_[i].first < b.coeffs_[i].first ? -1 : 1;
        int c = cmp_scalar(a.coeffs_[i].second, b.coeffs_[i].second);
        if (c) return c;
    }
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size() ? -1 : 1;
    return cmp_scalar(a.constant_, b.constant_);
}

// ---------------------------------------------------- LinearFactorExpression

LinearFactorExpression LinearFactorExpression::constant(const ExactScalar& c) {
    LinearFactorExpression e;
    if (c != 0) e.terms_.push_back(Term{c, {}});
    return e;
}

LinearFactorExpression LinearFactorExpression::from_form(const LinearForm& form, int exponent) {
    LinearFactorExpression e;
    Term t;
    if (make_term(1, {Factor{form, exponent}}, t)) e.terms_.push_back(std::move(t));
    return e;
}

LinearFactorExpression single_term(const Term& term) {
    LinearFactorExpression e = LinearFactorExpression::constant(term.coefficient);
    if (e.is_zero()) return e;
    for (const auto& f : term.factors) e *= LinearFactorExpression::from_form(f.form, f.exponent);
    return e;
}

bool LinearFactorExpression::is_constant() const {
    for (const auto& t : terms_) {
        if (!t.factors.empty()) return false;
    }
    return true;
}

ExactScalar LinearFactorExpression::constant_value() const {
    ExactScalar out = 0;
    for (const auto& t : terms_) {
        if (!t.factors.empty()) throw ArgumentError("expression is not constant");
        out += t.coefficient;
    }
    return out;
}

std::set<VarId> LinearFactorExpression::variables() const {
    std::set<VarId> out;
    for (const auto& t : terms_) {
        for (const auto& f : t.factors) {
            for (const auto& [id, a] : f.form.coefficients()) out.insert(id);
        }
    }
    return out;
}

LinearFactorExpression LinearFactorExpression::operator*(const LinearFactorExpression& other) const {
    LinearFactorExpression out;
    out.terms_.reserve(terms_.size() * other.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : other.terms_) {
            // Both inputs are canonical, so a merge of sorted factor lists suffices.
            Term t;
            t.coefficient = a.coefficient * b.coefficient;
            std::size_t i = 0, j = 0;
            while (i < a.factors.size() || j < b.factors.size()) {
                int c = i == a.factors.size()   ? 1
                        : j == b.factors.size() ? -1
                                                : compare(a.factors[i].form, b.factors[j].form);
                if (c < 0) {
                    t.factors.push_back(a.factors[i++]);
                } else if (c > 0) {
                    t.factors.push_back(b.factors[j++]);
                } else {
                    int e = a.factors[i].exponent + b.factors[j].exponent;
                    if (e != 0) t.factors.push_back(Factor{a.factors[i].form, e});
                    ++i;
                    ++j;
                }
            }
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

LinearFactorExpression LinearFactorExpression::operator+(const LinearFactorExpression& other) const {
    LinearFactorExpression out = *this;
    out += other;
    return out;
}

LinearFactorExpression& LinearFactorExpression::operator+=(const LinearFactorExpression& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

LinearFactorExpression LinearFactorExpression::operator-(const LinearFactorExpression& other) const {
    return *this + other * ExactScalar(-1);
}

LinearFactorExpression LinearFactorExpression::operator*(const ExactScalar& c) const {
    if (c == 0) return {};
    LinearFactorExpression out = *this;
    for (auto& t : out.terms_) t.coefficient *= c;
    return out;
}

LinearFactorExpression LinearFactorExpression::pow(int e) const {
    if (e >= 0) {
        LinearFactorExpression out = constant(1);
        for (int i = 0; i < e; ++i) out = out * *this;
        return out;
    }
    if (terms_.size() != 1) throw ArgumentError("negative power of a multi-term expression");
    const Term& t = terms_.front();
    LinearFactorExpression out;
    Term r;
    r.coefficient = vertexlab::pow(t.coefficient, e);
    for (const auto& f : t.factors) r.factors.push_back(Factor{f.form, f.exponent * e});
    out.terms_.push_back(std::move(r));
    return out;
}

LinearFactorExpression LinearFactorExpression::substitute(VarId v, const ExactScalar& value) const {
    return substitute(v, LinearForm::constant(value));
}

LinearFactorExpression LinearFactorExpression::substitute(VarId v, const LinearForm& value) const {
    LinearFactorExpression out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        bool touched = false;
        for (const auto& f : t.factors) touched = touched || f.form.contains(v);
        if (!touched) {
            out.terms_.push_back(t);
            continue;
        }
        std::vector<Factor> raw;
        raw.reserve(t.factors.size());
        for (const auto& f : t.factors) raw.push_back(Factor{f.form.substitute(v, value), f.exponent});
        Term nt;
        if (make_term(t.coefficient, std::move(raw), nt)) out.terms_.push_back(std::move(nt));
    }
    return out;
}

ExactScalar LinearFactorExpression::evaluate(const Assignment& at) const {
    ExactScalar out = 0;
    for (const auto& t : terms_) {
        ExactScalar v = t.coefficient;
        for (const auto& f : t.factors) {
            ExactScalar x = f.form.evaluate(at);
            if (x == 0) {
                if (f.exponent < 0) throw DivisionByZero("evaluation at a pole");
                v = 0;
                break;
            }
            v *= vertexlab::pow(x, f.exponent);
        }
        out += v;
    }
    return out;
}

LinearFactorExpression LinearFactorExpression::derivative(VarId v) const {
    LinearFactorExpression out;
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            ExactScalar a = t.factors[i].form.coefficient(v);
            if (a == 0) continue;
            Term d = t;
            d.coefficient *= a * t.factors[i].exponent;
            d.factors[i].exponent -= 1;
            if (d.factors[i].exponent == 0) d.factors.erase(d.factors.begin() + static_cast<long>(i));
            out.terms_.push_back(std::move(d));
        }
    }
    return out;
}

LinearFactorExpression LinearFactorExpression::residue(VarId v, const LinearForm& pole,
                                                       bool allow_higher_order) const {
    if (pole.contains(v)) throw ArgumentError("pole location depends on the integration variable");
    auto [scale, target] = (LinearForm::variable(v) - pole).normalized();
    // target = (v - pole) / scale, so the coefficient of v in target is 1 / scale.
    LinearFactorExpression out;
    for (const auto& t : terms_) {
        auto it = std::find_if(t.factors.begin(), t.factors.end(),
                               [&](const Factor& f) { return f.form == target; });
        if (it == t.factors.end() || it->exponent >= 0) continue;
        int order = -it->exponent;
        if (order >= 2 && !allow_higher_order) {
            throw UnsupportedPoleOrder("pole of order " + std::to_string(order));
        }
        Term rest = t;
        rest.factors.erase(rest.factors.begin() + (it - t.factors.begin()));
        rest.coefficient *= vertexlab::pow(scale, order);
        LinearFactorExpression r;
        r.terms_.push_back(std::move(rest));
        ExactScalar fact = 1;
        for (int k = 1; k < order; ++k) {
            r = r.derivative(v);
            fact *= k;
        }
        r = r.substitute(v, pole);
        if (fact != 1) r = r * (1 / fact);
        out += r;
    }
    return out;
}

ExactScalar LinearFactorExpression::residue_at_infinity(VarId v) const {
    ExactScalar total = 0;
    for (const auto& t : terms_) {
        long degree = 0;
        for (const auto& f : t.factors) {
            if (f.form.coefficients().size() != 1 || !f.form.contains(v)) {
                throw ArgumentError("residue at infinity needs a univariate expression");
            }
            degree += f.exponent;
        }
        long want = degree + 1;
        if (want < 0) continue;
        // Each factor is (v + b) after normalization; expand prod (1 + b/v)^e in 1/v.
        std::vector<ExactScalar> series(static_cast<std::size_t>(want + 1), ExactScalar(0));
        series[0] = 1;
        for (const auto& f : t.factors) {
            const ExactScalar& b = f.form.constant_term();
            std::vector<ExactScalar> next(series.size(), ExactScalar(0));
            for (long k = 0; k <= want; ++k) {
                ExactScalar ck = binom_general(f.exponent, k) * vertexlab::pow(b, k);
                if (ck == 0) continue;
                for (long j = 0; j + k <= want; ++j) {
                    next[static_cast<std::size_t>(j + k)] += ck * series[static_cast<std::size_t>(j)];
                }
            }
            series.swap(next);
        }
        total -= t.coefficient * series[static_cast<std::size_t>(want)];
    }
    return total;
}

LinearFactorExpression LinearFactorExpression::combined() const {
    std::vector<const Term*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(),
              [](const Term* a, const Term* b) { return compare_factors(a->factors, b->factors) < 0; });
    LinearFactorExpression out;
    for (const Term* t : order) {
        if (!out.terms_.empty() && compare_factors(out.terms_.back().factors, t->factors) == 0) {
            out.terms_.back().coefficient += t->coefficient;
        } else {
            out.terms_.push_back(*t);
        }
    }
    out.terms_.erase(std::remove_if(out.terms_.begin(), out.terms_.end(),
                                    [](const Term& t) { return t.coefficient == 0; }),
                     out.terms_.end());
    return out;
}

std::string LinearFactorExpression::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        out += to_string(t.coefficient);
        for (const auto& f : t.factors) {
            out += "*(" + f.form.str() + ")";
            if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
        }
    }
    return out;
}

LinearFactorExpression residue_at_simple_pole(const LinearFactorExpression& expr, VarId v,
                                              const ExactScalar& pole) {
    return expr.residue(v, LinearForm::constant(pole), false);
}

std::vector<std::pair<LinearForm, int>> term_poles(const Term& term, VarId v) {
    std::vector<std::pair<LinearForm, int>> out;
    for (const auto& f : term.factors) {
        if (f.exponent < 0 && f.form.contains(v)) out.emplace_back(f.form.solve_for(v), -f.exponent);
    }
    return out;
}

}  // namespace vertexlab
