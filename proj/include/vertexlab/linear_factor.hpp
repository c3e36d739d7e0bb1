#pragma once

#include "vertexlab/scalar.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vertexlab {

using VarId = int;
using Assignment = std::map<VarId, ExactScalar>;

// Affine form sum_v a_v * w_v + b over named variables.
class LinearForm {
public:
    LinearForm() = default;
    static LinearForm variable(VarId v, const ExactScalar& coeff = 1);
    static LinearForm constant(const ExactScalar& c);

    bool is_constant() const { return coeffs_.empty(); }
    const ExactScalar& constant_term() const { return constant_; }
    const std::vector<std::pair<VarId, ExactScalar>>& coefficients() const { return coeffs_; }
    ExactScalar coefficient(VarId v) const;
    bool contains(VarId v) const;

    LinearForm operator+(const LinearForm& other) const;
    LinearForm operator-(const LinearForm& other) const;
    LinearForm operator*(const ExactScalar& c) const;
    LinearForm operator+(const ExactScalar& c) const;

    LinearForm substitute(VarId v, const LinearForm& value) const;
    ExactScalar evaluate(const Assignment& at) const;

    // Writes *this = scale * form with the lowest-id coefficient of form equal to 1.
    // A constant form normalizes to itself with scale 1.
    std::pair<ExactScalar, LinearForm> normalized() const;

    // Solves *this = 0 for v; v must occur.
    LinearForm solve_for(VarId v) const;

    std::string str() const;

    friend int compare(const LinearForm& a, const LinearForm& b);
    friend bool operator==(const LinearForm& a, const LinearForm& b) { return compare(a, b) == 0; }
    friend bool operator<(const LinearForm& a, const LinearForm& b) { return compare(a, b) < 0; }

private:
    std::vector<std::pair<VarId, ExactScalar>> coeffs_;  // sorted by id, nonzero
    ExactScalar constant_ = 0;
};

struct Factor {
    LinearForm form;  // normalized, nonconstant
    int exponent = 0;  // nonzero
};

struct Term {
    ExactScalar coefficient = 0;
    std::vector<Factor> factors;  // sorted by form, distinct forms
};

// Flat sum of terms c * prod (linear form)^e.
class LinearFactorExpression {
public:
    LinearFactorExpression() = default;
    static LinearFactorExpression constant(const ExactScalar& c);
    static LinearFactorExpression from_form(const LinearForm& form, int exponent = 1);
    static LinearFactorExpression variable(VarId v) { return from_form(LinearForm::variable(v)); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    ExactScalar constant_value() const;  // requires is_constant()
    std::set<VarId> variables() const;

    LinearFactorExpression operator*(const LinearFactorExpression& other) const;
    LinearFactorExpression operator+(const LinearFactorExpression& other) const;
    LinearFactorExpression operator-(const LinearFactorExpression& other) const;
    LinearFactorExpression operator*(const ExactScalar& c) const;
    LinearFactorExpression& operator*=(const LinearFactorExpression& other) { return *this = *this * other; }
    LinearFactorExpression& operator+=(const LinearFactorExpression& other);

    // Negative powers need a single-term expression.
    LinearFactorExpression pow(int e) const;

    LinearFactorExpression substitute(VarId v, const ExactScalar& value) const;
    LinearFactorExpression substitute(VarId v, const LinearForm& value) const;
    ExactScalar evaluate(const Assignment& at) const;

    LinearFactorExpression derivative(VarId v) const;

    // Residue in v at v = pole; poles of order m >= 2 are taken by differentiation
    // when allow_higher_order is set, otherwise UnsupportedPoleOrder is thrown.
    LinearFactorExpression residue(VarId v, const LinearForm& pole, bool allow_higher_order = false) const;

    // For expressions whose only variable is v.
    ExactScalar residue_at_infinity(VarId v) const;

    // Merges terms with identical factor lists and drops zero coefficients.
    LinearFactorExpression combined() const;

    std::string str() const;

private:
    std::vector<Term> terms_;
};

LinearFactorExpression residue_at_simple_pole(const LinearFactorExpression& expr, VarId v,
                                              const ExactScalar& pole);

// Poles in v of one term: solved location and order (positive).
std::vector<std::pair<LinearForm, int>> term_poles(const Term& term, VarId v);

LinearFactorExpression single_term(const Term& term);

}  // namespace vertexlab
