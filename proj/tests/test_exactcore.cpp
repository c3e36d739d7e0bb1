#include "doctest.h"

#include "vertexlab/errors.hpp"
#include "vertexlab/linear_factor.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/signature.hpp"

#include <random>

using namespace vertexlab;

namespace {

ExactScalar Q(const char* s) { return parse_scalar(s); }

ExactScalar random_rational(std::mt19937_64& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, 9);
    return rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("scalar parsing and formatting") {
    CHECK(to_string(Q("6/4")) == "3/2");
    CHECK(to_string(Q("-4/2")) == "-2");
    CHECK(to_string(Q("0.25")) == "1/4");
    CHECK(to_string(Q("-0.5")) == "-1/2");
    CHECK(to_string(Q("3/-6")) == "-1/2");
    CHECK_THROWS_AS(Q("1/0"), DivisionByZero);
    CHECK_THROWS_AS(Q("abc"), ArgumentError);
    CHECK_THROWS_AS(Q("1/2/3"), ArgumentError);
    CHECK(parse_scalar_list("1/2,3, -1/4").size() == 3);
}

TEST_CASE("q_pochhammer three branches") {
    CHECK(q_pochhammer(Q("7/3"), Q("1/2"), 0) == 1);
    CHECK(q_pochhammer(Q("1/2"), Q("1/2"), 2) == Q("3/8"));
    // n = -1 gives 1/(1 - z/q).
    CHECK(q_pochhammer(Q("1/4"), Q("1/2"), -1) == 2);
    CHECK(q_pochhammer(Q("1/3"), Q("1/2"), -2) == 1 / ((1 - Q("1/3") * 4) * (1 - Q("1/3") * 2)));
    CHECK_THROWS_AS(q_pochhammer(Q("1/2"), Q("1/2"), -1), DivisionByZero);
    // (z;q)_{n} (zq^n;q)_{-n} = 1
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        ExactScalar z = random_rational(rng), q = random_rational(rng, 1, 9);
        if (q == 1) continue;
        for (long n = 1; n <= 4; ++n) {
            ExactScalar zqn = z * pow(q, n);
            bool vanishes = false;
            for (long k = 0; k < n; ++k) vanishes = vanishes || (z * pow(q, k) == 1);
            if (vanishes) continue;
            CHECK(q_pochhammer(z, q, n) * q_pochhammer(zqn, q, -n) == 1);
        }
    }
}

TEST_CASE("q_binomial values and symmetry") {
    CHECK(q_binomial(5, 0, Q("2/7")) == 1);
    CHECK(q_binomial(2, 1, Q("1/2")) == Q("3/2"));
    ExactScalar q = Q("1/3");
    CHECK(q_binomial(4, 2, q) ==
          q_pochhammer(q, q, 4) / (q_pochhammer(q, q, 2) * q_pochhammer(q, q, 2)));
    CHECK_THROWS_AS(q_binomial(3, 4, q), ArgumentError);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        ExactScalar r = random_rational(rng);
        for (long n = 0; n <= 8; ++n) {
            for (long k = 0; k <= n; ++k) CHECK(q_binomial(n, k, r) == q_binomial(n, n - k, r));
        }
    }
}

TEST_CASE("q-exchangeable partition function") {
    ExactScalar q = Q("2/5");
    for (int J = 0; J <= 6; ++J) {
        std::vector<ExactScalar> by_count(static_cast<std::size_t>(J + 1), ExactScalar(0));
        for (int mask = 0; mask < (1 << J); ++mask) {
            int weight = 0, count = 0;
            for (int r = 1; r <= J; ++r) {
                if (mask & (1 << (r - 1))) {
                    weight += r - 1;
                    ++count;
                }
            }
            by_count[static_cast<std::size_t>(count)] += pow(q, weight);
        }
        for (int j = 0; j <= J; ++j) CHECK(by_count[static_cast<std::size_t>(j)] == q_exchangeable_norm(J, j, q));
    }
}

TEST_CASE("signature views") {
    Signature nu({1, 3, 1});
    CHECK(nu.parts() == std::vector<int>{3, 1, 1});
    CHECK(nu.multiplicity(1) == 2);
    CHECK(Signature::from_multiplicities(nu.multiplicities()) == nu);
    CHECK(nu.size() == 5);
    CHECK(parse_signature("") == Signature());
    CHECK(enumerate_signatures(2, 0, 2).size() == 6);
    CHECK_THROWS_AS(Signature({-1}), ArgumentError);
}

TEST_CASE("simple pole residues") {
    const VarId w = 0, w1 = 1, w2 = 2;
    auto lin = [](VarId v, const char* b) { return LinearForm::variable(v) + Q(b); };
    auto e1 = LinearFactorExpression::from_form(lin(w, "-2"), -1);
    CHECK(residue_at_simple_pole(e1, w, 2).constant_value() == 1);
    auto e2 = LinearFactorExpression::from_form(lin(w, "-3")) * e1;
    CHECK(residue_at_simple_pole(e2, w, 2).constant_value() == -1);
    auto e3 = LinearFactorExpression::from_form(LinearForm::variable(w1) - LinearForm::variable(w2)) *
              LinearFactorExpression::from_form(lin(w1, "-2"), -1) *
              LinearFactorExpression::from_form(lin(w2, "-5"), -1);
    auto r = residue_at_simple_pole(e3, w1, 2);
    auto expected = LinearFactorExpression::from_form(LinearForm::constant(2) - LinearForm::variable(w2)) *
                    LinearFactorExpression::from_form(lin(w2, "-5"), -1);
    for (int k = 6; k < 12; ++k) {
        Assignment at{{w2, rational(k, 7)}};
        CHECK(r.evaluate(at) == expected.evaluate(at));
    }
    // Non-poles contribute zero, double poles are rejected.
    CHECK(residue_at_simple_pole(e2, w, 7).is_zero());
    CHECK_THROWS_AS(residue_at_simple_pole(e1.pow(2), w, 2), UnsupportedPoleOrder);
    // Scaled linear factors: 1/(3w - 6) has residue 1/3 at w = 2.
    auto e4 = LinearFactorExpression::from_form(LinearForm::variable(w, 3) + ExactScalar(-6), -1);
    CHECK(residue_at_simple_pole(e4, w, 2).constant_value() == Q("1/3"));
}

TEST_CASE("residue commutes with substitution of unrelated variables") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        ExactScalar a = random_rational(rng), b = random_rational(rng), c = random_rational(rng, 1, 9);
        ExactScalar p = random_rational(rng), y = random_rational(rng);
        // f = (w0 - a w1 + b) / ((w0 - p)(w0 - c w1 - 11))
        auto f = LinearFactorExpression::from_form(LinearForm::variable(0) - LinearForm::variable(1, a) + b) *
                 LinearFactorExpression::from_form(LinearForm::variable(0) + ExactScalar(-p), -1) *
                 LinearFactorExpression::from_form(LinearForm::variable(0) - LinearForm::variable(1, c) + ExactScalar(-11), -1);
        if (p == c * y + 11) continue;
        auto lhs = residue_at_simple_pole(f, 0, p).substitute(1, y);
        auto rhs = residue_at_simple_pole(f.substitute(1, y), 0, p);
        CHECK(lhs.evaluate({}) == rhs.evaluate({}));
    }
}

TEST_CASE("residue theorem including infinity") {
    std::mt19937_64 rng(17);
    const VarId w = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ExactScalar> poles;
        LinearFactorExpression f = LinearFactorExpression::constant(random_rational(rng, 1, 9));
        int np = 1 + trial % 4;
        for (int i = 0; i < np; ++i) {
            ExactScalar p = random_rational(rng) + i * 20;
            poles.push_back(p);
            f *= LinearFactorExpression::from_form(LinearForm::variable(w) + ExactScalar(-p), -(1 + (trial + i) % 2));
        }
        for (int i = 0; i < 3; ++i) {
            f *= LinearFactorExpression::from_form(LinearForm::variable(w) + random_rational(rng) + 100);
        }
        f = f + f * ExactScalar(3) * LinearFactorExpression::from_form(LinearForm::variable(w) + ExactScalar(-poles[0]));
        ExactScalar total = f.residue_at_infinity(w);
        for (const auto& p : poles) total += f.residue(w, LinearForm::constant(p), true).combined().constant_value();
        CHECK(total == 0);
    }
}

TEST_CASE("higher order residue by differentiation") {
    // Res_{w=1} w^3/(w-1)^3 = (1/2) d^2/dw^2 w^3 at 1 = 3.
    const VarId w = 0;
    auto f = LinearFactorExpression::variable(w).pow(3) *
             LinearFactorExpression::from_form(LinearForm::variable(w) + ExactScalar(-1), -3);
    CHECK(f.residue(w, LinearForm::constant(1), true).combined().constant_value() == 3);
}
