#include "doctest.h"

#include "vertexlab/errors.hpp"
#include "vertexlab/identities.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/symfunc.hpp"

#include <algorithm>
#include <random>

using namespace vertexlab;

namespace {

const ModelParams P = ModelParams::full(rational(1, 2), rational(-1, 2));

Signature sig(std::vector<int> parts) { return Signature(std::move(parts)); }

ExactScalar random_rational(std::mt19937& gen, int lo, int hi, int den) {
    std::uniform_int_distribution<int> d(lo, hi);
    return rational(d(gen), den);
}

}  // namespace

TEST_CASE("c_factor values") {
    CHECK(c_factor(P, Signature{}) == 1);
    CHECK(c_factor(P, sig({3})) == (1 - P.s_sq) / (1 - P.q));
    ExactScalar expected = q_pochhammer(P.s_sq, P.q, 2) / q_pochhammer(P.q, P.q, 2) * q_pochhammer(P.s_sq, P.q, 1) /
                           q_pochhammer(P.q, P.q, 1);
    CHECK(c_factor(P, sig({1, 0, 0})) == expected);
}

TEST_CASE("F_sym closed cases") {
    SpectralVector u{rational(1, 3), rational(2, 5), rational(3, 7)};
    ExactScalar den = 1;
    for (const auto& x : u) den *= 1 - *P.s * x;
    CHECK(F_sym(P, sig({0, 0, 0}), u) == q_pochhammer(P.q, P.q, 3) / den);
    for (int m = 0; m <= 5; ++m) {
        ExactScalar x = rational(1, 4);
        CHECK(F_sym(P, sig({m}), {x}) == (1 - P.q) / (1 - *P.s * x) * pow(arrow_ratio(P, x), m));
    }
    CHECK_THROWS_AS(F_sym(P, sig({1, 0}), {rational(1, 3), rational(1, 3)}), ArgumentError);
    CHECK_THROWS_AS(G_sym(P, sig({1, 0}), {rational(1, 3), rational(1, 3)}), ArgumentError);
}

TEST_CASE("symmetry under permutations of the spectral variables") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 4; ++trial) {
        for (int M = 1; M <= 4; ++M) {
            SpectralVector u;
            while (static_cast<int>(u.size()) < M) {
                ExactScalar x = random_rational(gen, 1, 40, 37);
                if (std::find(u.begin(), u.end(), x) == u.end()) u.push_back(x);
            }
            std::vector<int> parts(static_cast<std::size_t>(M));
            for (auto& part : parts) part = std::uniform_int_distribution<int>(0, 3)(gen);
            Signature mu(parts);
            ExactScalar f = F_sym(P, mu, u);
            ExactScalar g = G_sym(P, mu, u);
            SpectralVector w = u;
            std::shuffle(w.begin(), w.end(), gen);
            CHECK(F_sym(P, mu, w) == f);
            CHECK(G_sym(P, mu, w) == g);
        }
    }
}

TEST_CASE("symmetrization agrees with lattice path sums") {
    SpectralVector u{rational(1, 3), rational(1, 5), rational(2, 7)};
    for (int M = 1; M <= 3; ++M) {
        SpectralVector x(u.begin(), u.begin() + M);
        for (const auto& mu : enumerate_signatures(M, 0, 4)) {
            CHECK(F_sym(P, mu, x) == skew_F(P, Signature{}, mu, x));
        }
    }
    for (int N = 1; N <= 3; ++N) {
        SpectralVector v(u.begin(), u.begin() + N);
        for (int n = 0; n <= 3; ++n) {
            Signature bottom(std::vector<int>(static_cast<std::size_t>(n), 0));
            for (const auto& nu : enumerate_signatures(n, 0, 4)) {
                CHECK(G_sym(P, nu, v) == skew_G(P, bottom, nu, v));
            }
        }
    }
}

TEST_CASE("G vanishes with too few variables and matches F when there are no zeros") {
    CHECK(G_sym(P, sig({2, 1}), {rational(1, 3)}) == 0);
    SpectralVector v{rational(1, 3), rational(1, 5)};
    for (const auto& nu : enumerate_signatures(2, 1, 4)) {
        ExactScalar factor = q_pochhammer(P.s_sq, P.q, 2);
        for (const auto& x : v) factor *= x / (x - *P.s);
        CHECK(G_sym(P, nu, v) == factor * F_sym(P, nu, v));
    }
}

TEST_CASE("one-row transfers") {
    ExactScalar v = rational(1, 3);
    CHECK(skew_G_one_row(P, Signature{}, Signature{}, v) == 1);
    CHECK(skew_G_one_row(P, sig({1}), sig({0}), v) == 0);
    CHECK(skew_G_one_row(P, sig({2, 2}), sig({2, 2}), v) == weight_w(P, v, {2, 0, 2, 0}));
    for (int m = 0; m <= 4; ++m) CHECK(skew_F_one_row(P, Signature{}, sig({m}), v) == F_sym(P, sig({m}), {v}));
    CHECK(skew_F_one_row(P, sig({1}), sig({1}), v) == 0);
}

TEST_CASE("principal specializations") {
    ExactScalar u = rational(2, 9);
    for (int M = 1; M <= 3; ++M) {
        SpectralVector geo;
        for (int i = 0; i < M; ++i) geo.push_back(pow(P.q, i) * u);
        for (const auto& mu : enumerate_signatures(M, 0, 3)) {
            CHECK(principal_F(P, mu, u, M) == F_sym(P, mu, geo));
            CHECK(principal_G(P, mu, u, M) == G_sym(P, mu, geo));
        }
        // More variables than moving parts.
        for (const auto& nu : enumerate_signatures(M - 1, 0, 3)) CHECK(principal_G(P, nu, u, M) == G_sym(P, nu, geo));
    }
    for (int m = 1; m <= 3; ++m) {
        SpectralVector zero(static_cast<std::size_t>(m), ExactScalar(0));
        for (const auto& mu : enumerate_signatures(m, 0, 3)) {
            CHECK(F_value(P, mu, zero) == pow(-*P.s, mu.size()) * q_pochhammer(P.q, P.q, m));
        }
    }
}

TEST_CASE("G at the rho specialization") {
    CHECK(G_rho(P, sig({1, 1})) == q_pochhammer(P.s_sq, P.q, 2) / P.s_sq);
    CHECK(G_rho(P, sig({2, 0})) == 0);
    // The defining limit: one fused row with q^J = 1/(s eps) and eps small.
    ExactScalar eps = rational(1, 100000000);
    FusedSpin spin = FusedSpin::generic(1 / (*P.s * eps));
    for (const auto& nu : std::vector<Signature>{sig({1}), sig({3}), sig({2, 1}), sig({1, 1})}) {
        Signature bottom(std::vector<int>(static_cast<std::size_t>(nu.length()), 0));
        ExactScalar approx = skew_fused_one_row(P, bottom, nu, eps, spin, false);
        ExactScalar exact = G_rho(P, nu);
        CHECK(to_double(abs(approx - exact)) < 1e-6 * std::max(1.0, to_double(abs(exact))));
    }
}

TEST_CASE("fused rows equal principal skew specializations") {
    ExactScalar u = rational(1, 5);
    for (int J = 1; J <= 3; ++J) {
        FusedSpin spin = FusedSpin::integer(P.q, J);
        SpectralVector geo;
        for (int i = 0; i < J; ++i) geo.push_back(pow(P.q, i) * u);
        for (int N = 0; N <= 2; ++N) {
            for (const auto& lambda : enumerate_signatures(N, 0, 2)) {
                for (const auto& mu : enumerate_signatures(N + J, 0, 3)) {
                    CHECK(skew_fused_one_row(P, lambda, mu, u, spin, true) == skew_F(P, lambda, mu, geo));
                }
                for (const auto& mu : enumerate_signatures(N, 0, 3)) {
                    CHECK(skew_fused_one_row(P, lambda, mu, u, spin, false) == skew_G(P, lambda, mu, geo));
                }
            }
        }
    }
}

TEST_CASE("measure weights") {
    MeasureSpec empty{P, {}};
    CHECK(measure_weight(empty, Signature{}) == 1);
    MeasureSpec one{P, {rational(1, 4)}};
    CHECK(measure_weight(one, sig({0})) == 0);
    // Single particle: weights form a geometric law on nu_1 >= 1 with ratio -s a(u).
    ExactScalar ratio = -*P.s * arrow_ratio(P, rational(1, 4));
    ExactScalar partial = 0;
    const int C = 20;
    for (const auto& w : enumerate_measure(one, C)) {
        CHECK(w.weight >= 0);
        partial += w.weight;
    }
    CHECK(1 - partial == pow(ratio, C));

    MeasureSpec two{ModelParams::full(rational(1, 3), rational(-1, 4)), {rational(1, 5), rational(1, 2)}};
    ExactScalar mass = 0;
    for (const auto& w : enumerate_measure(two, 18)) {
        CHECK(w.weight >= 0);
        CHECK(w.weight == measure_weight(two, w.nu));
        mass += w.weight;
    }
    CHECK(mass < 1);
    CHECK(to_double(1 - mass) < 1e-9);

    MeasureSpec bad{P, {rational(-19, 10)}};
    CHECK_THROWS_AS(measure_weight(bad, sig({1})), MeasureUndefined);
}

TEST_CASE("Lambda kernels have unit row sums") {
    SpectralVector u{rational(1, 3), rational(1, 7)};
    ExactScalar extra = rational(2, 5);
    for (const auto& nu : enumerate_signatures(3, 0, 3)) {
        ExactScalar total = 0;
        for (const auto& mu : interlacing_below(nu, 1)) {
            ExactScalar k = kernel_lambda_minus(P, u, extra, nu, mu);
            CHECK(k >= 0);
            total += k;
        }
        CHECK(total == 1);
    }
    for (const auto& lambda : enumerate_signatures(2, 0, 3)) {
        ExactScalar total = 0;
        for (const auto& mu : interlacing_below(lambda, 0)) total += kernel_lambda_circ(P, u, extra, lambda, mu);
        CHECK(total == 1);
    }
}

TEST_CASE("Q kernels: specializations and row sums") {
    ExactScalar v = rational(1, 3);
    for (const auto& mu : enumerate_signatures(2, 0, 2)) {
        for (const auto& nu : interlacing_above(mu, 0, 5)) {
            CHECK(kernel_q_circ(P, {0, 0}, v, mu, nu) == kernel_q_circ_zero(P, v, mu, nu));
        }
    }
    // One particle: Q°_{0,v} row sum tends to 1 with a geometric remainder.
    ExactScalar a = arrow_ratio(P, v);
    const int C = 30;
    ExactScalar partial = 0;
    for (const auto& nu : interlacing_above(sig({2}), 0, 2 + C)) partial += kernel_q_circ_zero(P, v, sig({2}), nu);
    CHECK(to_double(abs(1 - partial)) <= to_double(pow(abs(-*P.s * a), C)) + 1e-300);

    // Q^+ at rho: from lambda the new particle row sums to 1 up to the geometric remainder.
    ExactScalar u = rational(1, 4);
    ExactScalar ratio = abs(*P.s * arrow_ratio(P, u));
    Signature lambda = sig({3, 1});
    ExactScalar total = 0;
    for (const auto& nu : interlacing_above(lambda, 1, 3 + C)) {
        ExactScalar k = kernel_q_plus_rho(P, u, lambda, nu);
        CHECK(k >= 0);
        total += k;
    }
    CHECK(total <= 1);
    CHECK(to_double(1 - total) < to_double(pow(ratio, C - 2)));
}

TEST_CASE("Q^+ kernel rows sum to the Pieri ratio") {
    ExactScalar u = rational(1, 5);
    SpectralVector v{rational(1, 4), rational(1, 6)};
    Signature lambda = sig({1});
    const int C = 40;
    ExactScalar total = 0;
    for (const auto& nu : interlacing_above(lambda, 1, 1 + C)) total += kernel_q_plus(P, u, v, lambda, nu);
    CHECK(to_double(abs(1 - total)) < 1e-12);
}

TEST_CASE("multiset geometric tail") {
    ExactScalar r = rational(1, 3);
    CHECK(multiset_geometric_tail(1, r, 4) == pow(r, 5) / (1 - r));
    ExactScalar direct = 0;
    for (int N = 5; N <= 200; ++N) direct += (N + 1) * pow(r, N);
    CHECK(to_double(abs(multiset_geometric_tail(2, r, 4) - direct)) < 1e-40);
}

TEST_CASE("Cauchy identity, single variables") {
    IdentityConfig cfg{P, {rational(1, 4)}, {rational(1, 4)}, {}, 1, 2, 50};
    auto rep = identity_suite(IdentityKind::cauchy, cfg);
    REQUIRE(rep.instances.size() == 1);
    const auto& inst = rep.instances[0];
    CHECK(inst.rhs == (1 - P.q) / (1 - *P.s * rational(1, 4)) * (1 - P.q * rational(1, 16)) / (1 - rational(1, 16)));
    CHECK(inst.tail_bound > 0);
    CHECK(inst.pass);
}

TEST_CASE("identity suites pass") {
    ModelParams p = ModelParams::full(rational(1, 2), rational(-1, 4));
    IdentityConfig cfg{p,
                       {rational(1, 20), rational(1, 9), rational(1, 7)},
                       {rational(1, 11), rational(1, 6), rational(1, 13)},
                       {rational(1, 10), rational(1, 8), rational(2, 9), rational(3, 11), rational(5, 13)},
                       2,
                       2,
                       18};
    for (auto kind : all_identity_kinds()) {
        auto rep = identity_suite(kind, cfg);
        INFO(rep.suite);
        CHECK(!rep.instances.empty());
        for (const auto& inst : rep.instances) {
            INFO(inst.inputs);
            INFO(to_string(inst.lhs));
            INFO(to_string(inst.rhs));
            INFO(to_string(inst.tail_bound));
            CHECK(inst.pass);
        }
    }
}

TEST_CASE("nonnegativity in the stochastic regime") {
    ModelParams p = ModelParams::full(rational(2, 3), rational(-2, 5));
    SpectralVector u{rational(1, 2), rational(3, 2), rational(1, 5)};
    for (const auto& mu : enumerate_signatures(3, 0, 3)) {
        CHECK(F_sym(p, mu, u) >= 0);
        CHECK(G_conj_value(p, mu, u) >= 0);
    }
}
