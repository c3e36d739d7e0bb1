// Acceptance run: one PASS/FAIL line per criterion.

#include "vertexlab/cli.hpp"
#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"
#include "vertexlab/identities.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/residues.hpp"
#include "vertexlab/symfunc.hpp"
#include "vertexlab/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace vertexlab;

namespace {

const ExactScalar kTail = rational(1, 1000000000000);
constexpr double kSigmas = 4.0;

struct Outcome {
    bool pass = true;
    std::string detail;
    long checks = 0;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

ExactScalar random_rational(std::mt19937_64& gen, long lo, long hi, long den_max = 12) {
    std::uniform_int_distribution<long> den(1, den_max);
    const long d = den(gen);
    std::uniform_int_distribution<long> num(lo * d, hi * d);
    return rational(num(gen), d);
}

// Rational strictly inside (lo, hi).
ExactScalar random_open(std::mt19937_64& gen, long lo, long hi) {
    for (;;) {
        ExactScalar x = random_rational(gen, lo, hi, 13);
        if (x > lo && x < hi) return x;
    }
}

std::vector<std::vector<int>> nonincreasing_tuples(int max_len, int max_part) {
    std::vector<std::vector<int>> out;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
        if (!cur.empty()) out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_len) return;
        const int top = cur.empty() ? max_part : cur.back();
        for (int v = 1; v <= top; ++v) {
            cur.push_back(v);
            grow(cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    grow(cur);
    return out;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

// ------------------------------------------------------------------ 1

Outcome yang_baxter_criterion() {
    Outcome out;
    std::mt19937_64 gen(101);
    int done = 0;
    while (done < 20) {
        const ExactScalar q = random_rational(gen, -3, 3), s = random_rational(gen, -3, 3);
        const ExactScalar u1 = random_rational(gen, -4, 4), u2 = random_rational(gen, -4, 4);
        if (q == 0 || q == 1 || s == 0 || u1 == q * u2 || u2 == q * u1 || s * u1 == 1 || s * u2 == 1) continue;
        const ModelParams p = ModelParams::full(q, s);
        out.require(yang_baxter_check(p, u1, u2, 6, 6), "Yang-Baxter fails at q=" + to_string(q) + " s=" + to_string(s) +
                                                            " u1=" + to_string(u1) + " u2=" + to_string(u2));
        ++done;
    }
    out.detail = out.pass ? "20 random instances, 0 <= m,n <= 6" : out.detail;
    return out;
}

// ------------------------------------------------------------------ 2

Outcome stochasticity_criterion() {
    Outcome out;
    std::mt19937_64 gen(202);
    for (int trial = 0; trial < 6; ++trial) {
        const ExactScalar q = random_open(gen, 0, 1), s = random_open(gen, -1, 0), u = random_rational(gen, 0, 5);
        const ModelParams p = ModelParams::full(q, s);
        if (s * u == 1) continue;
        for (int i1 = 0; i1 <= 10; ++i1) {
            for (int j1 = 0; j1 <= 1; ++j1) {
                ExactScalar sum = 0;
                for (int j2 = 0; j2 <= std::min(1, i1 + j1); ++j2) sum += weight_L(p, u, {i1, j1, i1 + j1 - j2, j2});
                out.require(sum == 1, "row sum " + to_string(sum) + " at i1=" + std::to_string(i1));
            }
        }
        for (int J = 1; J <= 3; ++J) {
            const FusedSpin spin = FusedSpin::integer(q, J);
            for (int i1 = 0; i1 <= 5; ++i1) {
                for (int j1 = 0; j1 <= J; ++j1) {
                    for (int j2 = 0; j2 <= std::min(J, i1 + j1); ++j2) {
                        const VertexState st{i1, j1, i1 + j1 - j2, j2};
                        out.require(weight_L_fused(p, spin, u, st) == fusion_collapse_oracle(p, J, u, i1, j1, st.i2, j2),
                                    "fused weight differs from the collapse oracle");
                        out.require(weight_L_fused(p, spin, s, st) == weight_L_fused_at_s(q, s * s, spin.qJ, st),
                                    "fused weight at u = s differs from the product form");
                    }
                }
            }
        }
    }
    if (out.pass) out.detail = std::to_string(out.checks) + " exact checks";
    return out;
}

// ------------------------------------------------------------------ 3

Outcome symmetric_function_criterion() {
    Outcome out;
    const ModelParams p = ModelParams::full(rational(2, 5), rational(-1, 3));
    const SpectralVector pts{rational(1, 3), rational(1, 5), rational(2, 7)};
    for (int M = 1; M <= 3; ++M) {
        const SpectralVector x(pts.begin(), pts.begin() + M);
        for (const auto& mu : enumerate_signatures(M, 0, 4)) {
            out.require(F_sym(p, mu, x) == skew_F(p, Signature{}, mu, x), "F symmetrization differs at " + mu.str());
        }
    }
    for (int N = 1; N <= 3; ++N) {
        const SpectralVector v(pts.begin(), pts.begin() + N);
        for (int n = 0; n <= 3; ++n) {
            const Signature bottom(std::vector<int>(static_cast<std::size_t>(n), 0));
            for (const auto& nu : enumerate_signatures(n, 0, 4)) {
                out.require(G_sym(p, nu, v) == skew_G(p, bottom, nu, v), "G symmetrization differs at " + nu.str());
            }
        }
    }
    const ModelParams pi = ModelParams::full(rational(1, 2), rational(-1, 4));
    IdentityConfig cfg{pi,
                       {rational(1, 20), rational(1, 9), rational(1, 7)},
                       {rational(1, 11), rational(1, 6), rational(1, 13)},
                       {rational(1, 10), rational(1, 8), rational(2, 9), rational(3, 11), rational(5, 13)},
                       2,
                       2,
                       30};
    cfg.tolerance = kTail;
    for (IdentityKind kind : {IdentityKind::branching, IdentityKind::shift, IdentityKind::cauchy, IdentityKind::pieri_F,
                              IdentityKind::pieri_G}) {
        const IdentityReport rep = identity_suite(kind, cfg);
        out.require(!rep.instances.empty(), rep.suite + " produced no instances");
        for (const auto& inst : rep.instances) {
            const bool terminating = kind == IdentityKind::branching || kind == IdentityKind::shift;
            out.require(inst.pass && inst.tail_bound <= kTail && (!terminating || inst.lhs == inst.rhs),
                        rep.suite + " fails at " + inst.inputs);
        }
    }
    if (out.pass) out.detail = std::to_string(out.checks) + " checks; tails <= 1e-12";
    return out;
}

// ------------------------------------------------------------------ 4

struct RegimePoint {
    ExactScalar q;
    ExactScalar s;
    SpectralVector u;
};

std::vector<RegimePoint> regime_grid() {
    auto r = [](long n, long d) { return rational(n, d); };
    return {
        {r(1, 2), r(-1, 2), {r(1, 3), r(1, 4), r(1, 5), r(1, 7)}},
        {r(1, 3), r(-1, 3), {r(1, 2), r(1, 5), r(1, 9), r(1, 13)}},
        {r(2, 3), r(-2, 5), {r(1, 4), r(1, 5), r(1, 8), r(1, 10)}},
        {r(1, 5), r(-3, 5), {r(1, 7), r(1, 5), r(1, 11), r(1, 13)}},
        {r(4, 5), r(-1, 4), {r(1, 1), r(1, 2), r(1, 3), r(1, 6)}},
        {r(1, 4), r(-1, 2), {r(1, 2), r(1, 5), r(1, 9), r(1, 12)}},
        {r(3, 5), r(-1, 5), {r(3, 1), r(1, 2), r(1, 4), r(1, 9)}},
        {r(1, 7), r(-1, 2), {r(1, 10), r(1, 20), r(1, 30), r(1, 40)}},
        {r(5, 6), r(-1, 3), {r(1, 3), r(1, 7), r(1, 13), r(1, 17)}},
        {r(3, 7), r(-3, 5), {r(1, 50), r(1, 60), r(1, 70), r(1, 80)}},
    };
}

// Certified truncation of M_{u;rho} with weights summed by height profile (h(1), ..., h(5)).
struct HeightProfiles {
    std::map<std::vector<long>, ExactScalar> mass_by_profile;
    ExactScalar tail;
    int cutoff = 0;
};

HeightProfiles profile_measure(const MeasureSpec& spec, int max_x) {
    HeightProfiles out;
    ExactScalar mass = 0;
    while (1 - mass >= kTail && out.cutoff < 400) {
        ++out.cutoff;
        for (const auto& [nu, w] : enumerate_measure_layer(spec, out.cutoff)) {
            std::vector<long> h;
            for (int x = 1; x <= max_x; ++x) h.push_back(height(nu, x));
            out.mass_by_profile[h] += w;
            mass += w;
        }
    }
    out.tail = 1 - mass;
    return out;
}

Outcome moment_criterion() {
    Outcome out;
    const auto tuples = nonincreasing_tuples(3, 5);
    long comparisons = 0;
    int largest_cutoff = 0;
    for (const auto& point : regime_grid()) {
        const ModelParams p = ModelParams::full(point.q, point.s);
        require_higher_spin_regime(point.q, point.s, point.u);
        std::vector<ExactScalar> q_pow{ExactScalar(1)};
        for (std::size_t n = 1; n <= point.u.size(); ++n) {
            const SpectralVector u(point.u.begin(), point.u.begin() + static_cast<long>(n));
            const HeightProfiles profiles = profile_measure(MeasureSpec{p, u}, 5);
            largest_cutoff = std::max(largest_cutoff, profiles.cutoff);
            out.require(profiles.tail < kTail, "tail not certified below 1e-12 at n=" + std::to_string(n));
            for (const auto& x : tuples) {
                ExactScalar brute = 0;
                for (const auto& [h, w] : profiles.mass_by_profile) {
                    long e = 0;
                    for (int xi : x) e += h[static_cast<std::size_t>(xi - 1)];
                    while (static_cast<long>(q_pow.size()) <= e) q_pow.push_back(q_pow.back() * point.q);
                    brute += w * q_pow[static_cast<std::size_t>(e)];
                }
                const MomentQuery query{p, u, x};
                out.require(abs(q_moment(query) - brute) <= profiles.tail,
                            "q_moment outside the certified tail at q=" + to_string(point.q) + " n=" + std::to_string(n));
                out.require(centered_moment(query) == centered_moment_by_residues(query),
                            "Res_sigma sum differs from the iterated residues");
                ++comparisons;
            }
        }
    }
    if (out.pass) {
        out.detail = std::to_string(comparisons) + " queries over 10 regime points, n <= 4, l <= 3, x <= 5; cutoff <= " +
                     std::to_string(largest_cutoff);
    }
    return out;
}

// ------------------------------------------------------------------ 5

Outcome correlation_criterion() {
    Outcome out;
    const std::vector<RegimePoint> points = {
        {rational(1, 2), rational(-1, 2), {rational(1, 3), rational(1, 4), rational(1, 5)}},
        {rational(1, 3), rational(-2, 5), {rational(1, 2), rational(1, 7), rational(1, 9)}},
        {rational(3, 4), rational(-1, 4), {rational(1, 1), rational(1, 3), rational(1, 8)}},
    };
    std::vector<Signature> thetas;
    for (int k = 0; k <= 2; ++k) {
        for (const auto& th : enumerate_signatures(k, 0, 2)) thetas.push_back(th);
    }
    for (const auto& point : points) {
        const ModelParams p = ModelParams::full(point.q, point.s);
        for (std::size_t n = 1; n <= 3; ++n) {
            const SpectralVector u(point.u.begin(), point.u.begin() + static_cast<long>(n));
            const MeasureSpec spec{p, u};
            int cutoff = 0;
            const BruteForceResult mass =
                brute_force_certified(spec, [](const Signature&) { return ExactScalar(1); }, kTail, &cutoff);
            out.require(mass.tail < kTail, "tail not certified below 1e-12");
            const auto support = enumerate_measure(spec, cutoff);
            for (const auto& theta : thetas) {
                if (theta.length() > static_cast<int>(n)) continue;
                const Signature target = theta.shifted(1);
                ExactScalar brute = 0;
                for (const auto& [nu, w] : support) brute += w * q_correlation_observable(nu, target, point.q);
                const ExactScalar exact = q_correlation_exact(CorrelationQuery{p, u, theta});
                out.require(abs(exact - brute) <= mass.tail, "correlation outside the tail at theta=" + theta.str());
            }
            // Height powers as correlation combinations: exact per configuration, hence equal
            // expectations on the same truncated support, both within the tail of q_moment.
            for (int x = 1; x <= 3; ++x) {
                for (int l = 1; l <= 3; ++l) {
                    ExactScalar lhs = 0, rhs = 0;
                    for (const auto& [nu, w] : support) {
                        const ExactScalar power = pow(point.q, l * height(nu, x));
                        const ExactScalar combination = height_power_from_correlations(nu, x, l, point.q);
                        out.require(power == combination, "height expansion fails at " + nu.str());
                        lhs += w * power;
                        rhs += w * combination;
                    }
                    out.require(lhs == rhs, "expectations differ");
                    const std::vector<int> xs(static_cast<std::size_t>(l), x);
                    out.require(abs(q_moment(MomentQuery{p, u, xs}) - rhs) <= mass.tail,
                                "expansion disagrees with q_moment");
                }
            }
        }
    }
    if (out.pass) out.detail = std::to_string(out.checks) + " checks, n <= 3, k <= 2";
    return out;
}

// ------------------------------------------------------------------ 6

struct McCheck {
    std::string label;
    double exact = 0;
    TrajectoryRecord rec;
};

std::string mc_summary(const std::vector<McCheck>& checks, Outcome& out) {
    double worst = 0;
    for (const auto& c : checks) {
        const double se = c.rec.standard_error;
        const double d = se > 0 ? std::abs(c.rec.mean - c.exact) / se : (c.rec.mean == c.exact ? 0.0 : INFINITY);
        out.require(d <= kSigmas, c.label + ": mean " + fmt(c.rec.mean) + " exact " + fmt(c.exact) + " at " + fmt(d) +
                                      " standard errors");
        worst = std::max(worst, d);
    }
    return "largest distance " + fmt(worst) + " standard errors";
}

Outcome monte_carlo_criterion() {
    Outcome out;
    std::vector<McCheck> checks;
    const long replicas = 100000;
    std::uint64_t seed = 6001;

    {
        const ExactScalar q = rational(1, 2), s = rational(-1, 2);
        SpectralVector u;
        for (int t = 1; t <= 20; ++t) u.push_back(rational(21 + t, 21));
        for (const auto& x : std::vector<std::vector<int>>{{8}, {10}, {12}, {8, 8}, {12, 10, 8}}) {
            RunSpec spec;
            spec.model = ModelKind::x_plus;
            spec.q = q;
            spec.s = s;
            spec.u = u;
            spec.steps = 20;
            spec.observe = x;
            spec.replicas = replicas;
            spec.seed = seed++;
            checks.push_back({"X+ x=" + std::to_string(x.front()), to_double(q_moment(MomentQuery{ModelParams::full(q, s), u, x})),
                              run_simulation(spec)});
        }
    }
    {
        const ExactScalar q = rational(3, 4);
        SpectralVector t;
        for (int y = 1; y <= 20; ++y) t.push_back(1 / q + rational(y, 60));
        for (const auto& x : std::vector<std::vector<int>>{{10}, {15}, {20}, {16, 10}, {20, 15, 10}}) {
            RunSpec spec;
            spec.model = ModelKind::six_vertex_quadrant;
            spec.q = q;
            spec.t = t;
            spec.steps = 20;
            spec.window = x.front();
            spec.observe = x;
            spec.replicas = replicas;
            spec.seed = seed++;
            checks.push_back({"six vertex x=" + std::to_string(x.front()), to_double(q_moment_six_vertex(q, t, x)),
                              run_simulation(spec)});
        }
    }
    {
        const ExactScalar q = rational(1, 2), s_sq = rational(-1, 2);
        const int J = 2;
        for (const auto& x : std::vector<std::vector<int>>{{3}, {5}, {4, 3}, {5, 5}, {6, 4, 2}}) {
            RunSpec spec;
            spec.model = ModelKind::q_hahn_inf;
            spec.q = q;
            spec.s_sq = s_sq;
            spec.J = J;
            spec.steps = 20;
            spec.observe = x;
            spec.replicas = replicas;
            spec.seed = seed++;
            checks.push_back({"q-Hahn x=" + std::to_string(x.front()), to_double(q_moment_q_hahn(q, s_sq, pow(q, J), 20, x)),
                              run_simulation(spec)});
        }
    }
    const std::string summary = mc_summary(checks, out);
    if (out.pass) out.detail = "15 query sets at 1e5 replicas; " + summary;
    return out;
}

// ------------------------------------------------------------------ 7

Outcome transcendental_criterion() {
    Outcome out;
    std::vector<McCheck> checks;
    const long replicas = 100000;
    std::uint64_t seed = 7001;
    struct Case {
        ExactScalar q;
        ExactScalar t;
        int x;
    };
    for (const auto& c : std::vector<Case>{{rational(1, 2), rational(1), 2}, {rational(1, 3), rational(1, 2), 3},
                                           {rational(2, 3), rational(1), 2}}) {
        RunSpec spec;
        spec.model = ModelKind::q_boson;
        spec.q = c.q;
        spec.time = to_double(c.t);
        spec.observe = {c.x};
        spec.replicas = replicas;
        spec.seed = seed++;
        checks.push_back({"q-Boson t=" + to_string(c.t) + " x=" + std::to_string(c.x),
                          q_moment_q_boson(c.q, c.t, {c.x}, 128).value, run_simulation(spec)});
    }
    for (const auto& c : std::vector<Case>{{rational(1, 2), rational(1), 1}, {rational(1, 3), rational(1, 2), 0},
                                           {rational(2, 3), rational(1), -1}}) {
        RunSpec spec;
        spec.model = ModelKind::asep;
        spec.q = c.q;
        spec.time = to_double(c.t);
        spec.window = 64;
        spec.observe = {c.x};
        spec.replicas = replicas;
        spec.seed = seed++;
        checks.push_back({"ASEP t=" + to_string(c.t) + " x=" + std::to_string(c.x), q_moment_asep(c.q, c.t, {c.x}, 128).value,
                          run_simulation(spec)});
    }
    const std::string summary = mc_summary(checks, out);
    if (out.pass) out.detail = "3 q-Boson and 3 ASEP cases at 1e5 replicas; " + summary;
    return out;
}

// ------------------------------------------------------------------ 8

Outcome combinatorial_criterion() {
    Outcome out;
    std::mt19937_64 gen(808);
    for (int trial = 0; trial < 200; ++trial) {
        const int l = 1 + trial % 5;
        ExactScalar qhat = random_rational(gen, -3, 3);
        if (qhat == 0) qhat = rational(2, 7);
        std::vector<ExactScalar> X;
        for (int i = 0; i < l; ++i) X.push_back(random_rational(gen, -5, 5));
        const auto [lhs, rhs] = recombination_sides(qhat, X);
        out.require(lhs == rhs, "recombination identity fails");
    }
    std::uniform_int_distribution<int> bound(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 5;
        std::vector<int> bounds;
        for (int i = 0; i < k; ++i) bounds.push_back(bound(gen));
        std::sort(bounds.begin(), bounds.end());
        std::vector<ExactScalar> X(static_cast<std::size_t>(bounds.back() + k + 1));
        for (auto& v : X) v = random_rational(gen, -5, 5);
        const auto [lhs, rhs] = injection_shift_sides(X, bounds);
        out.require(lhs == rhs, "injection shift identity fails");
    }
    std::uniform_int_distribution<int> part(0, 6), len(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> parts;
        for (int i = len(gen); i > 0; --i) parts.push_back(part(gen));
        std::vector<int> x;
        for (int i = len(gen); i > 0; --i) x.push_back(1 + part(gen));
        std::sort(x.rbegin(), x.rend());
        const ExactScalar q = random_open(gen, 0, 1);
        out.require(r_coefficient_by_injections(Signature(parts), x, q) == r_coefficient_product(Signature(parts), x, q),
                    "r coefficient expansions differ");
    }
    if (out.pass) out.detail = std::to_string(out.checks) + " random instances, l, k <= 5";
    return out;
}

// ------------------------------------------------------------------ 9

Outcome reproducibility_criterion() {
    Outcome out;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "vertexlab_acceptance";
    fs::create_directories(dir);
    using cli::Settings;
    const std::vector<std::pair<std::string, Settings>> runs = {
        {"simulate", {{"model", "Xplus"}, {"u", "1/3,1/2,2"}, {"steps", "12"}, {"observe", "3,2"}, {"replicas", "2000"}, {"keep", "5"}}},
        {"simulate",
         {{"model", "Xcirc"}, {"u", "1/3,1/2"}, {"steps", "6"}, {"initial", "3,1,1"}, {"observe", "2"}, {"replicas", "2000"}}},
        {"simulate", {{"model", "fused_Xplus"}, {"u", "1/2,1/3"}, {"J", "2"}, {"steps", "6"}, {"observe", "2"}, {"replicas", "1000"}}},
        {"simulate", {{"model", "qHahn_inf"}, {"s2", "-1/2"}, {"J", "2"}, {"steps", "8"}, {"observe", "3"}, {"replicas", "2000"}}},
        {"simulate", {{"model", "qTASEP"}, {"time", "1.5"}, {"window", "16"}, {"observe", "3"}, {"replicas", "2000"}}},
        {"simulate", {{"model", "qBoson"}, {"time", "1"}, {"observe", "2"}, {"replicas", "2000"}, {"keep", "3"}}},
        {"simulate", {{"model", "ASEP"}, {"time", "1"}, {"window", "32"}, {"observe", "1"}, {"replicas", "2000"}}},
        {"simulate",
         {{"model", "sixVertexQuadrant"}, {"steps", "40"}, {"window", "40"}, {"observe", "10"}, {"replicas", "500"},
          {"emit-grid", (dir / "grid.csv").string()}}},
        {"moments", {{"u", "1/3,1/4,1/5"}, {"q", "1/2"}, {"s", "-1/2"}, {"x", "3,2"}, {"method", "both"}, {"replicas", "3000"}}},
        {"moments", {{"model", "q-boson"}, {"q", "1/2"}, {"time", "1"}, {"x", "2"}, {"method", "both"}, {"replicas", "3000"}}},
    };
    int index = 0;
    for (const auto& [command, flags] : runs) {
        Settings with_seed = flags;
        with_seed["seed"] = std::to_string(9000 + index);
        const cli::RunRecord rec = cli::run(cli::parse_config(command, {}, with_seed));
        const fs::path path = dir / ("record" + std::to_string(index++) + ".json");
        cli::save_record(rec, path.string());
        const cli::RunRecord loaded = cli::load_record(path.string());
        cli::RunOptions threaded;
        threaded.workers = 3;
        out.require(cli::replay_matches(loaded), command + " " + flags.begin()->second + " does not replay");
        out.require(cli::replay_matches(loaded, nullptr, threaded), command + " does not replay with 3 workers");
    }
    fs::remove_all(dir);
    if (out.pass) out.detail = std::to_string(runs.size()) + " records replayed from disk with 1 and 3 workers";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double budget_seconds;  // 0: no runtime bound
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "Yang-Baxter equation", 10, yang_baxter_criterion},
        {2, "stochasticity and fusion", 30, stochasticity_criterion},
        {3, "symmetric-function routes", 120, symmetric_function_criterion},
        {4, "moment formula vs brute force", 300, moment_criterion},
        {5, "correlation formula vs brute force", 0, correlation_criterion},
        {6, "Monte Carlo vs exact moments", 600, monte_carlo_criterion},
        {7, "transcendental moments vs Monte Carlo", 0, transcendental_criterion},
        {8, "combinatorial identities", 0, combinatorial_criterion},
        {9, "run record replay", 0, reproducibility_criterion},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
            out.pass = false;
            out.detail += "; over the " + fmt(c.budget_seconds) + " s budget";
        }
        std::printf("criterion %d: %s  %s (%s; %.1f s)\n", c.number, out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
                    seconds);
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
