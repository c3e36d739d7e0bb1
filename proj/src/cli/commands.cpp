#include "internal.hpp"

#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"
#include "vertexlab/identities.hpp"
#include "vertexlab/qseries.hpp"
#include "vertexlab/residues.hpp"
#include "vertexlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>

namespace vertexlab::cli::detail {

namespace {

Json exact_list_json(const std::vector<ExactScalar>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_string(x));
    return out;
}

bool within(const ExactScalar& lhs, const ExactScalar& rhs, const ExactScalar& tail, const ExactScalar& tolerance) {
    return abs(lhs - rhs) <= tail && tail <= tolerance;
}

BruteForceResult brute_force_setting(const Reader& r, const MeasureSpec& spec,
                                     const std::function<ExactScalar(const Signature&)>& observable, int* cutoff) {
    if (r.text("cutoff") == "auto") return brute_force_certified(spec, observable, r.scalar("tolerance"), cutoff);
    *cutoff = r.integer("cutoff");
    return brute_force_expectation(spec, observable, *cutoff);
}

void require_length(const Reader& r, const std::string& key, std::size_t length) {
    if (r.has("n") && static_cast<std::size_t>(r.integer("n")) != length) {
        throw ArgumentError("'" + key + "' has " + std::to_string(length) + " entries but n = " + r.text("n"));
    }
}

std::vector<int> moment_points(const Reader& r) {
    const auto x = r.integers("x");
    if (x.empty()) throw ArgumentError("at least one moment point is needed");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 1) throw ArgumentError("moment points must be >= 1");
        if (i > 0 && x[i] > x[i - 1]) throw ArgumentError("moment points must be nonincreasing");
    }
    return x;
}

int bounded_int(const Reader& r, const std::string& key, int lo, int hi) {
    const int v = r.integer(key);
    if (v < lo || v > hi) {
        throw ArgumentError("key '" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

std::string canonical_model(const std::string& name) {
    if (name == "higher-spin-stochastic") return "higher-spin";
    return name;
}

// ---------------------------------------------------------------- weights

struct WeightsJob {
    std::string model;
    ExactScalar q;
    ExactScalar s;
    ExactScalar u;
    ExactScalar t;
    int J = 1;
    int i_max = 4;
};

WeightsJob weights_job(const Settings& settings) {
    Reader r(settings);
    WeightsJob job;
    job.model = canonical_model(r.text("model"));
    job.q = r.scalar("q");
    job.J = bounded_int(r, "J", 1, 64);
    job.i_max = bounded_int(r, "i-max", 0, 64);
    if (job.model == "six-vertex") {
        job.t = r.scalar("t");
        require_six_vertex_regime(job.q, {job.t});
    } else if (job.model == "higher-spin" || job.model == "fused") {
        job.s = r.scalar("s");
        job.u = r.scalar("u");
        require_higher_spin_regime(job.q, job.s, {job.u});
    } else {
        throw ArgumentError("unknown weights model '" + job.model + "'");
    }
    return job;
}

Json run_weights(const WeightsJob& job) {
    Json rows = Json::array();
    bool stochastic = true;
    auto add = [&](const VertexState& st, const ExactScalar& value) {
        rows.push_back(Json::array({st.i1, st.j1, st.i2, st.j2, to_string(value)}));
    };
    if (job.model == "six-vertex") {
        const SixVertexTable table = six_vertex_weights(job.q, job.t);
        for (std::size_t k = 0; k < 6; ++k) add(SixVertexTable::states()[k], table.values[k]);
        stochastic = table.values[0] == 1 && table.values[1] + table.values[2] == 1 &&
                     table.values[3] + table.values[4] == 1 && table.values[5] == 1;
    } else {
        const ModelParams p = ModelParams::full(job.q, job.s);
        const bool fused = job.model == "fused";
        const int cap = fused ? job.J : 1;
        const FusedSpin spin = FusedSpin::integer(job.q, job.J);
        for (int i1 = 0; i1 <= job.i_max; ++i1) {
            for (int j1 = 0; j1 <= cap; ++j1) {
                ExactScalar sum = 0;
                for (int j2 = 0; j2 <= std::min(cap, i1 + j1); ++j2) {
                    const VertexState st{i1, j1, i1 + j1 - j2, j2};
                    const ExactScalar value = fused ? weight_L_fused(p, spin, job.u, st) : weight_L(p, job.u, st);
                    sum += value;
                    add(st, value);
                }
                stochastic = stochastic && sum == 1;
            }
        }
    }
    Json out;
    out["model"] = job.model;
    out["columns"] = Json::array({"i1", "j1", "i2", "j2", "value"});
    out["rows"] = rows;
    out["stochastic"] = stochastic;
    return out;
}

// ---------------------------------------------------------------- verify

struct VerifyJob {
    std::string suite;
    Settings settings;
};

const std::vector<std::string>& own_suites() {
    static const std::vector<std::string> names = {"yang-baxter", "stochasticity", "fusion",
                                                   "moments",     "correlations",  "injection-shift"};
    return names;
}

std::optional<IdentityKind> identity_suite_kind(const std::string& suite) {
    std::string name = suite;
    std::replace(name.begin(), name.end(), '-', '_');
    for (IdentityKind kind : all_identity_kinds()) {
        if (identity_kind_name(kind) == name) return kind;
    }
    return std::nullopt;
}

VerifyJob verify_job(const Settings& settings) {
    Reader r(settings);
    VerifyJob job{r.text("suite"), settings};
    const bool own = std::find(own_suites().begin(), own_suites().end(), job.suite) != own_suites().end();
    if (!own && !identity_suite_kind(job.suite)) {
        std::string names;
        for (const auto& n : own_suites()) names += " " + n;
        for (IdentityKind k : all_identity_kinds()) {
            std::string n = identity_kind_name(k);
            std::replace(n.begin(), n.end(), '_', '-');
            names += " " + n;
        }
        throw ArgumentError("unknown suite '" + job.suite + "'; known:" + names);
    }
    r.scalar("tolerance");
    if (r.text("cutoff") != "auto") bounded_int(r, "cutoff", 1, 100000);
    bounded_int(r, "J", 1, 16);
    bounded_int(r, "i-max", 0, 64);
    bounded_int(r, "m-max", 0, 64);
    bounded_int(r, "max-size", 0, 16);
    bounded_int(r, "max-part", 0, 64);
    if (job.suite == "injection-shift") {
        r.scalars("z");
        r.integers("bounds");
        return job;
    }
    const ExactScalar q = r.scalar("q");
    const ExactScalar s = r.scalar("s");
    if (r.has("u")) r.scalars("u");
    if (r.has("v")) r.scalars("v");
    if (r.has("z")) r.scalars("z");
    if (job.suite == "moments" || job.suite == "correlations") {
        const auto u = r.scalars("u");
        require_higher_spin_regime(q, s, u);
        if (job.suite == "moments") moment_points(r);
        if (job.suite == "correlations") r.signature("theta");
    }
    if (job.suite == "yang-baxter" && r.scalars("u").size() < 2) {
        throw ArgumentError("yang-baxter needs at least two spectral parameters in 'u'");
    }
    if ((job.suite == "stochasticity" || job.suite == "fusion") && r.scalars("u").empty()) {
        throw ArgumentError("'u' must list at least one spectral parameter");
    }
    return job;
}

Json instance_json(const std::string& inputs, const Json& lhs, const Json& rhs, const ExactScalar& tail, bool pass) {
    Json out;
    out["inputs"] = inputs;
    out["lhs"] = lhs;
    out["rhs"] = rhs;
    out["tail_bound"] = to_string(tail);
    out["pass"] = pass;
    return out;
}

Json run_verify(const VerifyJob& job) {
    Reader r(job.settings);
    Json instances = Json::array();
    auto push = [&](const std::string& inputs, const ExactScalar& lhs, const ExactScalar& rhs, const ExactScalar& tail,
                    bool pass) { instances.push_back(instance_json(inputs, to_string(lhs), to_string(rhs), tail, pass)); };

    if (job.suite == "injection-shift") {
        const auto X = r.scalars("z");
        const auto bounds = r.integers("bounds");
        const auto [lhs, rhs] = injection_shift_sides(X, bounds);
        push("bounds=" + r.text("bounds"), lhs, rhs, 0, lhs == rhs);
    } else {
        const ExactScalar q = r.scalar("q");
        const ExactScalar s = r.scalar("s");
        const ModelParams p = ModelParams::full(q, s);
        const SpectralVector u = r.has("u") ? r.scalars("u") : SpectralVector{};
        const ExactScalar tolerance = r.scalar("tolerance");
        if (auto kind = identity_suite_kind(job.suite)) {
            IdentityConfig cfg{p, u, r.has("v") ? r.scalars("v") : SpectralVector{},
                               r.has("z") ? r.scalars("z") : SpectralVector{}};
            cfg.max_size = r.integer("max-size");
            cfg.max_part = r.integer("max-part");
            cfg.tolerance = tolerance;
            IdentityReport report;
            if (r.text("cutoff") == "auto") {
                // Grow the cutoff until every certified tail is below the tolerance.
                for (int c : {30, 45, 60, 90}) {
                    cfg.cutoff = c;
                    report = identity_suite(*kind, cfg);
                    if (std::all_of(report.instances.begin(), report.instances.end(),
                                    [&](const IdentityInstance& i) { return i.tail_bound <= tolerance; })) {
                        break;
                    }
                }
            } else {
                cfg.cutoff = r.integer("cutoff");
                report = identity_suite(*kind, cfg);
            }
            for (const auto& inst : report.instances) {
                push(inst.inputs, inst.lhs, inst.rhs, inst.tail_bound, inst.pass);
            }
        } else if (job.suite == "yang-baxter") {
            const int m_max = r.integer("m-max");
            for (std::size_t i = 0; i + 1 < u.size(); ++i) {
                for (int m = 0; m <= m_max; ++m) {
                    for (int n = 0; n <= m_max; ++n) {
                        const auto [lhs, rhs] = yang_baxter_sides(p, u[i], u[i + 1], m, n);
                        Json l = Json::array(), rr = Json::array();
                        for (std::size_t k = 0; k < lhs.size(); ++k) {
                            l.push_back(to_string(lhs[k]));
                            rr.push_back(to_string(rhs[k]));
                        }
                        instances.push_back(instance_json("u1=" + to_string(u[i]) + " u2=" + to_string(u[i + 1]) +
                                                              " m=" + std::to_string(m) + " n=" + std::to_string(n),
                                                          l, rr, 0, lhs == rhs));
                    }
                }
            }
        } else if (job.suite == "stochasticity") {
            const int i_max = r.integer("i-max");
            for (const auto& uu : u) {
                for (int i1 = 0; i1 <= i_max; ++i1) {
                    for (int j1 = 0; j1 <= 1; ++j1) {
                        ExactScalar sum = 0;
                        for (int j2 = 0; j2 <= std::min(1, i1 + j1); ++j2) sum += weight_L(p, uu, {i1, j1, i1 + j1 - j2, j2});
                        push("u=" + to_string(uu) + " i1=" + std::to_string(i1) + " j1=" + std::to_string(j1), sum, 1, 0,
                             sum == 1);
                    }
                }
            }
        } else if (job.suite == "fusion") {
            const int i_max = r.integer("i-max");
            for (int J = 1; J <= r.integer("J"); ++J) {
                const FusedSpin spin = FusedSpin::integer(q, J);
                for (const auto& uu : u) {
                    for (int i1 = 0; i1 <= i_max; ++i1) {
                        for (int j1 = 0; j1 <= J; ++j1) {
                            for (int j2 = 0; j2 <= std::min(J, i1 + j1); ++j2) {
                                const VertexState st{i1, j1, i1 + j1 - j2, j2};
                                const std::string tag = "J=" + std::to_string(J) + " i1=" + std::to_string(i1) +
                                                        " j1=" + std::to_string(j1) + " j2=" + std::to_string(j2);
                                const ExactScalar lhs = weight_L_fused(p, spin, uu, st);
                                const ExactScalar rhs = fusion_collapse_oracle(p, J, uu, i1, j1, st.i2, j2);
                                push("u=" + to_string(uu) + " " + tag, lhs, rhs, 0, lhs == rhs);
                                if (&uu == &u.front()) {
                                    const ExactScalar at_s = weight_L_fused(p, spin, s, st);
                                    const ExactScalar product = weight_L_fused_at_s(q, s * s, spin.qJ, st);
                                    push("u=s " + tag, at_s, product, 0, at_s == product);
                                }
                            }
                        }
                    }
                }
            }
        } else if (job.suite == "moments") {
            const auto x = moment_points(r);
            const MomentQuery query{p, u, x};
            const MeasureSpec spec{p, u};
            int cutoff = 0;
            const auto oracle = brute_force_setting(
                r, spec, [&](const Signature& nu) { return q_moment_observable(nu, q, x); }, &cutoff);
            const ExactScalar exact = q_moment(query);
            push("x=" + r.text("x") + " cutoff=" + std::to_string(cutoff), exact, oracle.value, oracle.tail,
                 within(exact, oracle.value, oracle.tail, tolerance));
            const ExactScalar centered = centered_moment(query);
            const ExactScalar iterated = centered_moment_by_residues(query);
            push("centered x=" + r.text("x"), centered, iterated, 0, centered == iterated);
        } else if (job.suite == "correlations") {
            const Signature theta = r.signature("theta");
            const MeasureSpec spec{p, u};
            const Signature target = theta.shifted(1);
            int cutoff = 0;
            const auto oracle = brute_force_setting(
                r, spec, [&](const Signature& nu) { return q_correlation_observable(nu, target, q); }, &cutoff);
            const ExactScalar exact = q_correlation_exact(CorrelationQuery{p, u, theta});
            push("theta=" + theta.str() + " cutoff=" + std::to_string(cutoff), exact, oracle.value, oracle.tail,
                 within(exact, oracle.value, oracle.tail, tolerance));
        }
    }
    bool pass = true;
    for (const auto& inst : instances) pass = pass && inst["pass"].get<bool>();
    Json params = Json::object();
    for (const auto& [k, v] : job.settings) {
        if (k != "suite") params[k] = v;
    }
    Json out;
    out["suite"] = job.suite;
    out["params"] = params;
    out["instances"] = instances;
    out["pass"] = pass;
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateJob {
    RunSpec spec;
    std::string grid_path;
};

SimulateJob simulate_job(const Settings& settings) {
    Reader r(settings);
    SimulateJob job;
    RunSpec& spec = job.spec;
    spec.model = parse_model_kind(r.text("model"));
    spec.q = r.scalar("q");
    spec.s = r.scalar("s");
    spec.s_sq = r.scalar("s2");
    if (r.has("u")) spec.u = r.scalars("u");
    if (r.has("t")) spec.t = r.scalars("t");
    spec.J = r.integer("J");
    spec.b1 = r.scalar("b1");
    spec.b2 = r.scalar("b2");
    spec.steps = r.integer("steps");
    spec.time = to_double(r.scalar("time"));
    spec.window = r.integer("window");
    if (r.has("initial")) spec.initial = r.signature("initial");
    if (r.has("observe")) spec.observe = r.integers("observe");
    spec.replicas = r.integer("replicas");
    spec.seed = r.unsigned_integer("seed");
    spec.keep_configs = r.integer("keep");
    if (spec.keep_configs < 0) throw ArgumentError("keep must be nonnegative");
    spec.validate();
    if (r.has("emit-grid")) {
        if (spec.model != ModelKind::six_vertex_quadrant) {
            throw ArgumentError("emit-grid applies to the sixVertexQuadrant model only");
        }
        job.grid_path = r.text("emit-grid");
    }
    return job;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Json run_simulate(const SimulateJob& job, const RunOptions& options) {
    const TrajectoryRecord rec = run_simulation(job.spec, options.workers);
    Json out;
    out["model"] = model_kind_name(job.spec.model);
    out["spec_hash"] = rec.spec_hash;
    out["replicas"] = rec.replicas;
    if (rec.replicas > 0) {
        out["mean"] = rec.mean;
        out["stderr"] = rec.standard_error;
    } else {
        out["mean"] = nullptr;
        out["stderr"] = nullptr;
    }
    out["configs"] = rec.configs;
    out["values"] = rec.values;
    if (!job.grid_path.empty()) {
        const RunSpec& spec = job.spec;
        SixVertexQuadrant model = spec.t.empty() ? SixVertexQuadrant(spec.b1, spec.b2, spec.window)
                                                 : SixVertexQuadrant(spec.q, spec.t, spec.window);
        Rng rng(spec.seed, std::numeric_limits<std::uint64_t>::max());
        const std::string csv = height_grid_csv(six_vertex_height_grid(model, spec.steps, rng));
        if (options.write_files) {
            std::ofstream file(job.grid_path);
            if (!file) throw Error("cannot write grid file " + job.grid_path);
            file << csv;
            if (!file) throw Error("failed writing grid file " + job.grid_path);
        }
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(csv)));
        Json grid;
        grid["path"] = job.grid_path;
        grid["rows"] = spec.steps;
        grid["columns"] = spec.window;
        grid["cells"] = static_cast<long>(spec.steps) * spec.window;
        grid["fnv1a"] = hash;
        out["grid"] = grid;
    }
    return out;
}

// ---------------------------------------------------------------- moments

struct MomentsJob {
    Settings settings;
    std::string model;
    std::string method;
    std::vector<int> x;
    ExactScalar q;
};

MomentsJob moments_job(const Settings& settings) {
    Reader r(settings);
    MomentsJob job{settings, canonical_model(r.text("model")), r.text("method"), moment_points(r), r.scalar("q")};
    if (job.method != "exact" && job.method != "mc" && job.method != "both") {
        throw ArgumentError("method must be exact, mc or both");
    }
    if (job.method != "exact") {
        if (r.integer("replicas") < 0) throw ArgumentError("replicas must be nonnegative");
        r.unsigned_integer("seed");
        if (!(r.scalar("sigma-max") > 0)) throw ArgumentError("sigma-max must be positive");
    }
    bounded_int(r, "precision", 32, 1 << 16);
    if (job.model == "higher-spin") {
        const auto u = r.scalars("u");
        require_length(r, "u", u.size());
        require_higher_spin_regime(job.q, r.scalar("s"), u);
        require_generic(MomentQuery{ModelParams::full(job.q, r.scalar("s")), u, job.x});
    } else if (job.model == "six-vertex") {
        const auto t = r.scalars("t");
        require_length(r, "t", t.size());
        require_six_vertex_regime(job.q, t);
    } else if (job.model == "q-hahn") {
        if (!(job.q > 0 && job.q < 1)) throw RegimeError("regime violation: 0 < q < 1");
        if (!(r.scalar("s2") < 0)) throw RegimeError("regime violation: s^2 < 0");
        bounded_int(r, "n", 0, 100000);
        bounded_int(r, "J", 1, 4096);
    } else if (job.model == "q-boson" || job.model == "asep") {
        if (!(job.q > 0 && job.q < 1)) throw RegimeError("regime violation: 0 < q < 1");
        if (r.scalar("time") < 0) throw ArgumentError("time must be nonnegative");
        if (job.model == "asep" && job.x.size() != 1) throw ArgumentError("ASEP moments take one point");
        if (job.model == "asep") bounded_int(r, "window", 1, 1 << 20);
    } else {
        throw ArgumentError("unknown moments model '" + job.model + "'");
    }
    return job;
}

Json run_moments(const MomentsJob& job, const RunOptions& options) {
    Reader r(job.settings);
    const ExactScalar& q = job.q;
    Json query;
    query["model"] = job.model;
    query["x"] = job.x;
    query["q"] = to_string(q);
    RunSpec spec;
    spec.q = q;
    spec.observe = job.x;
    std::optional<ExactScalar> exact;
    std::optional<ApproxValue> approx;
    if (job.model == "higher-spin") {
        const ExactScalar s = r.scalar("s");
        const auto u = r.scalars("u");
        query["n"] = u.size();
        query["s"] = to_string(s);
        query["u"] = exact_list_json(u);
        if (job.method != "mc") exact = q_moment(MomentQuery{ModelParams::full(q, s), u, job.x});
        spec.model = ModelKind::x_plus;
        spec.s = s;
        spec.u = u;
        spec.steps = static_cast<int>(u.size());
    } else if (job.model == "six-vertex") {
        const auto t = r.scalars("t");
        query["n"] = t.size();
        query["t"] = exact_list_json(t);
        if (job.method != "mc") exact = q_moment_six_vertex(q, t, job.x);
        spec.model = ModelKind::six_vertex_quadrant;
        spec.t = t;
        spec.steps = static_cast<int>(t.size());
        spec.window = job.x.front();
    } else if (job.model == "q-hahn") {
        const ExactScalar s_sq = r.scalar("s2");
        const int n = r.integer("n");
        const int J = r.integer("J");
        query["n"] = n;
        query["s2"] = to_string(s_sq);
        query["J"] = J;
        if (job.method != "mc") exact = q_moment_q_hahn(q, s_sq, pow(q, J), n, job.x);
        spec.model = ModelKind::q_hahn_inf;
        spec.s_sq = s_sq;
        spec.J = J;
        spec.steps = n;
    } else {
        const ExactScalar time = r.scalar("time");
        const int bits = r.integer("precision");
        query["time"] = to_string(time);
        if (job.method != "mc") {
            approx = job.model == "q-boson" ? q_moment_q_boson(q, time, job.x, bits) : q_moment_asep(q, time, job.x, bits);
        }
        spec.model = job.model == "q-boson" ? ModelKind::q_boson : ModelKind::asep;
        spec.time = to_double(time);
        if (job.model == "asep") spec.window = r.integer("window");
    }
    Json out;
    out["query"] = query;
    if (exact) out["exact"] = to_string(*exact);
    if (approx) {
        out["exact"] = approx->decimal;
        out["approx"] = true;
        out["precision_bits"] = approx->precision_bits;
    }
    if (job.method != "exact") {
        spec.replicas = r.integer("replicas");
        spec.seed = r.unsigned_integer("seed");
        const TrajectoryRecord rec = run_simulation(spec, options.workers);
        Json mc;
        mc["mean"] = rec.replicas > 0 ? Json(rec.mean) : Json(nullptr);
        mc["stderr"] = rec.replicas > 0 ? Json(rec.standard_error) : Json(nullptr);
        mc["replicas"] = rec.replicas;
        mc["seed"] = std::to_string(spec.seed);
        out["mc"] = mc;
        if (job.method == "both") {
            const double target = exact ? to_double(*exact) : approx->value;
            const double diff = std::abs(rec.mean - target);
            std::optional<double> distance;
            if (rec.replicas == 0) {
                distance.reset();
            } else if (rec.standard_error > 0) {
                distance = diff / rec.standard_error;
            } else if (diff == 0) {
                distance = 0.0;
            }
            out["sigma_distance"] = distance ? Json(*distance) : Json(nullptr);
            out["pass"] = distance.has_value() && *distance <= to_double(r.scalar("sigma-max"));
        }
    }
    return out;
}

// ---------------------------------------------------------------- correlations

struct CorrelationsJob {
    Settings settings;
};

CorrelationsJob correlations_job(const Settings& settings) {
    Reader r(settings);
    const ExactScalar q = r.scalar("q");
    const ExactScalar s = r.scalar("s");
    const auto u = r.scalars("u");
    require_length(r, "u", u.size());
    require_higher_spin_regime(q, s, u);
    require_generic(MomentQuery{ModelParams::full(q, s), u, {}});
    r.signature("theta");
    const std::string& method = r.text("method");
    if (method != "exact" && method != "brute" && method != "both") throw ArgumentError("method must be exact, brute or both");
    r.scalar("tolerance");
    if (r.text("cutoff") != "auto") bounded_int(r, "cutoff", 1, 100000);
    return {settings};
}

Json run_correlations(const CorrelationsJob& job) {
    Reader r(job.settings);
    const ExactScalar q = r.scalar("q");
    const ExactScalar s = r.scalar("s");
    const auto u = r.scalars("u");
    const Signature theta = r.signature("theta");
    const ModelParams p = ModelParams::full(q, s);
    const std::string& method = r.text("method");
    Json query;
    query["n"] = u.size();
    query["q"] = to_string(q);
    query["s"] = to_string(s);
    query["u"] = exact_list_json(u);
    query["theta"] = theta.str();
    Json out;
    out["query"] = query;
    std::optional<ExactScalar> exact;
    if (method != "brute") {
        exact = q_correlation_exact(CorrelationQuery{p, u, theta});
        out["exact"] = to_string(*exact);
    }
    if (method != "exact") {
        const MeasureSpec spec{p, u};
        const Signature target = theta.shifted(1);
        int cutoff = 0;
        const auto oracle = brute_force_setting(
            r, spec, [&](const Signature& nu) { return q_correlation_observable(nu, target, q); }, &cutoff);
        Json brute;
        brute["value"] = to_string(oracle.value);
        brute["tail"] = to_string(oracle.tail);
        brute["cutoff"] = cutoff;
        out["brute_force"] = brute;
        if (exact) out["pass"] = within(*exact, oracle.value, oracle.tail, r.scalar("tolerance"));
    }
    return out;
}

}  // namespace

void validate(const std::string& command, const Settings& settings) {
    if (command == "weights") {
        weights_job(settings);
    } else if (command == "verify") {
        verify_job(settings);
    } else if (command == "simulate") {
        simulate_job(settings);
    } else if (command == "moments") {
        moments_job(settings);
    } else if (command == "correlations") {
        correlations_job(settings);
    } else {
        throw ArgumentError("unknown command '" + command + "'");
    }
}

Json execute(const std::string& command, const Settings& settings, const RunOptions& options) {
    if (options.workers < 1) throw ArgumentError("workers must be positive");
    if (command == "weights") return run_weights(weights_job(settings));
    if (command == "verify") return run_verify(verify_job(settings));
    if (command == "simulate") return run_simulate(simulate_job(settings), options);
    if (command == "moments") return run_moments(moments_job(settings), options);
    if (command == "correlations") return run_correlations(correlations_job(settings));
    throw ArgumentError("unknown command '" + command + "'");
}

}  // namespace vertexlab::cli::detail
