#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"
#include "vertexlab/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

namespace vertexlab {

long height(const Signature& nu, int x) {
    long h = 0;
    for (int part : nu.parts()) h += part >= x ? 1 : 0;
    return h;
}

long height(const ParticleConfig& config, int x) {
    if (config.reservoir() && x <= 1) throw ArgumentError("the height is infinite at x <= 1 with a reservoir at 1");
    long h = 0;
    for (int y = std::max(x, 0); y <= config.rightmost(); ++y) h += config.count(y);
    return h;
}

ExactScalar q_moment_observable(const ParticleConfig& config, const ExactScalar& q, const std::vector<int>& xs) {
    long total = 0;
    for (int x : xs) {
        if (config.reservoir() && x <= 1) return 0;
        total += height(config, x);
    }
    return pow(q, total);
}

ExactScalar q_moment_observable(const Signature& nu, const ExactScalar& q, const std::vector<int>& xs) {
    long total = 0;
    for (int x : xs) total += height(nu, x);
    return pow(q, total);
}

double q_moment_observable(const ParticleConfig& config, double q, const std::vector<int>& xs) {
    long total = 0;
    for (int x : xs) {
        if (config.reservoir() && x <= 1) return 0.0;
        total += height(config, x);
    }
    return std::pow(q, static_cast<double>(total));
}

ExactScalar q_correlation_observable(const Signature& nu, const Signature& theta, const ExactScalar& q) {
    const int n = nu.length();
    const int k = theta.length();
    if (k > n) return 0;
    // ways[j]: weighted count of increasing tuples matching theta_1..theta_j so far.
    std::vector<ExactScalar> ways(static_cast<std::size_t>(k) + 1, ExactScalar(0));
    ways[0] = 1;
    ExactScalar qi = 1;
    for (int i = 1; i <= n; ++i) {
        qi *= q;
        for (int j = std::min(i, k); j >= 1; --j) {
            if (nu[i - 1] == theta[j - 1]) {
                ways[static_cast<std::size_t>(j)] += ways[static_cast<std::size_t>(j - 1)] * qi;
            }
        }
    }
    return ways[static_cast<std::size_t>(k)];
}

ExactScalar height_power_from_correlations(const Signature& nu, int x, int ell, const ExactScalar& q) {
    if (x < 1 || ell < 0) throw ArgumentError("need x >= 1 and l >= 0");
    ExactScalar total = 0;
    for (int k = 0; k <= ell; ++k) {
        ExactScalar inner = 0;
        if (k == 0) {
            inner = 1;
        } else if (nu.largest() >= x) {
            for (const auto& d : enumerate_signatures(k, x, nu.largest())) inner += q_correlation_observable(nu, d, q);
        }
        total += pow(-q, -k) * q_binomial(ell, k, q) * q_pochhammer(q, q, k) * inner;
    }
    return total;
}

BruteForceResult brute_force_expectation(const MeasureSpec& spec,
                                         const std::function<ExactScalar(const Signature&)>& observable,
                                         int cutoff) {
    if (spec.u.empty()) return {observable(Signature{}), ExactScalar(0)};
    if (cutoff < 1) throw TruncationError("cutoff must be at least 1");
    ExactScalar value = 0;
    ExactScalar mass = 0;
    for (const auto& [nu, w] : enumerate_measure(spec, cutoff)) {
        if (w == 0) continue;
        if (w < 0) throw RegimeError("negative measure weight; the brute-force tail bound needs a probability measure");
        mass += w;
        value += w * observable(nu);
    }
    return {value, 1 - mass};
}

BruteForceResult brute_force_certified(const MeasureSpec& spec,
                                       const std::function<ExactScalar(const Signature&)>& observable,
                                       const ExactScalar& tolerance, int* cutoff_used, int limit) {
    if (!(tolerance > 0)) throw ArgumentError("tolerance must be positive");
    if (spec.u.empty()) {
        if (cutoff_used) *cutoff_used = 0;
        return {observable(Signature{}), ExactScalar(0)};
    }
    // Adds one layer nu_1 = C at a time; the first C with tail below tolerance is the cutoff.
    ExactScalar value = 0, mass = 0;
    int C = 0;
    while (C < std::max(1, limit)) {
        ++C;
        for (const auto& [nu, w] : enumerate_measure_layer(spec, C)) {
            if (w == 0) continue;
            if (w < 0) throw RegimeError("negative measure weight; the brute-force tail bound needs a probability measure");
            mass += w;
            value += w * observable(nu);
        }
        if (1 - mass < tolerance) break;
    }
    if (cutoff_used) *cutoff_used = C;
    return {value, 1 - mass};
}

void MeanAccumulator::add(double x) {
    ++n_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double MeanAccumulator::standard_error() const {
    if (n_ < 2) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
}

namespace {

const std::vector<std::pair<ModelKind, std::string>>& model_names() {
    static const std::vector<std::pair<ModelKind, std::string>> names = {
        {ModelKind::x_circ, "Xcirc"},
        {ModelKind::x_plus, "Xplus"},
        {ModelKind::fused_x_circ, "fused_Xcirc"},
        {ModelKind::fused_x_plus, "fused_Xplus"},
        {ModelKind::q_hahn_circ, "qHahn_circ"},
        {ModelKind::q_hahn_plus, "qHahn_plus"},
        {ModelKind::q_hahn_inf, "qHahn_inf"},
        {ModelKind::q_tasep, "qTASEP"},
        {ModelKind::q_boson, "qBoson"},
        {ModelKind::six_vertex_quadrant, "sixVertexQuadrant"},
        {ModelKind::asep, "ASEP"},
    };
    return names;
}

bool is_continuous(ModelKind m) { return m == ModelKind::q_tasep || m == ModelKind::q_boson || m == ModelKind::asep; }

bool is_higher_spin(ModelKind m) {
    return m == ModelKind::x_circ || m == ModelKind::x_plus || m == ModelKind::fused_x_circ ||
           m == ModelKind::fused_x_plus;
}

bool is_q_hahn(ModelKind m) {
    return m == ModelKind::q_hahn_circ || m == ModelKind::q_hahn_plus || m == ModelKind::q_hahn_inf;
}

std::string join_scalars(const std::vector<ExactScalar>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string exact_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
    for (const auto& [kind, n] : model_names()) {
        if (n == name) return kind;
    }
    throw ArgumentError("unknown model '" + name + "'");
}

std::string model_kind_name(ModelKind kind) {
    for (const auto& [k, n] : model_names()) {
        if (k == kind) return n;
    }
    return "?";
}

std::string RunSpec::canonical() const {
    std::ostringstream os;
    os << "model=" << model_kind_name(model) << ";q=" << to_string(q) << ";s=" << to_string(s)
       << ";s_sq=" << to_string(s_sq) << ";u=" << join_scalars(u) << ";J=" << J << ";b1=" << to_string(b1)
       << ";b2=" << to_string(b2) << ";t=" << join_scalars(t) << ";steps=" << steps << ";time=" << exact_double(time) << ";window=" << window
       << ";initial=" << initial.str() << ";observe=" << join_ints(observe) << ";replicas=" << replicas
       << ";seed=" << seed << ";keep=" << keep_configs;
    return os.str();
}

void RunSpec::validate() const {
    if (replicas < 0) throw ArgumentError("replicas must be nonnegative");
    if (steps < 0) throw ArgumentError("steps must be nonnegative");
    if (time < 0 || !std::isfinite(time)) throw ArgumentError("time must be a finite nonnegative number");
    if (J < 1) throw ArgumentError("J must be a positive integer");
    for (std::size_t i = 1; i < observe.size(); ++i) {
        if (observe[i] > observe[i - 1]) throw ArgumentError("observation points must be nonincreasing");
    }
    if (is_higher_spin(model)) {
        if (u.empty() && steps > 0) throw ArgumentError("spectral parameters u are required");
        require_higher_spin_regime(q, s, u);
    }
    if (model == ModelKind::six_vertex_quadrant) {
        if (b1 < 0 || b1 > 1 || b2 < 0 || b2 > 1) throw RegimeError("six vertex weights need 0 <= b1, b2 <= 1");
        if (!t.empty()) require_six_vertex_regime(q, t);
        if (window < 1) throw ArgumentError("window must be positive");
    }
    if (is_q_hahn(model)) {
        if (!(q > 0 && q < 1)) throw RegimeError("q-Hahn dynamics need 0 < q < 1");
        if (s_sq > 0) throw RegimeError("q-Hahn dynamics need s^2 <= 0");
    }
    if (is_continuous(model)) {
        if (!(q >= 0 && q < 1)) throw RegimeError("continuous-time models need 0 <= q < 1");
        if (window < 1) throw ArgumentError("window must be positive");
    }
    if (model == ModelKind::x_circ || model == ModelKind::fused_x_circ || model == ModelKind::q_hahn_circ) return;
    if (!initial.empty()) throw ArgumentError("initial configurations apply to the circ models only");
}

std::string spec_hash(const RunSpec& spec) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : spec.canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct ReplicaOutcome {
    double value = 0;
    std::string config;
};

class Simulator {
public:
    explicit Simulator(const RunSpec& spec) : spec_(spec), qd_(to_double(spec.q)) {
        if (is_higher_spin(spec.model)) {
            const bool fused = spec.model == ModelKind::fused_x_circ || spec.model == ModelKind::fused_x_plus;
            for (const auto& u : spec.u) {
                ExactScalar su = spec.s * u;
                ExactScalar s_sq = spec.s * spec.s;
                rows_.push_back(fused ? StochasticRow::fused(spec.q, s_sq, spec.J, su)
                                      : StochasticRow::higher_spin(spec.q, s_sq, su));
            }
        }
        if (is_q_hahn(spec.model)) law_ = std::make_unique<QHahnLaw>(QHahnLaw::integer(spec.q, spec.s_sq, spec.J));
    }

    ReplicaOutcome run(Rng& rng) {
        switch (spec_.model) {
            case ModelKind::x_circ:
            case ModelKind::fused_x_circ: return discrete(ParticleConfig::from_signature(spec_.initial), UpdateMode::circ, rng);
            case ModelKind::x_plus:
            case ModelKind::fused_x_plus: return discrete(ParticleConfig{}, UpdateMode::plus, rng);
            case ModelKind::q_hahn_circ: return hahn(ParticleConfig::from_signature(spec_.initial), QHahnVariant::circ, rng);
            case ModelKind::q_hahn_plus: return hahn(ParticleConfig{}, QHahnVariant::plus, rng);
            case ModelKind::q_hahn_inf: return hahn(ParticleConfig::with_reservoir(), QHahnVariant::inf, rng);
            case ModelKind::q_tasep: {
                auto x = simulate_q_tasep(spec_.window, qd_, spec_.time, rng);
                // Arrow picture: h(x) = x_{x-1} + x - 1 for x >= 2.
                long total = 0;
                bool infinite = false;
                for (int p : spec_.observe) {
                    if (p <= 1) {
                        infinite = true;
                        continue;
                    }
                    if (p - 1 > spec_.window) throw ArgumentError("window too small for the observation points");
                    total += x[static_cast<std::size_t>(p - 2)] + p - 1;
                }
                std::string s;
                for (std::size_t i = 0; i < x.size() && i < 8; ++i) s += (i ? "," : "") + std::to_string(x[i]);
                return {infinite ? 0.0 : std::pow(qd_, static_cast<double>(total)), s};
            }
            case ModelKind::q_boson: {
                ParticleConfig c = simulate_q_boson(qd_, spec_.time, rng);
                return {q_moment_observable(c, qd_, spec_.observe), c.str()};
            }
            case ModelKind::six_vertex_quadrant: {
                SixVertexQuadrant model = spec_.t.empty() ? SixVertexQuadrant(spec_.b1, spec_.b2, spec_.window)
                                                          : SixVertexQuadrant(spec_.q, spec_.t, spec_.window);
                for (int t = 0; t < spec_.steps; ++t) model.advance(rng);
                long total = 0;
                for (int p : spec_.observe) total += model.height(p);
                std::string s;
                for (int x = 1; x <= model.width(); ++x) {
                    if (model.occupancy()[static_cast<std::size_t>(x - 1)]) s += (s.empty() ? "" : ",") + std::to_string(x);
                }
                return {std::pow(qd_, static_cast<double>(total)), s + (model.escaped() ? " +" + std::to_string(model.escaped()) : "")};
            }
            case ModelKind::asep: {
                auto y = simulate_asep(spec_.window, qd_, spec_.time, rng);
                long total = 0;
                for (int p : spec_.observe) total += asep_height(y, p);
                std::string s;
                for (std::size_t i = 0; i < y.size() && i < 8; ++i) s += (i ? "," : "") + std::to_string(y[i]);
                return {std::pow(qd_, static_cast<double>(total)), s};
            }
        }
        throw ArgumentError("unsupported model");
    }

private:
    ReplicaOutcome discrete(ParticleConfig c, UpdateMode mode, Rng& rng) {
        for (int t = 0; t < spec_.steps; ++t) {
            c = sequential_step(c, rows_[static_cast<std::size_t>(t) % rows_.size()], mode, rng);
        }
        return {q_moment_observable(c, qd_, spec_.observe), c.str()};
    }

    ReplicaOutcome hahn(ParticleConfig c, QHahnVariant v, Rng& rng) {
        for (int t = 0; t < spec_.steps; ++t) c = step_q_hahn(c, *law_, v, rng);
        return {q_moment_observable(c, qd_, spec_.observe), c.str()};
    }

    const RunSpec& spec_;
    double qd_;
    std::vector<StochasticRow> rows_;
    std::unique_ptr<QHahnLaw> law_;
};

}  // namespace

TrajectoryRecord run_simulation(const RunSpec& spec, int workers) {
    spec.validate();
    if (workers < 1) throw ArgumentError("workers must be positive");
    TrajectoryRecord rec;
    rec.spec_hash = spec_hash(spec);
    rec.master_seed = spec.seed;
    rec.replicas = spec.replicas;
    if (spec.replicas == 0) return rec;
    std::vector<ReplicaOutcome> outcomes(static_cast<std::size_t>(spec.replicas));
    auto work = [&](long first, long last) {
        Simulator sim(spec);
        for (long r = first; r < last; ++r) {
            Rng rng(spec.seed, static_cast<std::uint64_t>(r));
            ReplicaOutcome out = sim.run(rng);
            if (r >= spec.keep_configs) out.config.clear();
            outcomes[static_cast<std::size_t>(r)] = std::move(out);
        }
    };
    const long threads = std::min<long>(workers, spec.replicas);
    if (threads == 1) {
        work(0, spec.replicas);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
        for (long w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    work(spec.replicas * w / threads, spec.replicas * (w + 1) / threads);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    MeanAccumulator acc;
    for (long r = 0; r < spec.replicas; ++r) {
        const auto& out = outcomes[static_cast<std::size_t>(r)];
        acc.add(out.value);
        if (r < spec.keep_configs) {
            rec.configs.push_back(out.config);
            rec.values.push_back(out.value);
        }
    }
    rec.mean = acc.mean();
    rec.standard_error = acc.standard_error();
    return rec;
}

}  // namespace vertexlab
