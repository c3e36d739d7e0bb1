#pragma once

#include "vertexlab/random.hpp"
#include "vertexlab/signature.hpp"
#include "vertexlab/symfunc.hpp"
#include "vertexlab/weights.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vertexlab {

// Particle counts per location, plus an optional reservoir of infinitely many
// particles at location 1 (the finite part then lives at locations >= 2).
class ParticleConfig {
public:
    ParticleConfig() = default;
    static ParticleConfig from_signature(const Signature& nu);
    static ParticleConfig with_reservoir(const Signature& finite_part = Signature{});

    int count(int x) const;
    void set(int x, int n);
    void add(int x, int n) { set(x, count(x) + n); }
    long total() const;    // finite part
    int rightmost() const;  // -1 when the finite part is empty
    bool reservoir() const { return reservoir_; }
    const std::vector<int>& counts() const { return counts_; }
    Signature to_signature() const;  // finite part
    std::string str() const;

    friend bool operator==(const ParticleConfig&, const ParticleConfig&) = default;
    friend auto operator<=>(const ParticleConfig& a, const ParticleConfig& b) {
        if (auto c = a.reservoir_ <=> b.reservoir_; c != 0) return c;
        return a.counts_ <=> b.counts_;
    }

private:
    void trim();
    std::vector<int> counts_;
    bool reservoir_ = false;
};

// Law of the rightward output j2 of a vertex given its inputs (i1, j1), with
// i2 = i1 + j1 - j2. Laws are built on first use and cached.
class StochasticRow {
public:
    using Weight = std::function<ExactScalar(const VertexState&)>;

    StochasticRow(Weight weight, int horizontal_cap, int vertical_cap = -1);

    // L_u with su and s^2 given.
    static StochasticRow higher_spin(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& su);
    // L^{(J)}_u for integer J.
    static StochasticRow fused(const ExactScalar& q, const ExactScalar& s_sq, int J, const ExactScalar& su);
    // Six vertex table: b1 = L(1,0;1,0), b2 = L(0,1;0,1).
    static StochasticRow six_vertex(const ExactScalar& b1, const ExactScalar& b2);

    ExactScalar probability(const VertexState& st) const;
    const DyadicCategorical& law(int i1, int j1);
    int sample_j2(int i1, int j1, Rng& rng) { return law(i1, j1).sample(rng); }
    int horizontal_cap() const { return horizontal_cap_; }
    int vertical_cap() const { return vertical_cap_; }

private:
    Weight weight_;
    int horizontal_cap_;
    int vertical_cap_;
    std::vector<std::vector<std::unique_ptr<DyadicCategorical>>> cache_;  // [j1][i1]
};

// circ: the row starts at location 0 with no incoming arrow.
// plus: the row starts at location 1 with horizontal_cap() arrows entering from the left.
enum class UpdateMode { circ, plus };

ParticleConfig sequential_step(const ParticleConfig& config, StochasticRow& row, UpdateMode mode, Rng& rng);
ExactScalar sequential_transition_probability(const ParticleConfig& from, const ParticleConfig& to,
                                              const StochasticRow& row, UpdateMode mode);

ParticleConfig step_x_circ(const ParticleConfig& config, StochasticRow& row, Rng& rng);
ParticleConfig step_x_plus(const ParticleConfig& config, StochasticRow& row, Rng& rng);
// Direct sampling from the fused row.
ParticleConfig step_fused(const ParticleConfig& config, StochasticRow& fused_row, UpdateMode mode, Rng& rng);
// Composition of J elementary steps with su, q su, ..., q^{J-1} su.
std::vector<StochasticRow> composed_rows(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& su, int J);
ParticleConfig step_fused_composed(const ParticleConfig& config, std::vector<StochasticRow>& rows, UpdateMode mode,
                                   Rng& rng);
// Exact one-step law of the composed update, over all reachable configurations.
std::map<ParticleConfig, ExactScalar> composed_transition_law(const ParticleConfig& from,
                                                             const std::vector<StochasticRow>& rows,
                                                             UpdateMode mode, int max_location);

enum class QHahnVariant { circ, plus, inf };

// phi_{q, qJ s^2, s^2}(j | m), cached per m.
class QHahnLaw {
public:
    QHahnLaw(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& qJ, std::optional<int> J);
    static QHahnLaw integer(const ExactScalar& q, const ExactScalar& s_sq, int J);

    ExactScalar jump_probability(int j, std::optional<int> m) const;  // nullopt: reservoir
    const DyadicCategorical& jumps(int m);
    const DyadicCategorical& reservoir();
    std::optional<int> J() const { return J_; }
    const PhiArgs& args() const { return args_; }

private:
    PhiArgs args_;
    std::optional<int> J_;
    std::vector<std::unique_ptr<DyadicCategorical>> cache_;
    std::unique_ptr<DyadicCategorical> reservoir_;
};

// Parallel update n_x = m_x - j_x + j_{x-1}.
ParticleConfig step_q_hahn(const ParticleConfig& config, QHahnLaw& law, QHahnVariant variant, Rng& rng);
ExactScalar q_hahn_transition_probability(const ParticleConfig& from, const ParticleConfig& to, const QHahnLaw& law,
                                          QHahnVariant variant);
std::map<ParticleConfig, ExactScalar> q_hahn_transition_law(const ParticleConfig& from, const QHahnLaw& law,
                                                           QHahnVariant variant);
// Exact law after the given number of steps; needs integer J for the plus and inf variants.
std::map<ParticleConfig, ExactScalar> q_hahn_law_after(const ParticleConfig& initial, const QHahnLaw& law,
                                                      QHahnVariant variant, int steps);

// Continuous-time systems, simulated by next-event scheduling in double precision.
// q-TASEP from step initial data x_i(0) = -i, i = 1..particles; returns x_1 > x_2 > ...
std::vector<long> simulate_q_tasep(int particles, double q, double time, Rng& rng);
// q-Boson from infinitely many particles at 1; site x >= 2 emits at rate 1 - q^{m_x}, the reservoir at rate 1.
ParticleConfig simulate_q_boson(double q, double time, Rng& rng);
// ASEP with right rate 1 and left rate q from y_i(0) = -i, i = 1..particles; the last
// particle sees a wall on its left, standing in for the packed tail of the step data.
std::vector<long> simulate_asep(int particles, double q, double time, Rng& rng);
long asep_height(const std::vector<long>& positions, long x);

// Stochastic six vertex model in the quadrant, row by row, on columns 1..width.
// Paths leaving column width to the right are counted as escaped.
class SixVertexQuadrant {
public:
    SixVertexQuadrant(const ExactScalar& b1, const ExactScalar& b2, int width);
    // Row y uses the table six_vertex_weights(q, t[(y - 1) mod t.size()]).
    SixVertexQuadrant(const ExactScalar& q, const std::vector<ExactScalar>& t, int width);

    // Adds one row; if vertices is given, it receives the vertex states of this row.
    void advance(Rng& rng, std::vector<VertexState>* vertices = nullptr);
    int rows() const { return rows_; }
    int width() const { return width_; }
    // Number of paths through or to the right of (x, current row).
    long height(int x) const;
    const std::vector<int>& occupancy() const { return occupied_; }
    long escaped() const { return escaped_; }

private:
    std::vector<StochasticRow> rows_by_index_;
    int width_;
    int rows_ = 0;
    std::vector<int> occupied_;  // column x at index x - 1
    long escaped_ = 0;
};

// grid[y-1][x-1] = h(x, y).
std::vector<std::vector<long>> six_vertex_height_grid(const ExactScalar& b1, const ExactScalar& b2, int width,
                                                      int height, Rng& rng);
// Advances the model by height rows, recording each.
std::vector<std::vector<long>> six_vertex_height_grid(SixVertexQuadrant& model, int height, Rng& rng);

// Observables.
long height(const Signature& nu, int x);
// Throws for x <= 1 on a reservoir configuration, where the height is infinite.
long height(const ParticleConfig& config, int x);
// prod_i q^{h(x_i)}; zero whenever some h(x_i) is infinite.
ExactScalar q_moment_observable(const ParticleConfig& config, const ExactScalar& q, const std::vector<int>& xs);
ExactScalar q_moment_observable(const Signature& nu, const ExactScalar& q, const std::vector<int>& xs);
double q_moment_observable(const ParticleConfig& config, double q, const std::vector<int>& xs);

ExactScalar q_correlation_observable(const Signature& nu, const Signature& theta, const ExactScalar& q);
// Right-hand side of q^{l h(x)} = sum_k (-q)^{-k} [l k]_q (q;q)_k sum_{d_1 >= ... >= d_k >= x} Q_d.
ExactScalar height_power_from_correlations(const Signature& nu, int x, int ell, const ExactScalar& q);

struct BruteForceResult {
    ExactScalar value;
    ExactScalar tail;  // 1 - partial mass; bounds the omitted part when |observable| <= 1
};
BruteForceResult brute_force_expectation(const MeasureSpec& spec,
                                         const std::function<ExactScalar(const Signature&)>& observable,
                                         int cutoff);

// Brute force at the smallest cutoff (at most limit) whose omitted mass falls below
// tolerance; the caller checks the returned tail.
BruteForceResult brute_force_certified(const MeasureSpec& spec,
                                       const std::function<ExactScalar(const Signature&)>& observable,
                                       const ExactScalar& tolerance, int* cutoff_used = nullptr, int limit = 200);

// Running mean and standard error, accumulated in a fixed order.
class MeanAccumulator {
public:
    void add(double x);
    long count() const { return n_; }
    double mean() const { return mean_; }
    double standard_error() const;

private:
    long n_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

enum class ModelKind {
    x_circ,
    x_plus,
    fused_x_circ,
    fused_x_plus,
    q_hahn_circ,
    q_hahn_plus,
    q_hahn_inf,
    q_tasep,
    q_boson,
    six_vertex_quadrant,
    asep,
};
ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

struct RunSpec {
    ModelKind model = ModelKind::x_plus;
    ExactScalar q = rational(1, 2);
    ExactScalar s = rational(-1, 2);     // higher spin models
    ExactScalar s_sq = rational(-1, 2);  // q-Hahn models
    std::vector<ExactScalar> u;          // per-step spectral parameters, cycled
    int J = 1;
    ExactScalar b1 = rational(7, 10);    // six vertex
    ExactScalar b2 = rational(3, 10);
    std::vector<ExactScalar> t;          // six vertex per-row parameters with q; overrides b1, b2
    int steps = 0;                       // discrete models
    double time = 0;                     // continuous models
    int window = 64;                     // particles (q-TASEP, ASEP) or columns (six vertex)
    Signature initial;                   // starting configuration for the circ models
    std::vector<int> observe;            // q-moment points x_1 >= ... >= x_l
    long replicas = 0;
    std::uint64_t seed = 0;
    long keep_configs = 0;               // number of final configurations stored

    std::string canonical() const;
    void validate() const;  // regime checks
};

struct TrajectoryRecord {
    std::string spec_hash;
    std::uint64_t master_seed = 0;
    long replicas = 0;
    double mean = 0;
    double standard_error = 0;
    std::vector<std::string> configs;  // final configurations of the first keep_configs replicas
    std::vector<double> values;        // their observable values
};

std::string spec_hash(const RunSpec& spec);
// Replicas may be spread over worker threads; the record does not depend on the worker count.
TrajectoryRecord run_simulation(const RunSpec& spec, int workers = 1);

}  // namespace vertexlab
