#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace vertexlab {

ParticleConfig ParticleConfig::from_signature(const Signature& nu) {
    ParticleConfig c;
    for (int part : nu.parts()) c.add(part, 1);
    return c;
}

ParticleConfig ParticleConfig::with_reservoir(const Signature& finite_part) {
    if (!finite_part.empty() && finite_part.smallest() < 2) {
        throw ArgumentError("with a reservoir at 1 the finite part lives at locations >= 2");
    }
    ParticleConfig c = from_signature(finite_part);
    c.reservoir_ = true;
    return c;
}

int ParticleConfig::count(int x) const {
    if (x < 0 || x >= static_cast<int>(counts_.size())) return 0;
    return counts_[static_cast<std::size_t>(x)];
}

void ParticleConfig::set(int x, int n) {
    if (x < 0) throw ArgumentError("negative location");
    if (n < 0) throw ArgumentError("negative particle count");
    if (x >= static_cast<int>(counts_.size())) {
        if (n == 0) return;
        counts_.resize(static_cast<std::size_t>(x) + 1, 0);
    }
    counts_[static_cast<std::size_t>(x)] = n;
    trim();
}

void ParticleConfig::trim() {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

long ParticleConfig::total() const {
    long t = 0;
    for (int c : counts_) t += c;
    return t;
}

int ParticleConfig::rightmost() const { return static_cast<int>(counts_.size()) - 1; }

Signature ParticleConfig::to_signature() const {
    std::map<int, int> m;
    for (std::size_t x = 0; x < counts_.size(); ++x) {
        if (counts_[x] > 0) m[static_cast<int>(x)] = counts_[x];
    }
    return Signature::from_multiplicities(m);
}

std::string ParticleConfig::str() const {
    std::string s = to_signature().str();
    return reservoir_ ? "1^inf " + s : s;
}

StochasticRow::StochasticRow(Weight weight, int horizontal_cap, int vertical_cap)
    : weight_(std::move(weight)), horizontal_cap_(horizontal_cap), vertical_cap_(vertical_cap) {
    if (horizontal_cap < 1) throw ArgumentError("horizontal capacity must be positive");
}

StochasticRow StochasticRow::higher_spin(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& su) {
    return StochasticRow([q, s_sq, su](const VertexState& st) { return weight_L_su(q, s_sq, su, st); }, 1);
}

StochasticRow StochasticRow::fused(const ExactScalar& q, const ExactScalar& s_sq, int J, const ExactScalar& su) {
    FusedSpin spin = FusedSpin::integer(q, J);
    return StochasticRow(
        [q, s_sq, spin, su](const VertexState& st) { return weight_L_fused_su(q, s_sq, spin, su, st); }, J);
}

StochasticRow StochasticRow::six_vertex(const ExactScalar& b1, const ExactScalar& b2) {
    if (b1 < 0 || b1 > 1 || b2 < 0 || b2 > 1) throw RegimeError("six vertex weights need b1, b2 in [0, 1]");
    return StochasticRow(
        [b1, b2](const VertexState& st) -> ExactScalar {
            if (st.i1 + st.j1 != st.i2 + st.j2) return 0;
            if (st.i1 > 1 || st.i2 > 1) return 0;
            if (st.i1 == 0 && st.j1 == 0) return 1;
            if (st.i1 == 1 && st.j1 == 1) return 1;
            if (st.i1 == 1) return st.i2 == 1 ? b1 : 1 - b1;
            return st.j2 == 1 ? b2 : 1 - b2;
        },
        1, 1);
}

ExactScalar StochasticRow::probability(const VertexState& st) const {
    if (st.i1 < 0 || st.j1 < 0 || st.i2 < 0 || st.j2 < 0) return 0;
    if (st.i1 + st.j1 != st.i2 + st.j2) return 0;
    if (st.j1 > horizontal_cap_ || st.j2 > horizontal_cap_) return 0;
    if (vertical_cap_ >= 0 && st.i2 > vertical_cap_) return 0;
    return weight_(st);
}

const DyadicCategorical& StochasticRow::law(int i1, int j1) {
    if (j1 < 0 || j1 > horizontal_cap_) throw ArgumentError("horizontal input exceeds the row capacity");
    if (vertical_cap_ >= 0 && i1 > vertical_cap_) throw ArgumentError("vertical input exceeds the spin bound");
    auto ju = static_cast<std::size_t>(j1);
    auto iu = static_cast<std::size_t>(i1);
    if (cache_.size() <= ju) cache_.resize(ju + 1);
    auto& row = cache_[ju];
    if (row.size() <= iu) row.resize(iu + 1);
    if (!row[iu]) {
        std::vector<ExactScalar> probs;
        for (int j2 = 0; j2 <= std::min(horizontal_cap_, i1 + j1); ++j2) {
            probs.push_back(probability({i1, j1, i1 + j1 - j2, j2}));
        }
        row[iu] = std::make_unique<DyadicCategorical>(probs);
    }
    return *row[iu];
}

namespace {

int first_site(UpdateMode mode) { return mode == UpdateMode::circ ? 0 : 1; }

int injected(UpdateMode mode, int cap) { return mode == UpdateMode::circ ? 0 : cap; }

void require_mode_support(const ParticleConfig& config, UpdateMode mode) {
    if (config.reservoir()) throw ArgumentError("sequential updates act on finite configurations");
    if (mode == UpdateMode::plus && config.count(0) != 0) {
        throw ArgumentError("location 0 must be empty for the plus dynamics");
    }
}

}  // namespace

ParticleConfig sequential_step(const ParticleConfig& config, StochasticRow& row, UpdateMode mode, Rng& rng) {
    require_mode_support(config, mode);
    ParticleConfig out = config;
    const int last = config.rightmost();
    int x = first_site(mode);
    int h = injected(mode, row.horizontal_cap());
    int checked = -1;
    while (x <= last || h > 0) {
        const int m = config.count(x);
        if (x > last && h != checked) {
            const auto& law = row.law(0, h);
            if (law.probabilities().back() == 1) throw RegimeError("arrows never leave the row: L(0,h;0,h) = 1");
            checked = h;
        }
        const int j2 = row.sample_j2(m, h, rng);
        out.set(x, m + h - j2);
        h = j2;
        ++x;
    }
    return out;
}

ExactScalar sequential_transition_probability(const ParticleConfig& from, const ParticleConfig& to,
                                              const StochasticRow& row, UpdateMode mode) {
    require_mode_support(from, mode);
    if (to.reservoir()) return 0;
    const int x0 = first_site(mode);
    for (int x = 0; x < x0; ++x) {
        if (from.count(x) != to.count(x)) return 0;
    }
    const int last = std::max(from.rightmost(), to.rightmost());
    int h = injected(mode, row.horizontal_cap());
    ExactScalar p = 1;
    for (int x = x0; x <= last; ++x) {
        const int m = from.count(x);
        const int n = to.count(x);
        const int j2 = m + h - n;
        if (j2 < 0 || j2 > row.horizontal_cap()) return 0;
        p *= row.probability({m, h, n, j2});
        if (p == 0) return 0;
        h = j2;
    }
    return h == 0 ? p : ExactScalar(0);
}

ParticleConfig step_x_circ(const ParticleConfig& config, StochasticRow& row, Rng& rng) {
    return sequential_step(config, row, UpdateMode::circ, rng);
}

ParticleConfig step_x_plus(const ParticleConfig& config, StochasticRow& row, Rng& rng) {
    return sequential_step(config, row, UpdateMode::plus, rng);
}

ParticleConfig step_fused(const ParticleConfig& config, StochasticRow& fused_row, UpdateMode mode, Rng& rng) {
    return sequential_step(config, fused_row, mode, rng);
}

std::vector<StochasticRow> composed_rows(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& su, int J) {
    if (J < 1) throw ArgumentError("J must be a positive integer");
    std::vector<StochasticRow> rows;
    ExactScalar t = su;
    for (int k = 0; k < J; ++k) {
        rows.push_back(StochasticRow::higher_spin(q, s_sq, t));
        t *= q;
    }
    return rows;
}

ParticleConfig step_fused_composed(const ParticleConfig& config, std::vector<StochasticRow>& rows, UpdateMode mode,
                                   Rng& rng) {
    ParticleConfig c = config;
    for (auto& row : rows) c = sequential_step(c, row, mode, rng);
    return c;
}

namespace {

// All outcomes of one sequential update that stay within [0, max_location].
void enumerate_sequential(const ParticleConfig& from, const StochasticRow& row, int x, int h, ParticleConfig& partial,
                          const ExactScalar& p, int max_location, std::map<ParticleConfig, ExactScalar>& out) {
    if (x > from.rightmost() && h == 0) {
        out[partial] += p;
        return;
    }
    if (x > max_location) return;
    const int m = from.count(x);
    for (int j2 = 0; j2 <= std::min(row.horizontal_cap(), m + h); ++j2) {
        ExactScalar w = row.probability({m, h, m + h - j2, j2});
        if (w == 0) continue;
        const int saved = partial.count(x);
        partial.set(x, m + h - j2);
        enumerate_sequential(from, row, x + 1, j2, partial, p * w, max_location, out);
        partial.set(x, saved);
    }
}

}  // namespace

std::map<ParticleConfig, ExactScalar> composed_transition_law(const ParticleConfig& from,
                                                             const std::vector<StochasticRow>& rows,
                                                             UpdateMode mode, int max_location) {
    std::map<ParticleConfig, ExactScalar> current{{from, ExactScalar(1)}};
    for (const auto& row : rows) {
        std::map<ParticleConfig, ExactScalar> next;
        for (const auto& [config, p] : current) {
            require_mode_support(config, mode);
            ParticleConfig partial = config;
            enumerate_sequential(config, row, first_site(mode), injected(mode, row.horizontal_cap()), partial, p,
                                 max_location, next);
        }
        current = std::move(next);
    }
    return current;
}

QHahnLaw::QHahnLaw(const ExactScalar& q, const ExactScalar& s_sq, const ExactScalar& qJ, std::optional<int> J)
    : args_{q, qJ * s_sq, s_sq}, J_(J) {
    if (J && *J < 0) throw ArgumentError("J must be nonnegative");
}

QHahnLaw QHahnLaw::integer(const ExactScalar& q, const ExactScalar& s_sq, int J) {
    return QHahnLaw(q, s_sq, pow(q, J), J);
}

ExactScalar QHahnLaw::jump_probability(int j, std::optional<int> m) const {
    if (m) return phi_beta_binomial(args_, j, *m);
    if (!J_) throw ArgumentError("the reservoir law needs an integer J");
    return phi_beta_binomial_infinite(args_, j);
}

const DyadicCategorical& QHahnLaw::jumps(int m) {
    auto mu = static_cast<std::size_t>(m);
    if (cache_.size() <= mu) cache_.resize(mu + 1);
    if (!cache_[mu]) {
        std::vector<ExactScalar> probs;
        for (int j = 0; j <= m; ++j) probs.push_back(jump_probability(j, m));
        cache_[mu] = std::make_unique<DyadicCategorical>(probs);
    }
    return *cache_[mu];
}

const DyadicCategorical& QHahnLaw::reservoir() {
    if (!reservoir_) {
        if (!J_) throw ArgumentError("the reservoir law needs an integer J");
        std::vector<ExactScalar> probs;
        for (int j = 0; j <= *J_; ++j) probs.push_back(jump_probability(j, std::nullopt));
        reservoir_ = std::make_unique<DyadicCategorical>(probs);
    }
    return *reservoir_;
}

namespace {

int q_hahn_start(QHahnVariant v) {
    switch (v) {
        case QHahnVariant::circ: return 0;
        case QHahnVariant::plus: return 1;
        case QHahnVariant::inf: return 2;
    }
    return 0;
}

void require_variant_support(const ParticleConfig& config, const QHahnLaw& law, QHahnVariant v) {
    if (v == QHahnVariant::inf) {
        if (!config.reservoir()) throw ArgumentError("the inf variant needs a reservoir configuration");
        if (config.count(0) != 0 || config.count(1) != 0) throw ArgumentError("reservoir configurations live at >= 2");
    } else if (config.reservoir()) {
        throw ArgumentError("the circ and plus variants act on finite configurations");
    }
    if (v == QHahnVariant::plus && config.count(0) != 0) throw ArgumentError("location 0 must be empty");
    if (v != QHahnVariant::circ && !law.J()) throw ArgumentError("the plus and inf variants need an integer J");
}

}  // namespace

ParticleConfig step_q_hahn(const ParticleConfig& config, QHahnLaw& law, QHahnVariant variant, Rng& rng) {
    require_variant_support(config, law, variant);
    ParticleConfig out = config;
    int incoming = 0;
    if (variant == QHahnVariant::plus) incoming = *law.J();
    if (variant == QHahnVariant::inf) incoming = law.reservoir().sample(rng);
    int x = q_hahn_start(variant);
    for (; x <= config.rightmost(); ++x) {
        const int m = config.count(x);
        const int j = m > 0 ? law.jumps(m).sample(rng) : 0;
        out.set(x, m - j + incoming);
        incoming = j;
    }
    out.add(x, incoming);
    return out;
}

ExactScalar q_hahn_transition_probability(const ParticleConfig& from, const ParticleConfig& to, const QHahnLaw& law,
                                          QHahnVariant variant) {
    require_variant_support(from, law, variant);
    if (to.reservoir() != from.reservoir()) return 0;
    const int x0 = q_hahn_start(variant);
    for (int x = 0; x < x0; ++x) {
        if (from.count(x) != to.count(x)) return 0;
    }
    ExactScalar p = 1;
    long incoming = 0;
    if (variant == QHahnVariant::plus) incoming = *law.J();
    if (variant == QHahnVariant::inf) {
        incoming = to.total() - from.total();
        if (incoming < 0 || incoming > *law.J()) return 0;
        p *= law.jump_probability(static_cast<int>(incoming), std::nullopt);
    }
    const int last = std::max(from.rightmost(), to.rightmost());
    for (int x = x0; x <= last; ++x) {
        const int m = from.count(x);
        const long j = m + incoming - to.count(x);
        if (j < 0 || j > m) return 0;
        p *= law.jump_probability(static_cast<int>(j), m);
        if (p == 0) return 0;
        incoming = j;
    }
    return incoming == 0 ? p : ExactScalar(0);
}

std::map<ParticleConfig, ExactScalar> q_hahn_transition_law(const ParticleConfig& from, const QHahnLaw& law,
                                                           QHahnVariant variant) {
    require_variant_support(from, law, variant);
    std::map<ParticleConfig, ExactScalar> out;
    std::vector<int> first;
    if (variant == QHahnVariant::plus) first = {*law.J()};
    if (variant == QHahnVariant::circ) first = {0};
    if (variant == QHahnVariant::inf) {
        for (int j = 0; j <= *law.J(); ++j) first.push_back(j);
    }
    const int x0 = q_hahn_start(variant);
    const int last = from.rightmost();
    // Depth-first over the jump sizes of the occupied sites.
    std::function<void(int, int, ParticleConfig&, const ExactScalar&)> walk =
        [&](int x, int incoming, ParticleConfig& partial, const ExactScalar& p) {
            if (x > last) {
                ParticleConfig done = partial;
                done.add(std::max(x, x0), incoming);
                out[done] += p;
                return;
            }
            const int m = from.count(x);
            for (int j = 0; j <= m; ++j) {
                ExactScalar w = m > 0 ? law.jump_probability(j, m) : ExactScalar(1);
                if (w == 0) continue;
                const int saved = partial.count(x);
                partial.set(x, m - j + incoming);
                walk(x + 1, j, partial, p * w);
                partial.set(x, saved);
            }
        };
    for (int r : first) {
        ExactScalar p0 = variant == QHahnVariant::inf ? law.jump_probability(r, std::nullopt) : ExactScalar(1);
        if (p0 == 0) continue;
        ParticleConfig partial = from;
        walk(x0, r, partial, p0);
    }
    return out;
}

std::map<ParticleConfig, ExactScalar> q_hahn_law_after(const ParticleConfig& initial, const QHahnLaw& law,
                                                      QHahnVariant variant, int steps) {
    std::map<ParticleConfig, ExactScalar> current{{initial, ExactScalar(1)}};
    for (int t = 0; t < steps; ++t) {
        std::map<ParticleConfig, ExactScalar> next;
        for (const auto& [config, p] : current) {
            for (const auto& [succ, w] : q_hahn_transition_law(config, law, variant)) next[succ] += p * w;
        }
        current = std::move(next);
    }
    return current;
}

SixVertexQuadrant::SixVertexQuadrant(const ExactScalar& b1, const ExactScalar& b2, int width)
    : width_(width), occupied_(static_cast<std::size_t>(width), 0) {
    if (width < 1) throw ArgumentError("quadrant width must be positive");
    rows_by_index_.push_back(StochasticRow::six_vertex(b1, b2));
}

SixVertexQuadrant::SixVertexQuadrant(const ExactScalar& q, const std::vector<ExactScalar>& t, int width)
    : width_(width), occupied_(static_cast<std::size_t>(width), 0) {
    if (width < 1) throw ArgumentError("quadrant width must be positive");
    if (t.empty()) throw ArgumentError("at least one row parameter is needed");
    require_six_vertex_regime(q, t);
    for (const auto& ty : t) {
        const SixVertexTable table = six_vertex_weights(q, ty);
        rows_by_index_.push_back(StochasticRow::six_vertex(table.b1(), table.b2()));
    }
}

void SixVertexQuadrant::advance(Rng& rng, std::vector<VertexState>* vertices) {
    if (vertices) vertices->clear();
    StochasticRow& row = rows_by_index_[static_cast<std::size_t>(rows_) % rows_by_index_.size()];
    int h = 1;
    for (int x = 1; x <= width_; ++x) {
        int& m = occupied_[static_cast<std::size_t>(x - 1)];
        const int j2 = row.sample_j2(m, h, rng);
        const int n = m + h - j2;
        if (vertices) vertices->push_back({m, h, n, j2});
        m = n;
        h = j2;
    }
    escaped_ += h;
    ++rows_;
}

long SixVertexQuadrant::height(int x) const {
    if (x < 1) throw ArgumentError("quadrant columns start at 1");
    long h = escaped_;
    for (int c = std::max(x, 1); c <= width_; ++c) h += occupied_[static_cast<std::size_t>(c - 1)];
    return h;
}

std::vector<std::vector<long>> six_vertex_height_grid(const ExactScalar& b1, const ExactScalar& b2, int width,
                                                      int height, Rng& rng) {
    SixVertexQuadrant model(b1, b2, width);
    return six_vertex_height_grid(model, height, rng);
}

std::vector<std::vector<long>> six_vertex_height_grid(SixVertexQuadrant& model, int height, Rng& rng) {
    const int width = model.width();
    std::vector<std::vector<long>> grid;
    for (int y = 1; y <= height; ++y) {
        model.advance(rng);
        std::vector<long> row(static_cast<std::size_t>(width));
        long running = model.escaped();
        for (int x = width; x >= 1; --x) {
            running += model.occupancy()[static_cast<std::size_t>(x - 1)];
            row[static_cast<std::size_t>(x - 1)] = running;
        }
        grid.push_back(std::move(row));
    }
    return grid;
}

}  // namespace vertexlab
