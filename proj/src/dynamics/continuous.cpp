#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"

#include <cmath>

namespace vertexlab {

namespace {

void require_unit_interval(double q, bool allow_zero) {
    if (!(q < 1) || q < 0 || (!allow_zero && q == 0)) throw RegimeError("continuous-time models need 0 < q < 1");
}

// Picks index i with probability rates[i] / total.
std::size_t pick(const std::vector<double>& rates, double total, Rng& rng) {
    double target = rng.next_unit() * total;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (target < rates[i]) return i;
        target -= rates[i];
    }
    for (std::size_t i = rates.size(); i-- > 0;) {
        if (rates[i] > 0) return i;
    }
    return 0;
}

}  // namespace

std::vector<long> simulate_q_tasep(int particles, double q, double time, Rng& rng) {
    require_unit_interval(q, true);
    if (particles < 0) throw ArgumentError("negative particle count");
    std::vector<long> x(static_cast<std::size_t>(particles));
    for (int i = 0; i < particles; ++i) x[static_cast<std::size_t>(i)] = -(i + 1);
    std::vector<double> rates(x.size());
    double t = 0;
    while (!x.empty()) {
        double total = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            rates[i] = i == 0 ? 1.0 : 1.0 - std::pow(q, static_cast<double>(x[i - 1] - x[i] - 1));
            total += rates[i];
        }
        t += rng.next_exponential(total);
        if (t > time) break;
        ++x[pick(rates, total, rng)];
    }
    return x;
}

ParticleConfig simulate_q_boson(double q, double time, Rng& rng) {
    require_unit_interval(q, true);
    // counts[k] holds the particles at location k + 2; rates[0] is the reservoir.
    std::vector<int> counts;
    std::vector<double> rates;
    double t = 0;
    for (;;) {
        rates.assign(counts.size() + 1, 0.0);
        rates[0] = 1.0;
        double total = 1.0;
        for (std::size_t k = 0; k < counts.size(); ++k) {
            rates[k + 1] = counts[k] > 0 ? 1.0 - std::pow(q, counts[k]) : 0.0;
            total += rates[k + 1];
        }
        t += rng.next_exponential(total);
        if (t > time) break;
        std::size_t site = pick(rates, total, rng);
        if (site > 0) --counts[site - 1];
        if (counts.size() <= site) counts.resize(site + 1, 0);
        ++counts[site];
    }
    ParticleConfig out = ParticleConfig::with_reservoir();
    for (std::size_t k = 0; k < counts.size(); ++k) out.set(static_cast<int>(k) + 2, counts[k]);
    return out;
}

std::vector<long> simulate_asep(int particles, double q, double time, Rng& rng) {
    require_unit_interval(q, true);
    if (particles < 1) throw ArgumentError("ASEP needs at least one particle in the window");
    const auto n = static_cast<std::size_t>(particles);
    std::vector<long> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = -static_cast<long>(i + 1);
    // rates[2i] right jump of particle i, rates[2i+1] left jump.
    std::vector<double> rates(2 * n);
    double t = 0;
    for (;;) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool right_free = i == 0 || y[i - 1] > y[i] + 1;
            const bool left_free = i + 1 < n && y[i + 1] < y[i] - 1;
            rates[2 * i] = right_free ? 1.0 : 0.0;
            rates[2 * i + 1] = left_free ? q : 0.0;
            total += rates[2 * i] + rates[2 * i + 1];
        }
        t += rng.next_exponential(total);
        if (t > time) break;
        std::size_t e = pick(rates, total, rng);
        y[e / 2] += e % 2 == 0 ? 1 : -1;
    }
    return y;
}

long asep_height(const std::vector<long>& positions, long x) {
    long h = 0;
    for (long y : positions) h += y >= x ? 1 : 0;
    return h;
}

}  // namespace vertexlab
