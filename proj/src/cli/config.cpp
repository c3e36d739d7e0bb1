#include "internal.hpp"

#include "vertexlab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace vertexlab::cli {

namespace {

const std::map<std::string, std::vector<KeySpec>>& key_table() {
    static const std::map<std::string, std::vector<KeySpec>> table = {
        {"weights",
         {
             {"model", "higher-spin", "higher-spin, fused or six-vertex"},
             {"q", "", "quantization parameter"},
             {"s", "", "spin parameter (higher-spin, fused)"},
             {"u", "", "spectral parameter (higher-spin, fused)"},
             {"t", "", "six vertex parameter t = su"},
             {"J", "1", "fusion level (fused)"},
             {"i-max", "4", "largest vertical input"},
         }},
        {"verify",
         {
             {"suite", "", "identity suite to check"},
             {"q", "", "quantization parameter"},
             {"s", "", "spin parameter"},
             {"u", "", "spectral parameters u"},
             {"v", "", "spectral parameters v"},
             {"z", "", "eigenfunction points or indeterminates"},
             {"x", "", "moment points, nonincreasing"},
             {"theta", "", "correlation signature"},
             {"bounds", "", "nondecreasing bounds (injection-shift)"},
             {"J", "3", "largest fusion level (fusion)"},
             {"i-max", "5", "largest vertical input (stochasticity, fusion)"},
             {"m-max", "6", "largest block index (yang-baxter)"},
             {"max-size", "2", "largest number of variables"},
             {"max-part", "2", "largest fixed part"},
             {"cutoff", "auto", "brute-force cutoff or auto"},
             {"tolerance", "1/1000000000000", "largest acceptable certified tail"},
         }},
        {"simulate",
         {
             {"model", "Xplus", "Xcirc, Xplus, fused_Xcirc, fused_Xplus, qHahn_circ, qHahn_plus, qHahn_inf, qTASEP, "
                                "qBoson, sixVertexQuadrant, ASEP"},
             {"q", "1/2", "quantization parameter"},
             {"s", "-1/2", "spin parameter"},
             {"s2", "-1/2", "s^2 for the q-Hahn models"},
             {"u", "", "per-step spectral parameters, cycled"},
             {"t", "", "six vertex per-row parameters, cycled; overrides b1, b2"},
             {"J", "1", "fusion level or q-Hahn J"},
             {"b1", "7/10", "six vertex L(1,0;1,0)"},
             {"b2", "3/10", "six vertex L(0,1;0,1)"},
             {"steps", "0", "discrete steps or quadrant rows"},
             {"time", "0", "continuous time"},
             {"window", "64", "particles (qTASEP, ASEP) or columns (quadrant)"},
             {"initial", "", "initial signature for the circ models"},
             {"observe", "", "q-moment points x_1 >= ... >= x_l"},
             {"replicas", "0", "number of replicas"},
             {"seed", "1", "master seed"},
             {"keep", "0", "final configurations to store"},
             {"emit-grid", "", "CSV path for one quadrant height grid"},
         }},
        {"moments",
         {
             {"model", "higher-spin", "higher-spin, six-vertex, q-hahn, q-boson or asep"},
             {"n", "", "number of spectral parameters or q-Hahn steps"},
             {"q", "", "quantization parameter"},
             {"s", "", "spin parameter (higher-spin)"},
             {"u", "", "spectral parameters (higher-spin)"},
             {"t", "", "per-row parameters (six-vertex)"},
             {"s2", "", "s^2 (q-hahn)"},
             {"J", "1", "q-Hahn J"},
             {"time", "", "continuous time (q-boson, asep)"},
             {"x", "", "moment points, nonincreasing"},
             {"method", "exact", "exact, mc or both"},
             {"replicas", "10000", "Monte Carlo replicas"},
             {"seed", "1", "master seed"},
             {"precision", "128", "MPFR bits for transcendental formulas"},
             {"sigma-max", "4", "largest accepted distance in standard errors"},
             {"window", "64", "ASEP particles"},
         }},
        {"correlations",
         {
             {"n", "", "number of spectral parameters"},
             {"q", "", "quantization parameter"},
             {"s", "", "spin parameter"},
             {"u", "", "spectral parameters"},
             {"theta", "", "signature theta"},
             {"method", "exact", "exact, brute or both"},
             {"cutoff", "auto", "brute-force cutoff or auto"},
             {"tolerance", "1/1000000000000", "largest acceptable certified tail"},
         }},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"weights", "verify", "simulate", "moments", "correlations"};
    return names;
}

const std::vector<KeySpec>& command_keys(const std::string& command) {
    const auto it = key_table().find(command);
    if (it == key_table().end()) throw ArgumentError("unknown command '" + command + "'");
    return it->second;
}

Settings parse_config_text(const std::string& text) {
    Settings out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ArgumentError("config line " + std::to_string(number) + ": expected key=value");
        }
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        if (key.empty()) throw ArgumentError("config line " + std::to_string(number) + ": empty key");
        if (out.count(key)) throw ArgumentError("config line " + std::to_string(number) + ": duplicate key '" + key + "'");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

Command parse_config(const std::string& name, const Settings& file, const Settings& flags) {
    const auto& keys = command_keys(name);
    auto known = [&](const std::string& key) {
        return std::any_of(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.key == key; });
    };
    Command command{name, {}};
    for (const auto& k : keys) {
        if (!k.fallback.empty()) command.settings[k.key] = k.fallback;
    }
    for (const Settings* layer : {&file, &flags}) {
        for (const auto& [raw, value] : *layer) {
            const std::string key = normalize_key(raw);
            if (!known(key)) throw ArgumentError("unknown key '" + key + "' for " + name);
            command.settings[key] = value;
        }
    }
    for (auto it = command.settings.begin(); it != command.settings.end();) {
        it = it->second.empty() ? command.settings.erase(it) : std::next(it);
    }
    detail::validate(name, command.settings);
    return command;
}

namespace detail {

bool Reader::has(const std::string& key) const {
    const auto it = settings_.find(key);
    return it != settings_.end() && !it->second.empty();
}

const std::string& Reader::text(const std::string& key) const {
    const auto it = settings_.find(key);
    if (it == settings_.end() || it->second.empty()) throw ArgumentError("missing required key '" + key + "'");
    return it->second;
}

ExactScalar Reader::scalar(const std::string& key) const {
    try {
        return parse_scalar(text(key));
    } catch (const ArgumentError& e) {
        if (!has(key)) throw;
        throw ArgumentError("key '" + key + "': " + e.what());
    } catch (const DivisionByZero& e) {
        throw ArgumentError("key '" + key + "': " + e.what());
    }
}

std::vector<ExactScalar> Reader::scalars(const std::string& key) const {
    try {
        return parse_scalar_list(text(key));
    } catch (const ArgumentError& e) {
        if (!has(key)) throw;
        throw ArgumentError("key '" + key + "': " + e.what());
    } catch (const DivisionByZero& e) {
        throw ArgumentError("key '" + key + "': " + e.what());
    }
}

namespace {

long parse_long(const std::string& key, const std::string& piece) {
    try {
        std::size_t used = 0;
        const long v = std::stol(piece, &used);
        if (used != piece.size()) throw std::invalid_argument(piece);
        return v;
    } catch (const std::logic_error&) {
        throw ArgumentError("key '" + key + "': malformed integer '" + piece + "'");
    }
}

}  // namespace

int Reader::integer(const std::string& key) const {
    const long v = parse_long(key, trim(text(key)));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ArgumentError("key '" + key + "': integer out of range");
    }
    return static_cast<int>(v);
}

std::vector<int> Reader::integers(const std::string& key) const {
    std::vector<int> out;
    std::istringstream in(text(key));
    std::string piece;
    while (std::getline(in, piece, ',')) {
        piece = trim(piece);
        if (piece.empty()) throw ArgumentError("key '" + key + "': empty list entry");
        const long v = parse_long(key, piece);
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            throw ArgumentError("key '" + key + "': integer out of range");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

Signature Reader::signature(const std::string& key) const {
    try {
        return parse_signature(text(key));
    } catch (const ArgumentError& e) {
        if (!has(key)) throw;
        throw ArgumentError("key '" + key + "': " + e.what());
    }
}

std::uint64_t Reader::unsigned_integer(const std::string& key) const {
    const std::string piece = trim(text(key));
    try {
        std::size_t used = 0;
        if (!piece.empty() && piece[0] == '-') throw std::invalid_argument(piece);
        const unsigned long long v = std::stoull(piece, &used);
        if (used != piece.size()) throw std::invalid_argument(piece);
        return v;
    } catch (const std::logic_error&) {
        throw ArgumentError("key '" + key + "': malformed unsigned integer '" + piece + "'");
    }
}

}  // namespace detail

}  // namespace vertexlab::cli
