#include "internal.hpp"

#include "vertexlab/errors.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace vertexlab::cli {

namespace {

std::string csv_field(const Json& value) {
    std::string text;
    if (value.is_string()) {
        text = value.get<std::string>();
    } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) text += (i ? ";" : "") + csv_field(value[i]);
    } else if (value.is_null()) {
        text = "";
    } else {
        text = value.dump();
    }
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string csv_line(std::initializer_list<Json> fields) {
    std::string line;
    bool first = true;
    for (const auto& f : fields) {
        line += (first ? "" : ",") + csv_field(f);
        first = false;
    }
    return line + "\n";
}

const Json& member(const Json& j, const char* key) {
    static const Json null_value;
    const auto it = j.find(key);
    return it == j.end() ? null_value : *it;
}

}  // namespace

bool RunRecord::passed() const {
    const auto it = results.find("pass");
    return it == results.end() || !it->is_boolean() || it->get<bool>();
}

Json RunRecord::to_json() const {
    Json j;
    j["schema_version"] = schema;
    j["tool"] = "vertexlab";
    j["tool_version"] = version;
    j["command"] = command;
    j["params"] = params;
    j["seed"] = std::to_string(seed);
    j["timing"] = Json{{"wall_seconds", wall_seconds}};
    j["results"] = results;
    return j;
}

RunRecord RunRecord::from_json(const Json& j) {
    try {
        RunRecord r;
        r.schema = j.at("schema_version").get<int>();
        if (r.schema != schema_version) {
            throw ArgumentError("unsupported record schema version " + std::to_string(r.schema));
        }
        r.version = j.at("tool_version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::string>();
        r.seed = std::stoull(j.at("seed").get<std::string>());
        r.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
        r.results = j.at("results");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("malformed run record: ") + e.what());
    } catch (const std::logic_error& e) {
        throw ArgumentError(std::string("malformed run record: ") + e.what());
    }
}

RunRecord run(const Command& command, const RunOptions& options) {
    RunRecord record;
    record.command = command.name;
    record.params = command.settings;
    if (const auto it = command.settings.find("seed"); it != command.settings.end()) {
        record.seed = detail::Reader(command.settings).unsigned_integer("seed");
    }
    const auto start = std::chrono::steady_clock::now();
    record.results = detail::execute(command.name, command.settings, options);
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

bool replay_matches(const RunRecord& record, RunRecord* rerun, const RunOptions& options) {
    RunOptions replay_options = options;
    replay_options.write_files = false;
    const Command command = parse_config(record.command, record.params);
    RunRecord again = run(command, replay_options);
    const bool same = again.results == record.results && again.params == record.params;
    if (rerun) *rerun = std::move(again);
    return same;
}

RunRecord load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read run record " + path);
    try {
        return RunRecord::from_json(Json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ArgumentError("run record " + path + " is not valid JSON: " + e.what());
    }
}

void save_record(const RunRecord& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write run record " + path);
    out << record.to_json().dump(2) << "\n";
    if (!out) throw Error("failed writing run record " + path);
}

std::string results_csv(const RunRecord& record) {
    const Json& r = record.results;
    std::string out;
    if (record.command == "weights") {
        out = "i1,j1,i2,j2,value\n";
        for (const auto& row : r.at("rows")) out += csv_line({row[0], row[1], row[2], row[3], row[4]});
    } else if (record.command == "verify") {
        out = "inputs,lhs,rhs,tail_bound,pass\n";
        for (const auto& inst : r.at("instances")) {
            out += csv_line({inst["inputs"], inst["lhs"], inst["rhs"], inst["tail_bound"], inst["pass"]});
        }
    } else if (record.command == "simulate") {
        out = "replicas,mean,stderr\n" + csv_line({r.at("replicas"), r.at("mean"), r.at("stderr")});
    } else if (record.command == "moments") {
        const Json& mc = member(r, "mc");
        out = "exact,mc_mean,mc_stderr,replicas,sigma_distance\n" +
              csv_line({member(r, "exact"), member(mc, "mean"), member(mc, "stderr"), member(mc, "replicas"),
                        member(r, "sigma_distance")});
    } else if (record.command == "correlations") {
        const Json& brute = member(r, "brute_force");
        out = "exact,brute_force,tail\n" + csv_line({member(r, "exact"), member(brute, "value"), member(brute, "tail")});
    }
    return out;
}

std::string height_grid_csv(const std::vector<std::vector<long>>& grid) {
    std::string out;
    for (const auto& row : grid) {
        for (std::size_t x = 0; x < row.size(); ++x) {
            if (x) out += ',';
            out += std::to_string(row[x]);
        }
        out += '\n';
    }
    return out;
}

namespace {

struct SubcommandState {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::string config;
    std::string out;
    bool json = false;
    bool csv = false;
    bool dump = false;
    int workers = 1;
};

int report_error(const std::string& message) {
    std::cerr << "vertexlab: " << message << "\n";
    return exit_usage;
}

}  // namespace

int main_entry(int argc, char** argv) {
    CLI::App app{"vertexlab: exact weights, identity checks, simulations and moment formulas for the stochastic higher "
                 "spin six vertex model"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(tool_version));

    std::map<std::string, SubcommandState> subs;
    for (const auto& name : command_names()) {
        SubcommandState& st = subs[name];
        st.app = app.add_subcommand(name);
        for (const auto& key : command_keys(name)) {
            std::string help = key.help;
            if (!key.fallback.empty()) help += " [" + key.fallback + "]";
            st.app->add_option("--" + key.key, st.values[key.key], help);
        }
        st.app->add_option("--config", st.config, "key=value file; flags override it");
        st.app->add_option("--out", st.out, "write the run record JSON here");
        st.app->add_flag("--json", st.json, "print the run record as JSON (default)");
        st.app->add_flag("--csv", st.csv, "print the results as CSV");
        st.app->add_option("--workers", st.workers, "worker threads for replicas")->check(CLI::PositiveNumber);
        if (name == "weights") st.app->add_flag("--dump", st.dump, "print the weight table as CSV");
    }
    std::string replay_path;
    int replay_workers = 1;
    CLI::App* replay = app.add_subcommand("replay", "re-run a run record and compare its results payload");
    replay->add_option("record", replay_path, "run record JSON")->required();
    replay->add_option("--workers", replay_workers, "worker threads for replicas")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (replay->parsed()) {
            const RunRecord record = load_record(replay_path);
            RunRecord again;
            RunOptions options;
            options.workers = replay_workers;
            const bool same = replay_matches(record, &again, options);
            std::cout << (same ? "identical" : "differs") << ": " << record.command << " results\n";
            return same ? exit_pass : exit_check_failure;
        }
        for (auto& [name, st] : subs) {
            if (!st.app->parsed()) continue;
            if (st.json && (st.csv || st.dump)) return report_error("--json and --csv are exclusive");
            Settings flags;
            for (const auto& key : command_keys(name)) {
                if (st.app->get_option("--" + key.key)->count() > 0) flags[key.key] = st.values[key.key];
            }
            const Settings file = st.config.empty() ? Settings{} : load_config_file(st.config);
            const Command command = parse_config(name, file, flags);
            RunOptions options;
            options.workers = st.workers;
            const RunRecord record = run(command, options);
            if (!st.out.empty()) save_record(record, st.out);
            if (st.csv || st.dump) {
                std::cout << results_csv(record);
            } else {
                std::cout << record.to_json().dump(2) << "\n";
            }
            return record.passed() ? exit_pass : exit_check_failure;
        }
    } catch (const Error& e) {
        return report_error(e.what());
    } catch (const std::exception& e) {
        return report_error(e.what());
    }
    return exit_usage;
}

}  // namespace vertexlab::cli
