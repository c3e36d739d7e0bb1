#pragma once

#include "json.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace vertexlab::cli {

using Json = nlohmann::ordered_json;
using Settings = std::map<std::string, std::string>;

inline constexpr int schema_version = 1;
inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { exit_pass = 0, exit_check_failure = 1, exit_usage = 2 };

// One accepted key of a subcommand. An empty fallback leaves the key unset.
struct KeySpec {
    std::string key;
    std::string fallback;
    std::string help;
};

const std::vector<std::string>& command_names();
const std::vector<KeySpec>& command_keys(const std::string& command);

// key=value lines; '#' starts a comment; '_' in keys reads as '-'.
Settings parse_config_text(const std::string& text);
Settings load_config_file(const std::string& path);

// A subcommand whose settings are complete and checked.
struct Command {
    std::string name;
    Settings settings;
};

// Flags override file values; unknown keys, malformed numbers and regime violations throw.
Command parse_config(const std::string& name, const Settings& file, const Settings& flags = {});

struct RunOptions {
    int workers = 1;
    bool write_files = true;  // side outputs such as the height grid
};

struct RunRecord {
    int schema = schema_version;
    std::string version = tool_version;
    std::string command;
    Settings params;
    std::uint64_t seed = 0;
    double wall_seconds = 0;
    Json results;

    bool passed() const;  // false when the results report a failed check
    Json to_json() const;
    static RunRecord from_json(const Json& j);
};

RunRecord run(const Command& command, const RunOptions& options = {});

// Runs the recorded command again from the parameter echo and compares results payloads.
bool replay_matches(const RunRecord& record, RunRecord* rerun = nullptr, const RunOptions& options = {});

RunRecord load_record(const std::string& path);
void save_record(const RunRecord& record, const std::string& path);

std::string results_csv(const RunRecord& record);
// Row y, column x holds h(x, y); no header.
std::string height_grid_csv(const std::vector<std::vector<long>>& grid);

// Entry point of the vertexlab binary; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace vertexlab::cli
