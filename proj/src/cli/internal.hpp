#pragma once

#include "vertexlab/cli.hpp"
#include "vertexlab/scalar.hpp"
#include "vertexlab/signature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vertexlab::cli::detail {

// Typed access to complete settings; every error names the key.
class Reader {
public:
    explicit Reader(const Settings& settings) : settings_(settings) {}

    bool has(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    ExactScalar scalar(const std::string& key) const;
    std::vector<ExactScalar> scalars(const std::string& key) const;
    int integer(const std::string& key) const;
    std::vector<int> integers(const std::string& key) const;
    Signature signature(const std::string& key) const;
    std::uint64_t unsigned_integer(const std::string& key) const;

private:
    const Settings& settings_;
};

// Checks a complete settings map for the named command without running it.
void validate(const std::string& command, const Settings& settings);

// Runs the command and returns its results payload.
Json execute(const std::string& command, const Settings& settings, const RunOptions& options);

}  // namespace vertexlab::cli::detail
