#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrsync/experiments.hpp"

namespace hrsync {

/// Parse failure carrying the 1-based line it refers to (0 when the error
/// is not tied to a line).
struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& message);
    int line;
};

/// Sectioned key = value text. `#` starts a comment.
struct ConfigDocument {
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };
    std::map<std::string, std::vector<Entry>> sections;
};

ConfigDocument parse_config_document(const std::string& text);

/// Resolves a document into a RunConfig: preset first, then explicit keys
/// (S takes precedence over q), then defaults for anything missing.
RunConfig parse_run_config(const std::string& text);

/// Full resolved config in the same format; parse_run_config of the echo
/// yields an equal RunConfig.
std::string echo_run_config(const RunConfig& config);

/// Keys accepted in each section.
const std::map<std::string, std::vector<std::string>>& config_schema();

/// Closest valid key by edit distance, for error messages.
std::string nearest_key(const std::string& key,
                        const std::vector<std::string>& candidates);

}  // namespace hrsync
