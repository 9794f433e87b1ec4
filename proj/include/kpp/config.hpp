#pragma once

#include <map>
#include <string>
#include <vector>

#include "kpp/model.hpp"

namespace kpp {

// Flat key=value configuration record. Keys are command flag names without
// the leading dashes; values are the literal strings.
struct RunConfig {
  std::map<std::string, std::string> entries;

  bool operator==(const RunConfig&) const = default;
};

// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Serialization; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

// Rejects keys outside `allowed` with a ValidationError naming the key.
void check_known_keys(const RunConfig& config, const std::vector<std::string>& allowed);

// Flow descriptor: "zero", "cosine:amplitude=R[:mode=INT]", "pwl:file=PATH".
ShearFlow parse_flow_spec(const std::string& spec, const CrossSection& cs);

// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double v);

}  // namespace kpp
