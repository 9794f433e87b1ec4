#include "kpp/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

double parse_number(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(field, "not a number: '" + text + "'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config", "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config", "line " + std::to_string(lineno) + ": empty key");
    }
    if (!config.entries.emplace(key, value).second) {
      throw ValidationError("config",
                            "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config", "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const RunConfig& config) {
  std::string out;
  for (const auto& [key, value] : config.entries) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

void check_known_keys(const RunConfig& config, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : config.entries) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(key, "unknown configuration key");
    }
  }
}

ShearFlow parse_flow_spec(const std::string& spec, const CrossSection& cs) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "zero") {
    if (parts.size() != 1) throw ValidationError("flow", "zero takes no options");
    return ShearFlow::zero(cs);
  }

  std::map<std::string, std::string> options;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) {
      throw ValidationError("flow", "expected option=value, got '" + parts[i] + "'");
    }
    options[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
  }

  if (kind == "cosine") {
    if (!options.count("amplitude")) {
      throw ValidationError("flow", "cosine requires amplitude=");
    }
    const double amplitude = parse_number("flow.amplitude", options["amplitude"]);
    int mode = 1;
    if (options.count("mode")) {
      mode = static_cast<int>(parse_number("flow.mode", options["mode"]));
    }
    for (const auto& [k, v] : options) {
      if (k != "amplitude" && k != "mode") {
        throw ValidationError("flow", "unknown cosine option '" + k + "'");
      }
    }
    return ShearFlow::cosine(cs, amplitude, mode);
  }

  if (kind == "pwl") {
    if (!options.count("file") || options.size() != 1) {
      throw ValidationError("flow", "pwl requires exactly file=PATH");
    }
    std::ifstream in(options["file"]);
    if (!in) {
      throw ValidationError("flow", "cannot open breakpoint file '" + options["file"] + "'");
    }
    std::vector<std::pair<double, double>> breakpoints;
    double y, v;
    while (in >> y >> v) breakpoints.emplace_back(y, v);
    return ShearFlow::piecewise_linear(cs, std::move(breakpoints));
  }

  throw ValidationError("flow", "unknown profile '" + kind + "' (use zero, cosine, pwl)");
}

std::string format_double(double v) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, ptr);
}

}  // namespace kpp
