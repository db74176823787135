#include "wtt/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wtt {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t positive(const std::string& key, const std::string& v, int line) {
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || v.empty() || v[0] == '-' || n == 0)
    throw ConfigError("line " + std::to_string(line) + ": " + key + " must be a positive integer");
  return static_cast<std::size_t>(n);
}

}  // namespace

Config parse_config(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    if (key == "max_level") {
      c.max_level = static_cast<unsigned>(positive(key, val, line));
    } else if (key == "enum_depth") {
      c.enum_depth = static_cast<unsigned>(positive(key, val, line));
    } else if (key == "rewrite_budget") {
      c.rewrite_budget = positive(key, val, line);
    } else if (key == "fragment_cap") {
      c.fragment_cap = positive(key, val, line);
    } else if (key == "mode") {
      if (val != "weak" && val != "strong" && val != "two-level")
        throw ConfigError("line " + std::to_string(line) + ": mode must be weak, strong or two-level");
      c.mode = val;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

Config config_from_env() {
  const char* p = std::getenv("WTT_CONFIG");
  if (p == nullptr || *p == '\0') return Config{};
  return load_config_file(p);
}

}  // namespace wtt
