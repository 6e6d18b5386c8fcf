#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace warpsplit::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// Splits "[a x b] rest" or "[n] rest" into the bracket contents and the rest.
std::pair<std::string, std::string> split_shape(const std::string& value, const std::string& f) {
  const std::string v = trim(value);
  if (v.empty() || v.front() != '[') {
    throw ConfigError(f + ": expected an explicit shape such as [2] or [2x2]");
  }
  const auto close = v.find(']');
  if (close == std::string::npos) throw ConfigError(f + ": unterminated shape bracket");
  return {v.substr(1, close - 1), v.substr(close + 1)};
}

long parse_dim(const std::string& token, const std::string& f) {
  const std::string t = trim(token);
  std::size_t used = 0;
  long n = -1;
  try {
    n = std::stol(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || n <= 0) throw ConfigError(f + ": bad dimension '" + t + "'");
  return n;
}

}  // namespace

double parse_number(const std::string& token, const std::string& f) {
  if (token == "inf" || token == "+inf") return INFINITY;
  if (token == "-inf") return -INFINITY;
  std::size_t used = 0;
  double v = NAN;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || std::isnan(v)) {
    throw ConfigError(f + ": '" + token + "' is not a number");
  }
  return v;
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string section;
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) throw ConfigError(where + ": duplicate key " + field(section, key));
    sec[key] = Entry{trim(line.substr(eq + 1)), lineno};
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool Config::has_section(const std::string& section) const { return sections_.count(section) > 0; }

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::vector<std::string> Config::keys(const std::string& section) const {
  std::vector<std::string> out;
  const auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& [k, v] : it->second) out.push_back(k);
  return out;
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key)) {
    throw ConfigError("missing required field " + field(section, key));
  }
  return it->second.at(key);
}

std::string Config::text(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

std::string Config::text_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double Config::number(const std::string& section, const std::string& key) const {
  return parse_number(text(section, key), field(section, key));
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  if (!std::isfinite(v) || v != std::floor(v)) {
    throw ConfigError(field(section, key) + ": expected an integer");
  }
  return static_cast<long>(v);
}

long Config::integer_or(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

Vector Config::vector(const std::string& section, const std::string& key) const {
  const std::string f = field(section, key);
  const auto [shape, rest] = split_shape(text(section, key), f);
  const long n = parse_dim(shape, f);
  const auto t = tokens(rest);
  if (static_cast<long>(t.size()) != n) {
    throw ConfigError(f + ": declared " + std::to_string(n) + " entries, found " +
                      std::to_string(t.size()));
  }
  Vector v(n);
  for (long i = 0; i < n; ++i) v(i) = parse_number(t[i], f);
  return v;
}

Matrix Config::matrix(const std::string& section, const std::string& key) const {
  const std::string f = field(section, key);
  const auto [shape, rest] = split_shape(text(section, key), f);
  const auto x = shape.find('x');
  if (x == std::string::npos) throw ConfigError(f + ": matrix shape must read [rows x cols]");
  const long r = parse_dim(shape.substr(0, x), f);
  const long c = parse_dim(shape.substr(x + 1), f);
  const auto t = tokens(rest);
  if (static_cast<long>(t.size()) != r * c) {
    throw ConfigError(f + ": declared " + std::to_string(r * c) + " entries, found " +
                      std::to_string(t.size()));
  }
  Matrix m(r, c);
  for (long i = 0; i < r; ++i) {
    for (long j = 0; j < c; ++j) m(i, j) = parse_number(t[i * c + j], f);
  }
  return m;
}

std::vector<std::string> Config::list(const std::string& section, const std::string& key) const {
  std::string v = text(section, key);
  std::replace(v.begin(), v.end(), ',', ' ');
  return tokens(v);
}

void Config::expect_keys(const std::string& section,
                         const std::vector<std::string>& allowed) const {
  for (const auto& k : keys(section)) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      std::string names;
      for (const auto& a : allowed) names += (names.empty() ? "" : ", ") + a;
      throw ConfigError("unknown field " + field(section, k) + " (allowed: " + names + ")");
    }
  }
}

}  // namespace warpsplit::cli
