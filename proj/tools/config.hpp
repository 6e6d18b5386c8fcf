#pragma once

#include "warpsplit/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace warpsplit::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sectioned key-value file.
///
///   # comment
///   [section]
///   key = value
///
/// Vectors are written `[n] v1 ... vn`, matrices `[r x c] a11 a12 ... arc`
/// (row-major). `inf` and `-inf` are accepted wherever a number is.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;
  std::vector<std::string> keys(const std::string& section) const;

  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  long integer(const std::string& section, const std::string& key) const;
  long integer_or(const std::string& section, const std::string& key, long fallback) const;
  Vector vector(const std::string& section, const std::string& key) const;
  Matrix matrix(const std::string& section, const std::string& key) const;
  std::vector<std::string> list(const std::string& section, const std::string& key) const;

  /// Fails on keys that are not in `allowed`.
  void expect_keys(const std::string& section, const std::vector<std::string>& allowed) const;

  static std::string field(const std::string& section, const std::string& key) {
    return section + "." + key;
  }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

double parse_number(const std::string& token, const std::string& field);

}  // namespace warpsplit::cli
