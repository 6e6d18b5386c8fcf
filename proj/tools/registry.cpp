#include "registry.hpp"

#include "warpsplit/errors.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace warpsplit::cli {

namespace {

struct Entry {
  std::vector<std::string> keys;
  std::function<OperatorSpec(const Config&, const std::string&)> build;
};

OperatorSpec from_function(ConvexFunction f) {
  return {MonotoneOperator::subdifferential(f), f};
}

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> table = {
      {"zero",
       {{"dim"},
        [](const Config& c, const std::string& s) -> OperatorSpec {
          return {MonotoneOperator::zero(c.integer(s, "dim")), ConvexFunction::zero(c.integer(s, "dim"))};
        }}},
      {"linear",
       {{"matrix"},
        [](const Config& c, const std::string& s) -> OperatorSpec {
          return {MonotoneOperator::linear(c.matrix(s, "matrix")), std::nullopt};
        }}},
      {"rotation",
       {{},
        [](const Config&, const std::string&) -> OperatorSpec {
          return {MonotoneOperator::rotation(), std::nullopt};
        }}},
      {"quadratic",
       {{"q", "center"},
        [](const Config& c, const std::string& s) {
          const Matrix q = c.matrix(s, "q");
          const Vector center = c.has(s, "center") ? c.vector(s, "center") : Vector::Zero(q.rows());
          return from_function(ConvexFunction::shifted_quadratic(q, center));
        }}},
      {"l1",
       {{"dim", "weight"},
        [](const Config& c, const std::string& s) {
          return from_function(ConvexFunction::l1(c.integer(s, "dim"), c.number_or(s, "weight", 1.0)));
        }}},
      {"box",
       {{"lo", "hi"},
        [](const Config& c, const std::string& s) {
          return from_function(ConvexFunction::box(c.vector(s, "lo"), c.vector(s, "hi")));
        }}},
      {"affine",
       {{"e", "d"},
        [](const Config& c, const std::string& s) {
          return from_function(ConvexFunction::affine(c.matrix(s, "e"), c.vector(s, "d")));
        }}},
      {"halfspace",
       {{"a", "beta"},
        [](const Config& c, const std::string& s) {
          return from_function(ConvexFunction::halfspace(c.vector(s, "a"), c.number(s, "beta")));
        }}},
      {"hyperbola-epigraph",
       {{},
        [](const Config&, const std::string&) {
          return from_function(ConvexFunction::hyperbola_epigraph());
        }}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& operator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

OperatorSpec build_operator(const Config& cfg, const std::string& section) {
  if (!cfg.has_section(section)) throw ConfigError("missing section [" + section + "]");
  const std::string name = cfg.text(section, "op");
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string names;
    for (const auto& n : operator_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError(Config::field(section, "op") + ": unknown operator '" + name +
                      "'; valid names: " + names);
  }
  std::vector<std::string> allowed = it->second.keys;
  allowed.push_back("op");
  allowed.push_back("scale");
  cfg.expect_keys(section, allowed);
  try {
    OperatorSpec spec = it->second.build(cfg, section);
    if (cfg.has(section, "scale")) {
      const double a = cfg.number(section, "scale");
      if (!(a > 0.0)) throw ConfigError(Config::field(section, "scale") + ": must be positive");
      spec.op = spec.op.scaled(a);
      spec.function.reset();
    }
    return spec;
  } catch (const Error& e) {
    throw ConfigError("[" + section + "] " + name + ": " + e.what());
  }
}

Preconditioner build_preconditioner(const Config& cfg, const std::string& section) {
  cfg.expect_keys(section, {"matrix"});
  const std::string f = Config::field(section, "matrix");
  const std::string value = cfg.text(section, "matrix");
  std::istringstream in(value);
  std::string head;
  in >> head;
  try {
    if (head == "identity" || head == "dr-block") {
      long n = 0;
      if (!(in >> n) || n <= 0) throw ConfigError(f + ": '" + head + "' needs a positive size");
      return head == "identity" ? Preconditioner::identity(n) : Preconditioner::dr_block(n);
    }
    if (head == "diag") {
      const Config sub = Config::parse("[m]\nd = " + value.substr(value.find("diag") + 4), f);
      return Preconditioner::diagonal(sub.vector("m", "d"));
    }
    return Preconditioner(cfg.matrix(section, "matrix"));
  } catch (const Error& e) {
    throw ConfigError(f + ": " + e.what());
  }
}

}  // namespace warpsplit::cli
