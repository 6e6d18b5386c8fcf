#pragma once

#include "config.hpp"

#include "warpsplit/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace warpsplit::cli {

struct OperatorSpec {
  MonotoneOperator op;
  std::optional<ConvexFunction> function;  // set for subdifferential kinds
};

/// Registry names accepted by `op = <name>`.
const std::vector<std::string>& operator_names();

/// Builds the operator described by `[section]`. Every name also takes an
/// optional positive `scale`.
OperatorSpec build_operator(const Config& cfg, const std::string& section);

/// `[section] matrix = identity <n> | diag [n] d1 .. dn | dr-block <n> | [r x c] ...`
Preconditioner build_preconditioner(const Config& cfg, const std::string& section);

}  // namespace warpsplit::cli
