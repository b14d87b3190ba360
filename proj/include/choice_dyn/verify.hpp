#pragma once

// Acceptance suite run by `choice-dyn verify` and the acceptance test binary.

#include <optional>
#include <string>
#include <vector>

#include "choice_dyn/models.hpp"

namespace choice_dyn {

struct CriterionInfo {
  int id;
  std::string tag;
  std::string title;
};

const std::vector<CriterionInfo>& acceptance_criteria();

struct CriterionResult {
  int id = 0;
  std::string tag;
  std::string title;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0;
};

struct VerifyOptions {
  /// Criterion id ("7") or tag ("gestalt"); empty runs everything.
  std::string only;
  std::optional<MalariaParams> pset0;
  std::optional<MalariaParams> pset1;
};

/// Throws std::invalid_argument when `only` matches no criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});
std::string results_json(const std::vector<CriterionResult>& results);

}  // namespace choice_dyn
