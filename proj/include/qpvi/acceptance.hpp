#pragma once

#include "qpvi/qseries.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qpvi {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double value = 0;      // worst observed residual, or the fitted order for the limit check
  double tolerance = 0;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceConfig {
  QWeightParams weight;  // reference weight
  int N = 20;
  unsigned prec = 192;
  std::uint64_t seed = 20241019;
  int jobs = 1;
};

AcceptanceConfig reference_acceptance_config();

constexpr int kCriterionCount = 13;

// Runs one criterion (1-based); numerical failures become a failing result naming the check.
CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);

// All criteria, ordered by id. Criteria sharing a precision run on up to cfg.jobs threads.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& rs);

}  // namespace qpvi
