#pragma once

#include <string>

#include "json.hpp"
#include "relations.hpp"

namespace governing {

struct AnalysisRequest {
  std::string field;
  u64 p = 0;
  std::string places;  // comma separated tokens
  bool emit_matrix = false;
  bool verify = false;
  bool subsets = false;
  std::string cache_dir;  // empty: no cache
  bool swap_branches = false;
  unsigned generator_rank = 0;
  std::size_t cap = kDefaultSubsetCap;
};

/// Reads {"field", "p", "places", "emit_matrix", "verify", "subsets",
/// "cache", "swap_branches", "generator_rank", "cap"}; unknown keys are
/// rejected.
AnalysisRequest request_from_json(const nlohmann::json& j);

/// The full report for one (K, p, S). Throws Error.
nlohmann::json analyze(const AnalysisRequest& req);

/// Field invariants, class group and units as JSON.
nlohmann::json field_report(const Field& F);

/// Integer as a JSON number when it fits in 64 bits, else a decimal string.
nlohmann::json integer_json(const mpz_class& x);

}  // namespace governing
