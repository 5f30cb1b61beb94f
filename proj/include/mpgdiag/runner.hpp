#pragma once

#include <string>

#include "json.hpp"
#include "mpgdiag/evaluate.hpp"
#include "mpgdiag/oracle.hpp"

namespace mpgdiag {

using nlohmann::json;

json tvalue_json(const TValue& v);  // {"exit": j} | {"wexit": [num,den,j]} | "winE" | "winA"

enum class Semantics { Fat, Meager };

struct SolveOptions {
  Semantics semantics = Semantics::Meager;
  bool winners_only = false;
  int32_t leaf_limit = 20;
  std::string emit_flat_path;  // also write the flattened game here
};

json run_solve(const std::string& source, const SolveOptions& opt = {});

enum class OracleKind { Brute, ProgressMeasure };

struct CompareOptions {
  OracleKind oracle = OracleKind::ProgressMeasure;
  int32_t leaf_limit = 20;
  int32_t brute_max_positions = 14;
  int64_t pm_lift_budget = 0;          // 0 = unlimited
  bool corrupt_compositional = false;  // test hook for the disagreement alarm
};

struct DisagreementDetected : std::runtime_error {
  json report;
  DisagreementDetected(std::string msg, json r)
      : std::runtime_error(std::move(msg)), report(std::move(r)) {}
};

json run_compare(const std::string& source, const CompareOptions& opt = {});

}  // namespace mpgdiag
