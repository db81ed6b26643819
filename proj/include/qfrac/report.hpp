#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfrac/estimator.hpp"
#include "qfrac/experiment.hpp"
#include "qfrac/predicate.hpp"

// Machine- and human-readable records for the CLI. Every record carries
// schema_version "1", the command name, a config echo, the result, and
// wall-clock timings per phase. JSON is the primary format; CSV mirrors the
// same numbers (identical serialisation); text is for people.

namespace qfrac::report {

using Timing = std::vector<std::pair<std::string, double>>;

nlohmann::json estimate_to_json(const EstimateResult& r);

nlohmann::json make_run_record(const ExperimentConfig& config, const EstimateResult& result,
                               const Timing& timing);
nlohmann::json make_count_record(const std::string& predicate, int width,
                                 const OracleTable& table, const Timing& timing);
nlohmann::json make_plan_record(const SamplingPlan& plan, const Timing& timing);
nlohmann::json make_compare_record(const ExperimentConfig& config, const ComparisonReport& cmp,
                                   const Timing& timing);
nlohmann::json make_sweep_record(const std::string& family, std::span<const int> widths,
                                 const SamplingPlan& plan, std::uint64_t seed, SamplingMode mode,
                                 const std::vector<SweepRow>& rows, const Timing& timing);

std::string to_json_text(const nlohmann::json& record);
std::string to_csv(const nlohmann::json& record);
std::string to_text(const nlohmann::json& record);

}  // namespace qfrac::report
