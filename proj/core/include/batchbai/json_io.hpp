#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "batchbai/complexity.hpp"
#include "batchbai/instance.hpp"
#include "batchbai/linbandit.hpp"
#include "batchbai/optdesign.hpp"
#include "batchbai/trace.hpp"

namespace batchbai {

using Json = nlohmann::json;

// Instance documents:
//   {"kind":"mab","means":[...],"noise_sd":0.1}
//   {"kind":"linear","arms":[[...],...],"theta_star":[...],"noise_sd":0.1}
//   {"kind":"empirical","pools":[[...],...]}
// noise_sd defaults to 1 when absent. Doubles are written with full
// round-trip precision, so to_json/from_json is lossless.
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);

Json trace_to_json(const RunTrace& trace);
RunTrace trace_from_json(const Json& doc);

/// `with_trace` adds the per-step sequences.
Json report_to_json(const ComplexityReport& report, bool with_trace);
Json report_to_json(const LinearComplexityReport& report, bool with_trace);

Json design_to_json(const Design& design);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace batchbai
