#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "kolab/config.hpp"
#include "kolab/decompressor.hpp"
#include "kolab/gf2.hpp"
#include "kolab/oracle.hpp"
#include "kolab/reduction.hpp"

namespace kolab {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Fields every report carries: schema_version, command, config,
// config_hash, params_hash, seed. Callers add costs, values and wall_time.
Json report_envelope(std::string_view command, const RunConfig& config);

Json to_json(const ReductionReport& r);
Json to_json(const SpuriousEstimate& e);
Json to_json(const GCalibration& c);
Json to_json(const OracleVerdict& v);
Json to_json(const CrossValidation& cv);
Json to_json(const PairLemmaCheck& r);

// Pretty-printed with a trailing newline.
std::string dump_report(const Json& report);
// Removes every "wall_time" key, recursively.
Json without_wall_time(Json report);

}  // namespace kolab
