#pragma once

#include <optional>
#include <string_view>

#include <json.hpp>

#include "msf/error.hpp"
#include "msf/factor.hpp"
#include "msf/verify_bench.hpp"

namespace msf {

inline constexpr std::string_view library_version = "1.0.0";

/// Report document: library, algorithm, config, metrics, timings, residuals
/// (one entry per applied completion) and, when measured, invariants.
nlohmann::json to_json(const FactorReport& report, std::optional<double> outer = std::nullopt);

/// Comparison document: config, machine, and one row per dimension with the
/// timings and metrics of every algorithm and the classic / doubling ratio.
nlohmann::json to_json(const BenchmarkReport& report);

/// Metrics recomputed from a density and a factor.
nlohmann::json verify_json(double c1, double c2, std::optional<double> outer);

/// {"status": "failed", "error": {code, message, stage, level, block, node, index}}.
nlohmann::json to_json(const Error& error);

}  // namespace msf
