#pragma once

#include <json.hpp>
#include <optional>

#include "cubint/decision.hpp"
#include "cubint/manifest.hpp"

namespace cubint {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

Json to_json(const ZeroVerdict& v);
Json to_json(const SymTensor3& t);
Json to_json(const Certificate& c);
Json to_json(const Verdict& v);
Json to_json(const DriftReport& d);
Json config_json(const Manifest& m);

// values at a point (numbers, null where undefined) or canonical expression strings
Json invariants_json(Invariants& inv, const Box& box, const ZeroTestConfig& cfg,
                     const std::optional<std::pair<double, double>>& at);

}  // namespace cubint
