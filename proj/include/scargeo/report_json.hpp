#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "scargeo/losses.hpp"
#include "scargeo/metrics.hpp"

namespace scargeo::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
/// Written in place of a metric whose denominator is empty.
inline constexpr const char* kUndefined = "undefined";

/// Rounds to 9 significant digits so serialized numbers are stable.
double round9(double v);
Json number(double v);
Json number(const std::optional<double>& v);

Json to_json(const LossReport& r);
Json to_json(const MetricsReport& r);
Json to_json(const Summary& s);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace scargeo::report
