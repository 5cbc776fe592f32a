#pragma once

#include <filesystem>
#include <json.hpp>

#include "swingnet/cascade.hpp"

namespace swingnet {

// Versioned JSON documents. Keys are emitted in sorted order, so a fixed
// seed and config reproduce files byte for byte.

[[nodiscard]] nlohmann::json to_json(const SolverConfig& cfg);
[[nodiscard]] nlohmann::json to_json(const CascadePolicy& policy);
[[nodiscard]] nlohmann::json to_json(const NodePoleReport& report);
[[nodiscard]] nlohmann::json to_json(const StabilityReport& report);
[[nodiscard]] nlohmann::json to_json(const FlowTransition& tr);
[[nodiscard]] nlohmann::json to_json(const CascadeRound& round);
[[nodiscard]] nlohmann::json to_json(const CascadeTrace& trace, const CascadePolicy& policy);

void write_trace(const CascadeTrace& trace, const CascadePolicy& policy,
                 const std::filesystem::path& path);

}  // namespace swingnet
