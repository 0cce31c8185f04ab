#pragma once

#include "json.hpp"
#include "rsdfo/solvers.hpp"

namespace rsdfo::detail {

SolverConfig config_from_json(const nlohmann::json& j, const SolverConfig& base);
nlohmann::json config_to_json(const SolverConfig& config);

}  // namespace rsdfo::detail
