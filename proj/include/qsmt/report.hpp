#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsmt/circuit.hpp"
#include "qsmt/solver.hpp"

namespace qsmt {

inline constexpr const char *kSpecVersion = "1.0";

using Json = nlohmann::ordered_json;

Json layout_json(const LayoutReport &stats, LayoutMode mode);
Json plan_json(const IterationPlan &plan);
Json solve_json(const SolveReport &report);

/// Output bit-string / Counts / Probability / Assignments, one row per solution.
std::string solve_table(const SolveReport &report);
std::string layout_table(const Circuit &circuit, LayoutMode mode);

/// Serialized with two-space indent and a trailing newline.
std::string dump(const Json &j);

} // namespace qsmt
