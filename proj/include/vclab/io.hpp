#pragma once

#include <string>

#include <json.hpp>

#include "vclab/solvers.hpp"

namespace vclab {

/// Cayley file format: header `group <name> order <N>`, then N rows of N
/// 0-based indices, then an optional `names <n0> <n1> ...` line. Index 0
/// must be the identity. Parse errors carry line/column positions;
/// structural violations name the offending row or triple.
FiniteGroup load_group_file(const std::string& path);
FiniteGroup parse_group_text(const std::string& text, const std::string& origin);
std::string group_file_text(const FiniteGroup& g, const std::string& name);

nlohmann::json group_to_json(const FiniteGroup& g, const std::string& name = "");
FiniteGroup group_from_json(const nlohmann::json& j);

nlohmann::json fnlemma_report_to_json(const FnLemmaReport& rep);

nlohmann::json spec_to_json(const CounterexampleSpec& spec);
CounterexampleSpec spec_from_json(const nlohmann::json& j);

nlohmann::json evidence_to_json(const VcEvidence& ev);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace vclab
