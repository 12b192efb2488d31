#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gies/metrics.hpp"
#include "gies/scoring.hpp"
#include "gies/search.hpp"

namespace gies::io {

using nlohmann::json;

/// {"p": p, "arrows": [[a,b],...], "lines": [[a,b],...]}, edges sorted.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// [[], [4], [3,5]]
json family_to_json(const TargetFamily& family);
TargetFamily family_from_json(const json& j);
/// Accepts "[]; [4]; [3,5]" or a JSON array of arrays.
TargetFamily parse_targets(std::string_view text);

json model_to_json(const GaussianModel& model);
json report_to_json(const EvaluationReport& report);
json trace_step_to_json(const TraceStep& step);
/// One JSON object per accepted move.
void write_trace(std::ostream& out, const SearchTrace& trace);

/// Header x1..xp,target; the target cell is empty or "3;5".
void write_dataset_csv(std::ostream& out, const InterventionalDataset& data);
InterventionalDataset read_dataset_csv(std::istream& in);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
std::string read_text_file(const std::filesystem::path& path);

InterventionalDataset read_dataset_file(const std::filesystem::path& path);
void write_dataset_file(const std::filesystem::path& path, const InterventionalDataset& data);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace gies::io
