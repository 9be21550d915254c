#pragma once

#include <string>

#include <json.hpp>

#include "fareylab/generators.hpp"
#include "fareylab/grainline.hpp"
#include "fareylab/graph.hpp"
#include "fareylab/immersion.hpp"
#include "fareylab/minors.hpp"
#include "fareylab/separations.hpp"

namespace fareylab {

using nlohmann::json;

// Schema: {"vertices":[string,...],"edges":[[string,string],...]}
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

std::string graph_to_dot(const Graph& g, const std::string& name = "G");

// Construction metadata sidecar:
// {"levels":{vertex:level,...},"order":[...],"paths":[[...],...],"x":...,"y":...}
json leveled_metadata_json(const LeveledFareyGraph& g);

// Schema: {"x":...,"y":...,"L":[...],"paths":[[vertex,...],...]}
json grain_line_to_json(const GrainLine& gl);
GrainLine grain_line_from_json(const json& j);

json grain_line_report_to_json(const GrainLineReport& report);

// Schema: {"pattern":graph,"host":graph,"branch":{...},
//          "routes":{"u-v":[vertex,...]},"strong":bool}
json immersion_model_to_json(const ImmersionModel& model);
ImmersionModel immersion_model_from_json(const json& j);

json subdivision_model_to_json(const SubdivisionModel& model);
json subdivision_result_to_json(const SubdivisionResult& result);
json dive_trace_to_json(const DiveTrace& trace);
json exclusion_report_to_json(const ExclusionExperimentReport& report);

json separation_to_json(const CompoundSeparation& sep);
json tree_cut_to_json(const TreeCutDecomposition& tcd);
json iterated_split_to_json(const IteratedSplitResult& result);
json cut_bound_report_to_json(const CutBoundReport& report);

}  // namespace fareylab
