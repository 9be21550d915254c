#include "fareylab/json_io.hpp"

#include <sstream>

namespace fareylab {

namespace {

json path_json(const Path& p) {
    json arr = json::array();
    for (const auto& v : p.vertices) arr.push_back(v);
    return arr;
}

Path path_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": path must be an array");
    std::vector<Vertex> vs;
    for (const auto& v : j) {
        if (!v.is_string()) throw std::invalid_argument(where + ": vertex must be a string");
        vs.push_back(v.get<std::string>());
    }
    return Path(vs);
}

json edge_json(const Edge& e) { return json::array({e.first, e.second}); }

}  // namespace

json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices()) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (const auto& e : g.edges()) j["edges"].push_back(edge_json(e));
    return j;
}

Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph: expected object with 'vertices' and 'edges'");
    Graph g;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) throw std::invalid_argument("graph: vertex must be a string");
        g.add_vertex(v.get<std::string>());
    }
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw std::invalid_argument("graph: edge must be a pair of strings");
        const std::string a = e[0], b = e[1];
        if (!g.has_vertex(a) || !g.has_vertex(b))
            throw std::invalid_argument("graph: edge endpoint '" + a + "'/'" + b +
                                        "' not in vertices");
        g.add_edge(a, b);
    }
    return g;
}

std::string graph_to_dot(const Graph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (const auto& v : g.vertices()) out << "  \"" << v << "\";\n";
    for (const auto& e : g.edges())
        out << "  \"" << e.first << "\" -- \"" << e.second << "\";\n";
    out << "}\n";
    return out.str();
}

json leveled_metadata_json(const LeveledFareyGraph& g) {
    json j;
    j["x"] = g.x;
    j["y"] = g.y;
    j["levels"] = json::object();
    for (const auto& [v, lvl] : g.vertex_level) j["levels"][v] = lvl;
    j["order"] = json::array();
    for (const auto& v : g.order) j["order"].push_back(v);
    j["paths"] = json::array();
    for (const auto& p : g.paths) j["paths"].push_back(path_json(p));
    j["lengths"] = g.lengths.values;
    return j;
}

json grain_line_to_json(const GrainLine& gl) {
    json j;
    j["x"] = gl.x;
    j["y"] = gl.y;
    j["L"] = json::array();
    for (const auto& v : gl.order) j["L"].push_back(v);
    j["paths"] = json::array();
    for (const auto& p : gl.paths) j["paths"].push_back(path_json(p));
    return j;
}

GrainLine grain_line_from_json(const json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j.contains("L") ||
        !j.contains("paths"))
        throw std::invalid_argument("grain line: expected keys x, y, L, paths");
    GrainLine gl;
    gl.x = j.at("x").get<std::string>();
    gl.y = j.at("y").get<std::string>();
    for (const auto& v : j.at("L")) gl.order.push_back(v.get<std::string>());
    for (const auto& p : j.at("paths")) gl.paths.push_back(path_from(p, "grain line"));
    gl.host = union_graph(gl.paths);
    return gl;
}

json grain_line_report_to_json(const GrainLineReport& report) {
    json j;
    j["valid"] = report.valid();
    j["violations"] = report.violations;
    j["dense_at_horizon"] = report.dense_at_horizon;
    return j;
}

json immersion_model_to_json(const ImmersionModel& model) {
    json j;
    j["pattern"] = graph_to_json(model.pattern);
    j["host"] = graph_to_json(model.host);
    j["branch"] = json::object();
    for (const auto& [pv, hv] : model.branch) j["branch"][pv] = hv;
    j["routes"] = json::object();
    for (const auto& [pe, route] : model.routes)
        j["routes"][pe.first + "-" + pe.second] = path_json(route);
    j["strong"] = model.strong;
    return j;
}

ImmersionModel immersion_model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("pattern") || !j.contains("host") ||
        !j.contains("branch") || !j.contains("routes"))
        throw std::invalid_argument("model: expected keys pattern, host, branch, routes");
    ImmersionModel model;
    model.pattern = graph_from_json(j.at("pattern"));
    model.host = graph_from_json(j.at("host"));
    for (const auto& [pv, hv] : j.at("branch").items())
        model.branch[pv] = hv.get<std::string>();
    for (const auto& [key, route] : j.at("routes").items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("model: route key '" + key + "' is not 'u-v'");
        model.routes[make_edge(key.substr(0, dash), key.substr(dash + 1))] =
            path_from(route, "route " + key);
    }
    model.strong = j.value("strong", true);
    return model;
}

json subdivision_model_to_json(const SubdivisionModel& model) {
    json j;
    j["pattern"] = graph_to_json(model.pattern);
    j["host"] = graph_to_json(model.host);
    j["branch"] = json::object();
    for (const auto& [pv, hv] : model.branch) j["branch"][pv] = hv;
    j["routes"] = json::object();
    for (const auto& [pe, route] : model.routes)
        j["routes"][pe.first + "-" + pe.second] = path_json(route);
    return j;
}

json subdivision_result_to_json(const SubdivisionResult& result) {
    json j;
    j["status"] = to_string(result.status);
    j["nodes_used"] = result.nodes_used;
    if (result.model) j["model"] = subdivision_model_to_json(*result.model);
    return j;
}

json dive_trace_to_json(const DiveTrace& trace) {
    json j;
    j["q"] = trace.q;
    j["truncated"] = trace.truncated;
    j["reason"] = trace.reason;
    j["steps"] = json::array();
    for (const auto& step : trace.steps) {
        json s;
        s["p"] = step.p;
        s["u"] = step.u;
        s["v"] = step.v;
        s["segment"] = path_json(step.segment);
        s["q_index"] = step.q_index;
        j["steps"].push_back(std::move(s));
    }
    return j;
}

json exclusion_report_to_json(const ExclusionExperimentReport& report) {
    json j;
    j["lengths"] = report.lengths.values;
    j["results"] = json::array();
    for (auto s : report.results) j["results"].push_back(to_string(s));
    j["nodes_used"] = report.nodes_used;
    j["note"] = report.note;
    return j;
}

json separation_to_json(const CompoundSeparation& sep) {
    json j;
    j["a"] = sep.a;
    j["b"] = sep.b;
    j["separator"] = sep.separator();
    j["cross"] = json::array();
    for (const auto& e : sep.cross) j["cross"].push_back(edge_json(e));
    return j;
}

json tree_cut_to_json(const TreeCutDecomposition& tcd) {
    json j;
    j["parts"] = json::array();
    for (const auto& part : tcd.parts) j["parts"].push_back(part);
    j["tree_edges"] = json::array();
    for (const auto& [a, b] : tcd.tree_edges) j["tree_edges"].push_back(json::array({a, b}));
    j["adhesion"] = json::array();
    for (const auto& cut : tcd.adhesion) {
        json edges = json::array();
        for (const auto& e : cut) edges.push_back(edge_json(e));
        j["adhesion"].push_back(std::move(edges));
    }
    return j;
}

json iterated_split_to_json(const IteratedSplitResult& result) {
    json j;
    j["completed"] = result.completed;
    j["stopped_early"] = result.stopped_early;
    j["reason"] = result.reason;
    j["parts"] = json::array();
    for (const auto& part : result.parts) j["parts"].push_back(graph_to_json(part));
    j["rest"] = graph_to_json(result.rest);
    j["separations"] = json::array();
    for (const auto& sep : result.separations) j["separations"].push_back(separation_to_json(sep));
    j["property_violations"] = result.property_violations;
    return j;
}

json cut_bound_report_to_json(const CutBoundReport& report) {
    json j;
    j["vacuous"] = report.vacuous;
    j["excludes"] = report.excludes();
    j["entries"] = json::array();
    for (const auto& e : report.entries) {
        json entry;
        entry["u"] = e.u;
        if (!e.v.empty()) entry["v"] = e.v;
        entry["demand"] = e.demand;
        entry["available"] = e.available;
        entry["slack"] = e.slack;
        j["entries"].push_back(std::move(entry));
    }
    return j;
}

}  // namespace fareylab
