#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fareylab/json_io.hpp"
#include "fareylab/separations.hpp"
#include "helpers.hpp"

using namespace fareylab;
using namespace fareylab::testing;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "fareylab_io_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string file(const std::string& name, const std::string& content) {
    fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << content;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* cli() {
    const char* path = std::getenv("FAREYLAB_CLI");
    REQUIRE(path != nullptr);
    return path;
}

int run(const std::string& args) {
    std::string cmd = std::string(cli()) + " " + args;
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("graph JSON round trip") {
    auto g = halved_farey(3).graph;
    auto j = graph_to_json(g);
    CHECK(graph_from_json(j) == g);
    CHECK(graph_to_json(graph_from_json(j)).dump() == j.dump());

    CHECK_THROWS_AS(graph_from_json(json{{"vertices", json::array()}}), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"vertices":[],"edges":[["a"]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"vertices":[3],"edges":[]})")),
                    std::invalid_argument);
}

TEST_CASE("DOT export") {
    auto g = halved_farey(2).graph;
    auto dot = graph_to_dot(g);
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("\"1/0/1\"") != std::string::npos);
    CHECK(count_substr(dot, "--") == g.edge_count());
}

TEST_CASE("grain line JSON round trip") {
    auto gl = grain_line_of(halved_farey(3));
    auto back = grain_line_from_json(grain_line_to_json(gl));
    CHECK(back.x == gl.x);
    CHECK(back.y == gl.y);
    CHECK(back.order == gl.order);
    CHECK(back.paths == gl.paths);
    CHECK(back.host == union_graph(gl.paths));

    CHECK_THROWS_AS(grain_line_from_json(json::parse(R"({"x":"a"})")), std::invalid_argument);
}

TEST_CASE("immersion model JSON round trip") {
    auto model = immerse_halved_farey(grain_line_of(halved_farey(3)), 1);
    auto back = immersion_model_from_json(immersion_model_to_json(model));
    CHECK(back.pattern == model.pattern);
    CHECK(back.host == model.host);
    CHECK(back.branch == model.branch);
    CHECK(back.routes == model.routes);
    CHECK(back.strong == model.strong);
    CHECK(verify_immersion(back).empty());
}

TEST_CASE("report serializers expose their key fields") {
    auto found = find_subdivision(complete(3, "t"), halved_farey(1).graph, 100000);
    auto sj = subdivision_result_to_json(found);
    CHECK(sj.at("status") == "found");
    CHECK(sj.contains("model"));

    auto outer = grain_line_of(halved_farey(4));
    GrainLine inner;
    inner.x = outer.x;
    inner.y = outer.y;
    auto generated = halved_farey(4);
    for (std::size_t k = 0; k < generated.paths.size(); k += 2)
        inner.paths.push_back(generated.paths[k]);
    inner.order = generated.paths[2].vertices;
    inner.host = union_graph(inner.paths);
    auto dj = dive_trace_to_json(dive(outer, inner, 1));
    CHECK(dj.contains("q"));
    CHECK(dj.at("steps").is_array());

    auto ej = exclusion_report_to_json(
        subdivision_exclusion_experiment({grain_line_of(halved_farey(4))}, 2, 1000000));
    CHECK(ej.at("lengths").is_array());
    CHECK(ej.at("results").size() == 1);

    Graph g = complete(3, "a");
    Graph right = complete(3, "b");
    for (const auto& e : right.edges()) g.add_edge(e.first, e.second);
    g.add_edge("a0", "b0");
    CompoundSeparation sep{{"a0", "a1", "a2"}, {"b0", "b1", "b2"}, {make_edge("a0", "b0")}};
    auto pj = separation_to_json(sep);
    CHECK(pj.at("a").size() == 3);
    CHECK(pj.at("cross").size() == 1);

    CHECK(tree_cut_to_json(tree_cut_decomposition(g, 2)).at("parts").size() == 2);
    CHECK(iterated_split_to_json(iterated_split(g, 1, 1)).at("completed") == 1);

    auto f2 = farey(2);
    std::set<Vertex> spread{f2.cycle[0], f2.cycle[2], f2.cycle[4], f2.cycle[6]};
    auto cj = cut_bound_report_to_json(cut_bound_complete(f2, spread));
    CHECK(cj.at("entries").size() == 2);
    CHECK(cj.contains("excludes"));
}

TEST_CASE("cli generates graphs in both formats") {
    auto dot_path = (work_dir() / "h3.dot").string();
    CHECK(run("gen halved --order 3 --format dot --out " + dot_path) == 0);
    auto dot = slurp(dot_path);
    CHECK(count_substr(dot, "--") == halved_farey(3).graph.edge_count());

    auto g_path = (work_dir() / "h2.json").string();
    auto m_path = (work_dir() / "h2.meta.json").string();
    CHECK(run("gen halved --order 2 --out " + g_path + " --meta " + m_path) == 0);
    CHECK(graph_from_json(json::parse(slurp(g_path))) == halved_farey(2).graph);
    auto meta = json::parse(slurp(m_path));
    CHECK(meta.at("x") == "x");
    CHECK(meta.at("order").size() == 5);

    auto ghf_path = (work_dir() / "ghf.json").string();
    CHECK(run("gen ghf --order 2 --lengths 1,2,3 --out " + ghf_path) == 0);
    CHECK(graph_from_json(json::parse(slurp(ghf_path))) ==
          generalised_halved_farey(LengthFunction({1, 2, 3}), 2).graph);
}

TEST_CASE("cli reruns are byte identical") {
    auto a = (work_dir() / "f2a.json").string();
    auto b = (work_dir() / "f2b.json").string();
    CHECK(run("gen farey --order 2 --out " + a) == 0);
    CHECK(run("gen farey --order 2 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("cli grain line checking and exit codes") {
    auto gl = grain_line_of(halved_farey(3));
    auto good = file("line.json", grain_line_to_json(gl).dump());
    CHECK(run("grainline check " + good) == 0);

    auto j = grain_line_to_json(gl);
    std::swap(j["L"][2], j["L"][6]);
    auto bad = file("bad_line.json", j.dump());
    auto err = (work_dir() / "err.txt").string();
    CHECK(run("grainline check " + bad + " 2>" + err) == 2);
    CHECK(slurp(err).find("GL3") != std::string::npos);

    auto report_out = (work_dir() / "report.json").string();
    CHECK(run("grainline report " + bad + " --out " + report_out) == 2);
    auto report = json::parse(slurp(report_out));
    CHECK(report.at("valid") == false);

    auto broken = file("broken.json", "{ not json");
    CHECK(run("grainline check " + broken) == 1);
    CHECK(run("grainline check " + (work_dir() / "missing.json").string()) == 1);
}

TEST_CASE("cli search budget exhaustion exits 3") {
    auto pattern = file("k4.json", graph_to_json(complete(4)).dump());
    auto host = file("h3.json", graph_to_json(halved_farey(3).graph).dump());
    CHECK(run("immerse brute --pattern " + pattern + " --host " + host +
              " --budget 1 --out /dev/null") == 3);
    CHECK(run("minors find-subdivision --pattern " + pattern + " --host " + host +
              " --budget 1 --out /dev/null") == 3);
}

TEST_CASE("cli separations and export") {
    Graph g = complete(3, "a");
    Graph right = complete(3, "b");
    for (const auto& e : right.edges()) g.add_edge(e.first, e.second);
    g.add_edge("a0", "b0");
    auto g_path = file("bridged.json", graph_to_json(g).dump());

    auto blocks_out = (work_dir() / "blocks.json").string();
    CHECK(run("sep blocks --graph " + g_path + " --c 2 --out " + blocks_out) == 0);
    CHECK(json::parse(slurp(blocks_out)).size() == 2);

    auto exp_out = (work_dir() / "export.json").string();
    CHECK(run("export --graph " + g_path + " --out " + exp_out) == 0);
    CHECK(graph_from_json(json::parse(slurp(exp_out))) == g);
}

TEST_CASE("cli acceptance harness single suite") {
    auto out = (work_dir() / "suite1.json").string();
    CHECK(run("harness acceptance --suite 1 --out " + out) == 0);
    auto j = json::parse(slurp(out));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("index") == 1);
    CHECK(j[0].at("passed") == true);

    CHECK(run("harness acceptance --suite 0") == 1);
    CHECK(run("harness acceptance --suite nope") == 1);
}
