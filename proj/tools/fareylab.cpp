#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fareylab/acceptance.hpp"
#include "fareylab/json_io.hpp"

namespace {

using namespace fareylab;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;    // malformed JSON / schema
constexpr int kExitViolation = 2;   // validation failed
constexpr int kExitUnknown = 3;     // search budget exhausted

struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw BadInput(path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw BadInput("cannot write '" + out_path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

std::vector<std::size_t> parse_lengths(const std::string& csv) {
    std::vector<std::size_t> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw BadInput("bad length entry '" + item + "'");
        }
    }
    return values;
}

int exit_for(SearchStatus status) {
    return status == SearchStatus::Unknown ? kExitUnknown : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Farey-graph laboratory: generators, grain lines, immersions, separations"};
    app.require_subcommand(1);

    unsigned seed = 0;
    if (const char* env = std::getenv("FAREY_LAB_SEED")) seed = std::strtoul(env, nullptr, 10);
    app.add_option("--seed", seed, "seed for randomized suites (FAREY_LAB_SEED overrides)");

    std::string out_path, meta_path, format = "json";

    // gen
    auto* gen = app.add_subcommand("gen", "generate graph families");
    gen->require_subcommand(1);
    std::size_t gen_order = 0;
    std::string gen_lengths;
    auto add_gen_common = [&](CLI::App* cmd, bool with_lengths) {
        cmd->add_option("--order", gen_order, "truncation order")->required();
        cmd->add_option("--format", format, "json or dot");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--meta", meta_path, "construction metadata sidecar path");
        if (with_lengths)
            cmd->add_option("--lengths", gen_lengths, "comma-separated lengths")->required();
    };
    auto* gen_halved = gen->add_subcommand("halved", "halved Farey graph");
    add_gen_common(gen_halved, false);
    auto* gen_farey = gen->add_subcommand("farey", "Farey graph");
    add_gen_common(gen_farey, false);
    auto* gen_ghf = gen->add_subcommand("ghf", "generalised halved Farey graph");
    add_gen_common(gen_ghf, true);

    // grainline
    auto* grain = app.add_subcommand("grainline", "grain line operations");
    grain->require_subcommand(1);
    std::string grain_in;
    for (const char* name : {"check", "extract", "report"}) {
        auto* cmd = grain->add_subcommand(name);
        cmd->add_option("input", grain_in, "grain line JSON")->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
    }

    // minors
    auto* minors = app.add_subcommand("minors", "subdivision search and dives");
    minors->require_subcommand(1);
    std::string pattern_path, host_path, outer_path, inner_path, families_csv;
    std::size_t budget = 10000000, k_max = 3, horizon = 2;
    auto* m_find = minors->add_subcommand("find-subdivision");
    m_find->add_option("--pattern", pattern_path)->required();
    m_find->add_option("--host", host_path)->required();
    m_find->add_option("--budget", budget);
    m_find->add_option("--out", out_path);
    auto* m_dive = minors->add_subcommand("dive");
    m_dive->add_option("--outer", outer_path)->required();
    m_dive->add_option("--inner", inner_path)->required();
    m_dive->add_option("--kmax", k_max);
    m_dive->add_option("--out", out_path);
    auto* m_excl = minors->add_subcommand("exclude");
    m_excl->add_option("--families", families_csv, "comma-separated grain line JSON paths")
        ->required();
    m_excl->add_option("--horizon", horizon);
    m_excl->add_option("--budget", budget);
    m_excl->add_option("--out", out_path);

    // sep
    auto* sep = app.add_subcommand("sep", "separations, blocks, decompositions");
    sep->require_subcommand(1);
    std::string sep_graph, sep_u, sep_v;
    std::size_t sep_c = 2, sep_s = 1, sep_f = 0, sep_steps = 1;
    auto* s_blocks = sep->add_subcommand("blocks");
    s_blocks->add_option("--graph", sep_graph)->required();
    s_blocks->add_option("--c", sep_c);
    s_blocks->add_option("--out", out_path);
    auto* s_tcd = sep->add_subcommand("tcd");
    s_tcd->add_option("--graph", sep_graph)->required();
    s_tcd->add_option("--c", sep_c);
    s_tcd->add_option("--out", out_path);
    auto* s_find = sep->add_subcommand("find");
    s_find->add_option("--graph", sep_graph)->required();
    s_find->add_option("--u", sep_u)->required();
    s_find->add_option("--v", sep_v)->required();
    s_find->add_option("--s", sep_s);
    s_find->add_option("--f", sep_f);
    s_find->add_option("--out", out_path);
    auto* s_peel = sep->add_subcommand("peel");
    s_peel->add_option("--graph", sep_graph)->required();
    s_peel->add_option("--f", sep_f);
    s_peel->add_option("--steps", sep_steps);
    s_peel->add_option("--out", out_path);

    // immerse
    auto* immerse = app.add_subcommand("immerse", "immersion constructions and search");
    immerse->require_subcommand(1);
    std::string model_path;
    std::size_t imm_order = 0;
    bool imm_strong = false;
    auto* i_build = immerse->add_subcommand("build");
    i_build->add_option("--order", imm_order)->required();
    i_build->add_option("--host", host_path, "grain line JSON")->required();
    i_build->add_option("--out", out_path);
    auto* i_verify = immerse->add_subcommand("verify");
    i_verify->add_option("model", model_path)->required();
    auto* i_brute = immerse->add_subcommand("brute");
    i_brute->add_option("--pattern", pattern_path)->required();
    i_brute->add_option("--host", host_path)->required();
    i_brute->add_flag("--strong", imm_strong);
    i_brute->add_option("--budget", budget);
    i_brute->add_option("--out", out_path);

    // harness
    auto* harness = app.add_subcommand("harness", "acceptance suites");
    auto* h_acc = harness->add_subcommand("acceptance");
    harness->require_subcommand(1);
    std::string suite = "all";
    h_acc->add_option("--suite", suite, "all or a criterion number 1..11");
    h_acc->add_option("--out", out_path);

    // export
    auto* exp = app.add_subcommand("export", "re-serialize a graph");
    std::string exp_graph;
    exp->add_option("--graph", exp_graph)->required();
    exp->add_option("--format", format, "json or dot");
    exp->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    // Schema problems in input files count as malformed input (exit 1), not
    // as domain validation failures (exit 2).
    auto load_graph = [](const std::string& path) {
        try {
            return graph_from_json(read_json(path));
        } catch (const BadInput&) {
            throw;
        } catch (const std::exception& e) {
            throw BadInput(path + ": " + e.what());
        }
    };
    auto load_grain_line = [](const std::string& path) {
        try {
            return grain_line_from_json(read_json(path));
        } catch (const BadInput&) {
            throw;
        } catch (const std::exception& e) {
            throw BadInput(path + ": " + e.what());
        }
    };

    try {
        if (gen_halved->parsed() || gen_farey->parsed() || gen_ghf->parsed()) {
            Graph graph;
            json meta;
            if (gen_farey->parsed()) {
                auto f = farey(gen_order);
                graph = f.graph;
                meta["cycle"] = f.cycle;
                meta["x"] = f.x;
                meta["y"] = f.y;
            } else {
                LeveledFareyGraph g =
                    gen_ghf->parsed()
                        ? generalised_halved_farey(LengthFunction(parse_lengths(gen_lengths)),
                                                   gen_order)
                        : halved_farey(gen_order);
                graph = g.graph;
                meta = leveled_metadata_json(g);
            }
            emit(format == "dot" ? graph_to_dot(graph) : graph_to_json(graph).dump(2), out_path);
            if (!meta_path.empty()) emit(meta.dump(2), meta_path);
            return kExitOk;
        }

        if (grain->parsed()) {
            GrainLine gl = load_grain_line(grain_in);
            if (grain->get_subcommand("extract")->parsed()) {
                auto extracted = extract_grain_line(gl.paths);
                emit(grain_line_to_json(extracted).dump(2), out_path);
                return kExitOk;
            }
            auto report = check_grain_line(gl);
            if (grain->get_subcommand("report")->parsed()) {
                emit(grain_line_report_to_json(report).dump(2), out_path);
                return report.valid() ? kExitOk : kExitViolation;
            }
            if (!report.valid()) throw Violation(report.violations.front());
            emit("valid", out_path);
            return kExitOk;
        }

        if (m_find->parsed()) {
            auto result = find_subdivision(load_graph(pattern_path), load_graph(host_path),
                                           budget);
            emit(subdivision_result_to_json(result).dump(2), out_path);
            return exit_for(result.status);
        }
        if (m_dive->parsed()) {
            auto outer = load_grain_line(outer_path);
            auto inner = load_grain_line(inner_path);
            emit(dive_trace_to_json(dive(outer, inner, k_max)).dump(2), out_path);
            return kExitOk;
        }
        if (m_excl->parsed()) {
            std::vector<GrainLine> families;
            std::stringstream ss(families_csv);
            std::string path;
            while (std::getline(ss, path, ','))
                families.push_back(load_grain_line(path));
            auto report = subdivision_exclusion_experiment(families, horizon, budget);
            emit(exclusion_report_to_json(report).dump(2), out_path);
            for (auto s : report.results)
                if (s == SearchStatus::Unknown) return kExitUnknown;
            return kExitOk;
        }

        if (sep->parsed()) {
            Graph g = load_graph(sep_graph);
            if (s_blocks->parsed()) {
                json j = json::array();
                for (const auto& block : edge_blocks(g, sep_c)) j.push_back(block);
                emit(j.dump(2), out_path);
            } else if (s_tcd->parsed()) {
                emit(tree_cut_to_json(tree_cut_decomposition(g, sep_c)).dump(2), out_path);
            } else if (s_find->parsed()) {
                auto found = find_compound_separation(g, sep_u, sep_v, sep_s, sep_f);
                json j;
                j["found"] = found.has_value();
                if (found) j["separation"] = separation_to_json(*found);
                emit(j.dump(2), out_path);
            } else {
                emit(iterated_split_to_json(iterated_split(g, sep_f, sep_steps)).dump(2),
                     out_path);
            }
            return kExitOk;
        }

        if (i_build->parsed()) {
            auto gl = load_grain_line(host_path);
            emit(immersion_model_to_json(immerse_halved_farey(gl, imm_order)).dump(2), out_path);
            return kExitOk;
        }
        if (i_verify->parsed()) {
            ImmersionModel model;
            try {
                model = immersion_model_from_json(read_json(model_path));
            } catch (const BadInput&) {
                throw;
            } catch (const std::exception& e) {
                throw BadInput(model_path + ": " + e.what());
            }
            auto violations = verify_immersion(model);
            if (!violations.empty()) throw Violation(violations.front());
            std::cout << "valid\n";
            return kExitOk;
        }
        if (i_brute->parsed()) {
            auto result = find_immersion_bruteforce(load_graph(pattern_path),
                                                    load_graph(host_path), imm_strong, budget);
            json j;
            j["status"] = to_string(result.status);
            j["nodes_used"] = result.nodes_used;
            if (result.model) j["model"] = immersion_model_to_json(*result.model);
            emit(j.dump(2), out_path);
            return exit_for(result.status);
        }

        if (h_acc->parsed()) {
            int only = 0;
            if (suite != "all") {
                try {
                    only = std::stoi(suite);
                } catch (const std::exception&) {
                    throw BadInput("bad suite '" + suite + "'");
                }
                if (only < 1 || only > 11) throw BadInput("suite out of range");
            }
            json j = json::array();
            bool all_passed = true;
            for (const auto& r : run_acceptance(seed, only)) {
                j.push_back({{"index", r.index},
                             {"name", r.name},
                             {"passed", r.passed},
                             {"detail", r.detail}});
                all_passed = all_passed && r.passed;
            }
            emit(j.dump(2), out_path);
            if (!all_passed) throw Violation("acceptance criteria failed");
            return kExitOk;
        }

        if (exp->parsed()) {
            Graph g = load_graph(exp_graph);
            emit(format == "dot" ? graph_to_dot(g) : graph_to_json(g).dump(2), out_path);
            return kExitOk;
        }
    } catch (const BadInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Violation& e) {
        std::cerr << "validation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitOk;
}
