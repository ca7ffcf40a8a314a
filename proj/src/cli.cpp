#include "nfold/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfold/coloring.hpp"
#include "nfold/errors.hpp"
#include "nfold/graver.hpp"
#include "nfold/oracle.hpp"
#include "nfold/partition.hpp"
#include "nfold/scheduling.hpp"
#include "nfold/solver.hpp"
#include "nfold/steinitz.hpp"

namespace nfold {

namespace {

constexpr const char* version_string = "nfold 1.0.0";

using ordered_json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int_matrix parse_matrix_doc(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("matrix JSON parse error: ") + e.what());
    }
    const nlohmann::json& rows = doc.is_object() ? doc.at("matrix") : doc;
    std::vector<std::vector<i64>> data;
    for (const auto& row : rows) {
        std::vector<i64> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw invalid_input("matrix entries must be integers");
            r.push_back(v.get<i64>());
        }
        data.push_back(std::move(r));
    }
    if (data.empty()) throw invalid_input("matrix must have at least one row");
    return int_matrix::from_rows(data);
}

std::vector<std::vector<i64>> parse_vectors_doc(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("vectors JSON parse error: ") + e.what());
    }
    const nlohmann::json& rows = doc.is_object() ? doc.at("vectors") : doc;
    std::vector<std::vector<i64>> data;
    for (const auto& row : rows) {
        std::vector<i64> r;
        for (const auto& v : row) r.push_back(v.get<i64>());
        data.push_back(std::move(r));
    }
    return data;
}

ordered_json solution_json(const solution& sol) {
    ordered_json doc;
    if (sol.status == solve_status::optimal) {
        doc["status"] = "optimal";
        doc["x"] = sol.x;
        doc["objective"] = sol.objective_value;
        doc["iterations"] = sol.iterations;
    } else {
        doc["status"] = "infeasible";
        doc["iterations"] = sol.iterations;
    }
    return doc;
}

int cmd_solve(const std::string& path, bool log_steps, std::ostream& out, std::ostream& err) {
    nfold_instance inst = load_instance_file(path);
    solution sol;
    if (log_steps) {
        auto x0 = initial_feasible(inst);
        if (!x0) {
            sol.status = solve_status::infeasible;
        } else {
            std::function<void(const step_result&, i64)> log = [&](const step_result& s, i64 lambda) {
                err << "step lambda=" << lambda << " gain=" << s.gain << "\n";
            };
            sol = augment_to_optimal(inst, std::move(*x0), &log);
        }
    } else {
        sol = solve(inst);
    }
    out << solution_json(sol).dump() << "\n";
    return sol.status == solve_status::optimal ? exit_ok : exit_infeasible;
}

int cmd_partition(const std::string& path, std::ostream& out) {
    int_matrix m = parse_matrix_doc(slurp(path));
    row_partition part = column_independent_partition(m);
    ordered_json doc;
    doc["parts"] = part.parts;
    doc["p"] = part.p;
    doc["S"] = part.S;
    out << doc.dump() << "\n";
    return exit_ok;
}

int cmd_graver(const std::string& path, std::optional<i64> cap, std::ostream& out) {
    int_matrix m = parse_matrix_doc(slurp(path));
    graver_set g = graver_basis(m, cap);
    ordered_json doc;
    doc["elements"] = g.elements;
    doc["count"] = g.elements.size();
    doc["norm_cap"] = g.norm_cap;
    out << doc.dump() << "\n";
    return exit_ok;
}

int cmd_bounds(std::optional<i64> p, std::optional<i64> delta, const std::string& instance_path,
               std::ostream& out) {
    ordered_json doc;
    if (!instance_path.empty()) {
        nfold_instance inst = load_instance_file(instance_path);
        nfold_params params = nfold_partition_params(inst);
        i64 d = inst.delta();
        doc["p_A"] = params.p_A;
        doc["S_A"] = params.S_A;
        doc["p_B"] = params.p_B;
        doc["delta"] = d;
        i64 l2 = lemma2_bound(static_cast<i64>(params.p_B), d);
        i64 l4 = nfold_graver_bound(static_cast<i64>(params.S_A), static_cast<i64>(params.p_A),
                                    static_cast<i64>(params.p_B), d);
        doc["lemma2_B"] = l2;
        doc["lemma4"] = l4;
        if (l2 == huge || l4 == huge) doc["saturated"] = true;
    } else {
        if (!p || !delta) throw invalid_input("bounds needs either --instance or both --p and --delta");
        i64 v = lemma2_bound(*p, *delta);
        doc["lemma2"] = v;
        if (v == huge) doc["saturated"] = true;
    }
    out << doc.dump() << "\n";
    return exit_ok;
}

int cmd_steinitz(const std::string& path, std::optional<i64> delta, std::ostream& out) {
    auto vectors = parse_vectors_doc(slurp(path));
    i64 d = 0;
    if (delta) {
        d = *delta;
    } else {
        for (const auto& v : vectors) d = std::max(d, linf_norm(v));
    }
    auto order = steinitz_reorder(vectors, d);
    ordered_json doc;
    doc["permutation"] = order;
    doc["max_prefix_norm"] = max_prefix_norm(vectors, order);
    doc["bound"] = vectors.empty() ? 0
                                   : checked_mul(static_cast<i64>(vectors[0].size()), d);
    out << doc.dump() << "\n";
    return exit_ok;
}

int cmd_schedule(const std::string& variant_name_in, const std::string& path, std::ostream& out) {
    sched_variant variant = parse_variant(variant_name_in);
    std::string text = slurp(path);
    schedule sched;
    if (variant == sched_variant::rcmax) {
        sched = solve_rcmax(parse_unrelated_json(text));
    } else if (variant == sched_variant::qswc) {
        sched = solve_qswc(parse_uniform_json(text));
    } else {
        sched = solve_makespan(parse_uniform_json(text), variant);
    }
    out << schedule_to_json(sched) << "\n";
    return sched.status == solve_status::optimal ? exit_ok : exit_infeasible;
}

int cmd_color(const std::string& graph_path, const std::string& typegraph_path, std::ostream& out) {
    coloring_solution sol;
    if (!graph_path.empty())
        sol = solve_mscol_graph(parse_graph_json(slurp(graph_path)));
    else if (!typegraph_path.empty())
        sol = solve_mscol(parse_typegraph_json(slurp(typegraph_path)));
    else
        throw invalid_input("color needs --graph or --typegraph");
    out << coloring_to_json(sol) << "\n";
    return exit_ok;
}

int cmd_oracle(const std::string& mode, const std::string& path, const std::string& variant_opt,
               std::ostream& out) {
    ordered_json doc;
    int code = exit_ok;
    if (mode == "ip") {
        solution sol = oracle_ip_solve(load_instance_file(path));
        doc = solution_json(sol);
        code = sol.status == solve_status::optimal ? exit_ok : exit_infeasible;
    } else if (mode == "graver") {
        graver_set g = oracle_graver(parse_matrix_doc(slurp(path)));
        doc["elements"] = g.elements;
        doc["count"] = g.elements.size();
        doc["norm_cap"] = g.norm_cap;
    } else if (mode == "schedule") {
        if (variant_opt.empty()) throw invalid_input("oracle --mode schedule needs --variant");
        sched_variant variant = parse_variant(variant_opt);
        std::string text = slurp(path);
        if (variant == sched_variant::rcmax) {
            auto v = oracle_rcmax(parse_unrelated_json(text));
            doc["status"] = v ? "optimal" : "infeasible";
            if (v) doc["objective"] = *v;
            code = v ? exit_ok : exit_infeasible;
        } else if (variant == sched_variant::qswc) {
            rational v = oracle_qswc(parse_uniform_json(text));
            doc["status"] = "optimal";
            if (v.is_integer())
                doc["objective"] = v.num;
            else
                doc["objective"] = v.str();
        } else {
            auto v = oracle_schedule(parse_uniform_json(text), variant);
            doc["status"] = v ? "optimal" : "infeasible";
            if (v) doc["objective"] = *v;
            code = v ? exit_ok : exit_infeasible;
        }
    } else if (mode == "color") {
        i64 v = oracle_mscol(parse_graph_json(slurp(path)));
        doc["status"] = "optimal";
        doc["sum"] = v;
    } else {
        throw invalid_input("oracle mode must be one of ip, graver, schedule, color");
    }
    out << doc.dump() << "\n";
    return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact N-fold integer programming toolkit"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    std::string instance_path, matrix_path, vectors_path, graph_path, typegraph_path;
    std::string variant, oracle_mode;
    bool log_steps = false;
    std::optional<i64> opt_p, opt_delta, opt_cap;

    auto* solve_cmd = app.add_subcommand("solve", "Solve an N-fold instance to optimality");
    solve_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
    solve_cmd->add_flag("--log-steps", log_steps, "log accepted augmentation steps to stderr");

    auto* graver_cmd = app.add_subcommand("graver", "Graver basis of a small matrix");
    graver_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    graver_cmd->add_option("--cap", opt_cap, "extra l1 cap for the enumeration");

    auto* partition_cmd = app.add_subcommand("partition", "Finest column-independent row partition");
    partition_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();

    auto* bounds_cmd = app.add_subcommand("bounds", "Graver norm bound values");
    bounds_cmd->add_option("--p", opt_p, "largest part size");
    bounds_cmd->add_option("--delta", opt_delta, "largest absolute matrix entry");
    bounds_cmd->add_option("--instance", instance_path, "N-fold instance JSON file");

    auto* steinitz_cmd = app.add_subcommand("steinitz", "Prefix-bounded reordering of zero-sum vectors");
    steinitz_cmd->add_option("--vectors", vectors_path, "vectors JSON file")->required();
    steinitz_cmd->add_option("--delta", opt_delta, "stated infinity-norm bound");

    auto* schedule_cmd = app.add_subcommand("schedule", "High-multiplicity scheduling pipelines");
    schedule_cmd->add_option("--variant", variant, "cmax, cmin, cmax-cap, cmax-release, cmax-deadline, rcmax, qswc")
        ->required();
    schedule_cmd->add_option("--instance", instance_path, "scheduling instance JSON file")->required();

    auto* color_cmd = app.add_subcommand("color", "Minimum sum coloring");
    color_cmd->add_option("--graph", graph_path, "graph JSON file (adjacency lists)");
    color_cmd->add_option("--typegraph", typegraph_path, "type graph JSON file");

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
    oracle_cmd->add_option("--mode", oracle_mode, "ip, graver, schedule or color")->required();
    oracle_cmd->add_option("--instance", instance_path, "input file for the chosen mode")->required();
    oracle_cmd->add_option("--variant", variant, "scheduling variant (mode schedule)");

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(std::move(argv));
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << version_string << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_invalid;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(instance_path, log_steps, out, err);
        if (graver_cmd->parsed()) return cmd_graver(matrix_path, opt_cap, out);
        if (partition_cmd->parsed()) return cmd_partition(matrix_path, out);
        if (bounds_cmd->parsed()) return cmd_bounds(opt_p, opt_delta, instance_path, out);
        if (steinitz_cmd->parsed()) return cmd_steinitz(vectors_path, opt_delta, out);
        if (schedule_cmd->parsed()) return cmd_schedule(variant, instance_path, out);
        if (color_cmd->parsed()) return cmd_color(graph_path, typegraph_path, out);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_mode, instance_path, variant, out);
        err << "no subcommand given\n";
        return exit_invalid;
    } catch (const invalid_input& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    } catch (const overflow_exception& e) {
        err << "overflow: " << e.what() << "\n";
        return exit_intractable;
    } catch (const budget_exceeded& e) {
        err << "intractable: " << e.what() << "\n";
        return exit_intractable;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_intractable;
    }
}

} // namespace nfold
