#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfold/cli.hpp"
#include "nfold/coloring.hpp"
#include "nfold/graver.hpp"
#include "nfold/instance.hpp"
#include "nfold/oracle.hpp"
#include "nfold/partition.hpp"
#include "nfold/scheduling.hpp"
#include "nfold/solver.hpp"
#include "nfold/steinitz.hpp"

#include <sstream>

namespace py = pybind11;
using namespace nfold;

namespace {

int_matrix matrix_from_rows(const std::vector<std::vector<i64>>& rows) {
    return int_matrix::from_rows(rows);
}

std::string solve_json(const std::string& instance_json) {
    nfold_instance inst = parse_instance_json(instance_json);
    solution sol = solve(inst);
    std::ostringstream out;
    out << "{\"status\":\"" << (sol.status == solve_status::optimal ? "optimal" : "infeasible")
        << "\"";
    if (sol.status == solve_status::optimal) {
        out << ",\"objective\":" << sol.objective_value << ",\"iterations\":" << sol.iterations
            << ",\"x\":[";
        for (std::size_t i = 0; i < sol.x.size(); ++i) out << (i ? "," : "") << sol.x[i];
        out << "]";
    }
    out << "}";
    return out.str();
}

std::string schedule_json(const std::string& variant, const std::string& instance_json) {
    sched_variant v = parse_variant(variant);
    schedule s;
    if (v == sched_variant::rcmax)
        s = solve_rcmax(parse_unrelated_json(instance_json));
    else if (v == sched_variant::qswc)
        s = solve_qswc(parse_uniform_json(instance_json));
    else
        s = solve_makespan(parse_uniform_json(instance_json), v);
    return schedule_to_json(s);
}

std::string color_graph_json(const std::string& graph_json) {
    return coloring_to_json(solve_mscol_graph(parse_graph_json(graph_json)));
}

} // namespace

PYBIND11_MODULE(_nfold, m) {
    m.doc() = "Exact N-fold integer programming toolkit";

    m.def("lemma2_bound", &lemma2_bound, py::arg("p"), py::arg("delta"),
          "Graver l1 bound (2 p delta + 1)^p");
    m.def("nfold_graver_bound", &nfold_graver_bound, py::arg("S_A"), py::arg("p_A"),
          py::arg("p_B"), py::arg("delta"),
          "Graver l1 bound of an N-fold matrix from its partition parameters");

    m.def(
        "partition",
        [](const std::vector<std::vector<i64>>& rows) {
            row_partition part = column_independent_partition(matrix_from_rows(rows));
            return py::make_tuple(part.parts, part.p, part.S);
        },
        py::arg("matrix"), "Finest column-independent row partition: (parts, p, S)");

    m.def(
        "graver_basis",
        [](const std::vector<std::vector<i64>>& rows, std::optional<i64> cap) {
            return graver_basis(matrix_from_rows(rows), cap).elements;
        },
        py::arg("matrix"), py::arg("cap") = std::nullopt,
        "All indecomposable cycles within the certified l1 radius");

    m.def(
        "is_indecomposable",
        [](const std::vector<std::vector<i64>>& rows, const std::vector<i64>& y) {
            return is_indecomposable(matrix_from_rows(rows), y);
        },
        py::arg("matrix"), py::arg("y"));

    m.def("steinitz_reorder", &steinitz_reorder, py::arg("vectors"), py::arg("delta"),
          "Reorder zero-sum vectors so every prefix sum stays within m*delta");
    m.def("max_prefix_norm", &max_prefix_norm, py::arg("vectors"), py::arg("order"));

    m.def(
        "assemble",
        [](const std::string& instance_json) {
            int_matrix full = assemble(parse_instance_json(instance_json));
            std::vector<std::vector<i64>> rows(full.rows(), std::vector<i64>(full.cols()));
            for (std::size_t i = 0; i < full.rows(); ++i)
                for (std::size_t j = 0; j < full.cols(); ++j) rows[i][j] = full.at(i, j);
            return rows;
        },
        py::arg("instance_json"), "Full constraint matrix of an instance given as JSON text");

    m.def(
        "check_feasible",
        [](const std::string& instance_json, const std::vector<i64>& x) {
            return check_feasible(parse_instance_json(instance_json), x);
        },
        py::arg("instance_json"), py::arg("x"));

    m.def(
        "input_measure",
        [](const std::string& instance_json) {
            return input_measure(parse_instance_json(instance_json));
        },
        py::arg("instance_json"));

    m.def("solve", &solve_json, py::arg("instance_json"),
          "Exact solve; returns the result as a JSON string");
    m.def(
        "oracle_ip_solve",
        [](const std::string& instance_json) {
            solution sol = oracle_ip_solve(parse_instance_json(instance_json));
            return py::make_tuple(sol.status == solve_status::optimal, sol.objective_value);
        },
        py::arg("instance_json"), "(feasible, objective) by exhaustive box enumeration");

    m.def("schedule", &schedule_json, py::arg("variant"), py::arg("instance_json"),
          "Scheduling pipeline; returns the schedule as a JSON string");
    m.def("color_graph", &color_graph_json, py::arg("graph_json"),
          "Minimum sum coloring of an adjacency-list graph given as JSON text");
}
