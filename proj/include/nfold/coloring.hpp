#pragma once

#include <string>
#include <vector>

#include "nfold/instance.hpp"

namespace nfold {

/// Simple undirected graph as adjacency lists.
struct graph {
    std::vector<std::vector<std::size_t>> adj;

    std::size_t size() const { return adj.size(); }
    bool adjacent(std::size_t u, std::size_t v) const;
    void validate() const;
};

enum class class_kind { clique, independent };

struct type_class {
    i64 weight = 1;  // |V_i|
    class_kind kind = class_kind::independent;
};

/// Twin-equivalence quotient: weighted types plus edges (loops allowed).
struct type_graph {
    std::vector<type_class> types;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i <= j, (i,i) is a loop

    std::size_t size() const { return types.size(); }
    i64 vertex_count() const;
    void validate() const;
};

/// Groups vertices into twin classes (N(u)\{v} = N(v)\{u}) and quotients the graph.
/// Returns the type graph plus each vertex's type index.
type_graph graph_to_typegraph(const graph& g, std::vector<std::size_t>* vertex_type = nullptr);

struct coloring_solution {
    solve_status status = solve_status::optimal;
    // per type: (color, vertex count) pairs with count > 0, colors 1-based ascending
    std::vector<std::vector<std::pair<i64, i64>>> assignment;
    i64 total = 0;  // sum of colors over vertices
};

struct encoded_coloring {
    nfold_instance ip;
    std::size_t k = 0;       // number of types
    i64 colors = 0;          // number of bricks
    std::size_t brick_width = 0;
};

/// One brick per color; per-color conflict rows from the type-graph edges.
encoded_coloring encode_mscol(const type_graph& tg, i64 vertex_count);

coloring_solution decode_coloring(const encoded_coloring& enc, const type_graph& tg,
                                  std::span<const i64> x);

/// Encode + solve + decode; when the raw graph is given the decoded coloring
/// is verified proper on it.
coloring_solution solve_mscol(const type_graph& tg);
coloring_solution solve_mscol_graph(const graph& g);

graph parse_graph_json(const std::string& text);
type_graph parse_typegraph_json(const std::string& text);
std::string coloring_to_json(const coloring_solution& sol);

} // namespace nfold
