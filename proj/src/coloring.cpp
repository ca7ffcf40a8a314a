#include "nfold/coloring.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "nfold/errors.hpp"
#include "nfold/solver.hpp"

namespace nfold {

bool graph::adjacent(std::size_t u, std::size_t v) const {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

void graph::validate() const {
    for (std::size_t u = 0; u < adj.size(); ++u) {
        for (std::size_t v : adj[u]) {
            if (v >= adj.size()) throw invalid_input("graph neighbor index out of range");
            if (v == u) throw invalid_input("graph must be simple (loop found)");
            if (!adjacent(v, u)) throw invalid_input("graph adjacency is not symmetric");
        }
    }
}

i64 type_graph::vertex_count() const {
    i64 n = 0;
    for (const auto& t : types) n = checked_add(n, t.weight);
    return n;
}

void type_graph::validate() const {
    if (types.empty()) throw invalid_input("type graph needs at least one type");
    for (const auto& t : types)
        if (t.weight < 1) throw invalid_input("type weights must be positive");
    for (auto [i, j] : edges) {
        if (i > j) throw invalid_input("type edges must be stored with i <= j");
        if (j >= types.size()) throw invalid_input("type edge index out of range");
    }
}

type_graph graph_to_typegraph(const graph& g, std::vector<std::size_t>* vertex_type) {
    g.validate();
    const std::size_t n = g.size();
    if (n == 0) throw invalid_input("type graph of an empty graph");

    auto twins = [&](std::size_t u, std::size_t v) {
        std::vector<bool> nu(n, false), nv(n, false);
        for (std::size_t w : g.adj[u]) nu[w] = true;
        for (std::size_t w : g.adj[v]) nv[w] = true;
        nu[v] = nv[u] = false;
        nu[u] = nv[v] = false;
        return nu == nv;
    };

    std::vector<std::size_t> cls(n, n);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t c = 0; c < members.size(); ++c) {
            if (twins(u, members[c][0])) {
                cls[u] = c;
                members[c].push_back(u);
                break;
            }
        }
        if (cls[u] == n) {
            cls[u] = members.size();
            members.push_back({u});
        }
    }
    // Twin equivalence is transitive; double-check membership pairwise.
    for (const auto& group : members)
        for (std::size_t a = 1; a < group.size(); ++a)
            if (!twins(group[0], group[a]))
                throw internal_error("twin classes are not an equivalence");

    type_graph tg;
    for (const auto& group : members) {
        std::size_t internal_edges = 0;
        for (std::size_t a = 0; a < group.size(); ++a)
            for (std::size_t b = a + 1; b < group.size(); ++b)
                if (g.adjacent(group[a], group[b])) ++internal_edges;
        std::size_t pairs = group.size() * (group.size() - 1) / 2;
        if (internal_edges != 0 && internal_edges != pairs)
            throw internal_error("twin class neither clique nor independent");
        type_class tc;
        tc.weight = static_cast<i64>(group.size());
        tc.kind = (pairs > 0 && internal_edges == pairs) ? class_kind::clique
                                                         : class_kind::independent;
        tg.types.push_back(tc);
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
        if (tg.types[c].kind == class_kind::clique && members[c].size() >= 2)
            tg.edges.emplace_back(c, c);
        for (std::size_t c2 = c + 1; c2 < members.size(); ++c2)
            if (g.adjacent(members[c][0], members[c2][0])) tg.edges.emplace_back(c, c2);
    }
    std::sort(tg.edges.begin(), tg.edges.end());
    if (vertex_type) *vertex_type = cls;
    tg.validate();
    return tg;
}

encoded_coloring encode_mscol(const type_graph& tg, i64 vertex_count) {
    tg.validate();
    if (vertex_count < tg.vertex_count())
        throw invalid_input("color count below the number of vertices");
    const std::size_t k = tg.size();
    const std::size_t e = tg.edges.size();
    encoded_coloring enc;
    enc.k = k;
    enc.colors = vertex_count;
    enc.brick_width = k + e;

    enc.ip.b_top.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        enc.ip.b_top[i] = tg.types[i].kind == class_kind::clique ? tg.types[i].weight : 1;
    enc.ip.obj.kind = objective_kind::linear_max;

    for (i64 color = 1; color <= vertex_count; ++color) {
        brick bk;
        bk.A = int_matrix(k, k + e);
        for (std::size_t i = 0; i < k; ++i) bk.A.at(i, i) = 1;
        bk.B = int_matrix(e, k + e);
        bk.b_local.assign(e, 1);
        for (std::size_t idx = 0; idx < e; ++idx) {
            auto [i, j] = tg.edges[idx];
            // A loop contributes the at-most-one-vertex-per-color row x_i <= 1;
            // a proper edge forbids sharing the color across the two types.
            bk.B.at(idx, i) = 1;
            if (j != i) bk.B.at(idx, j) = 1;
            bk.B.at(idx, k + idx) = 1;
        }
        bk.lower.assign(k + e, 0);
        bk.upper.assign(k + e, 1);
        enc.ip.bricks.push_back(std::move(bk));
        for (std::size_t i = 0; i < k; ++i) {
            i64 unit = tg.types[i].kind == class_kind::clique ? 1 : tg.types[i].weight;
            enc.ip.obj.c.push_back(checked_neg(checked_mul(color, unit)));
        }
        for (std::size_t idx = 0; idx < e; ++idx) enc.ip.obj.c.push_back(0);
    }
    enc.ip.validate();
    return enc;
}

coloring_solution decode_coloring(const encoded_coloring& enc, const type_graph& tg,
                                  std::span<const i64> x) {
    if (x.size() != enc.ip.total_cols()) throw invalid_input("decode point has the wrong length");
    coloring_solution sol;
    sol.assignment.assign(enc.k, {});
    std::vector<i64> covered(enc.k, 0);
    for (i64 color = 1; color <= enc.colors; ++color) {
        std::size_t col0 = static_cast<std::size_t>(color - 1) * enc.brick_width;
        for (std::size_t i = 0; i < enc.k; ++i) {
            i64 v = x[col0 + i];
            if (v == 0) continue;
            i64 vertices = tg.types[i].kind == class_kind::clique ? v : checked_mul(v, tg.types[i].weight);
            sol.assignment[i].emplace_back(color, vertices);
            covered[i] = checked_add(covered[i], vertices);
            sol.total = checked_add(sol.total, checked_mul(color, vertices));
        }
    }
    for (std::size_t i = 0; i < enc.k; ++i)
        if (covered[i] != tg.types[i].weight)
            throw internal_error("decoded coloring does not cover every vertex of a type");
    return sol;
}

coloring_solution solve_mscol(const type_graph& tg) {
    tg.validate();
    encoded_coloring enc = encode_mscol(tg, tg.vertex_count());
    solution sol = solve(enc.ip);
    if (sol.status != solve_status::optimal)
        throw internal_error("coloring encoding should always be feasible");
    coloring_solution out = decode_coloring(enc, tg, sol.x);
    if (out.total != checked_neg(sol.objective_value))
        throw internal_error("coloring objective mismatch");
    return out;
}

coloring_solution solve_mscol_graph(const graph& g) {
    std::vector<std::size_t> vertex_type;
    type_graph tg = graph_to_typegraph(g, &vertex_type);
    coloring_solution sol = solve_mscol(tg);

    // Materialize per-vertex colors and verify properness on the raw graph.
    std::vector<i64> color_of(g.size(), 0);
    for (std::size_t i = 0; i < tg.size(); ++i) {
        std::vector<std::size_t> vertices;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (vertex_type[v] == i) vertices.push_back(v);
        std::size_t next = 0;
        for (auto [color, cnt] : sol.assignment[i])
            for (i64 q = 0; q < cnt; ++q) color_of[vertices[next++]] = color;
        if (next != vertices.size()) throw internal_error("per-vertex color expansion mismatch");
    }
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v : g.adj[u])
            if (color_of[u] == color_of[v])
                throw internal_error("decoded coloring is not proper");
    return sol;
}

namespace {

using nlohmann::json;

json parse_doc(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("coloring JSON parse error: ") + e.what());
    }
}

} // namespace

graph parse_graph_json(const std::string& text) {
    json doc = parse_doc(text);
    if (!doc.contains("adj")) throw invalid_input("graph JSON needs an adjacency list \"adj\"");
    graph g;
    for (const auto& row : doc["adj"]) {
        std::vector<std::size_t> nb;
        for (const auto& v : row) nb.push_back(v.get<std::size_t>());
        g.adj.push_back(std::move(nb));
    }
    g.validate();
    return g;
}

type_graph parse_typegraph_json(const std::string& text) {
    json doc = parse_doc(text);
    if (!doc.contains("types")) throw invalid_input("type graph JSON needs \"types\"");
    type_graph tg;
    for (const auto& jt : doc["types"]) {
        type_class tc;
        tc.weight = jt.at("weight").get<i64>();
        std::string kind = jt.at("kind").get<std::string>();
        if (kind == "clique")
            tc.kind = class_kind::clique;
        else if (kind == "independent")
            tc.kind = class_kind::independent;
        else
            throw invalid_input("type kind must be clique or independent");
        tg.types.push_back(tc);
    }
    if (doc.contains("edges"))
        for (const auto& je : doc["edges"]) {
            std::size_t a = je.at(0).get<std::size_t>();
            std::size_t b = je.at(1).get<std::size_t>();
            tg.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    std::sort(tg.edges.begin(), tg.edges.end());
    tg.edges.erase(std::unique(tg.edges.begin(), tg.edges.end()), tg.edges.end());
    tg.validate();
    return tg;
}

std::string coloring_to_json(const coloring_solution& sol) {
    nlohmann::ordered_json doc;
    doc["status"] = sol.status == solve_status::optimal ? "optimal" : "infeasible";
    doc["sum"] = sol.total;
    doc["assignment"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sol.assignment.size(); ++i) {
        nlohmann::ordered_json jt = nlohmann::ordered_json::array();
        for (auto [color, cnt] : sol.assignment[i]) {
            nlohmann::ordered_json je;
            je["color"] = color;
            je["vertices"] = cnt;
            jt.push_back(je);
        }
        doc["assignment"].push_back(jt);
    }
    return doc.dump();
}

} // namespace nfold
