#include "nfold/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nfold/errors.hpp"

namespace nfold {

std::size_t nfold_instance::total_cols() const {
    std::size_t n = 0;
    for (const auto& bk : bricks) n += bk.width();
    return n;
}

std::size_t nfold_instance::total_rows() const {
    std::size_t n = top_rows();
    for (const auto& bk : bricks) n += bk.local_rows();
    return n;
}

i64 nfold_instance::delta() const {
    i64 d = 0;
    for (const auto& bk : bricks) {
        d = std::max(d, bk.A.max_abs());
        d = std::max(d, bk.B.max_abs());
    }
    return d;
}

i64 nfold_instance::box_width() const {
    i64 w = 0;
    for (const auto& bk : bricks)
        for (std::size_t j = 0; j < bk.width(); ++j)
            w = std::max(w, checked_sub(bk.upper[j], bk.lower[j]));
    return w;
}

void nfold_instance::validate() const {
    if (bricks.empty()) throw invalid_input("instance has no bricks");
    const std::size_t r = top_rows();
    for (std::size_t i = 0; i < bricks.size(); ++i) {
        const auto& bk = bricks[i];
        const std::string where = "brick " + std::to_string(i);
        if (bk.A.rows() != r) throw invalid_input(where + ": A row count differs from b_top length");
        if (bk.B.rows() > 0 && bk.B.cols() != bk.A.cols())
            throw invalid_input(where + ": A and B column counts differ");
        if (bk.b_local.size() != bk.local_rows())
            throw invalid_input(where + ": b_local length differs from B row count");
        if (bk.lower.size() != bk.width() || bk.upper.size() != bk.width())
            throw invalid_input(where + ": bound vectors must have one entry per column");
        for (std::size_t j = 0; j < bk.width(); ++j)
            if (bk.lower[j] > bk.upper[j])
                throw invalid_input(where + ": lower bound exceeds upper bound at column " + std::to_string(j));
    }
    const std::size_t nt = total_cols();
    if (obj.kind == objective_kind::linear_max) {
        if (obj.c.size() != nt) throw invalid_input("objective c length differs from variable count");
    } else {
        if (obj.a.size() != nt || obj.b.size() != nt)
            throw invalid_input("objective a/b lengths differ from variable count");
        for (std::size_t j = 0; j < nt; ++j)
            if (obj.a[j] < 0) throw invalid_input("sep_convex_min requires a_j >= 0 (column " + std::to_string(j) + ")");
    }
}

int_matrix assemble(const nfold_instance& inst) {
    const std::size_t r = inst.top_rows();
    const std::size_t rows = inst.total_rows();
    const std::size_t cols = inst.total_cols();
    int_matrix full(rows, cols);
    std::size_t col0 = 0;
    std::size_t row0 = r;
    for (const auto& bk : inst.bricks) {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < bk.width(); ++j) full.at(i, col0 + j) = bk.A.at(i, j);
        for (std::size_t i = 0; i < bk.local_rows(); ++i)
            for (std::size_t j = 0; j < bk.width(); ++j) full.at(row0 + i, col0 + j) = bk.B.at(i, j);
        row0 += bk.local_rows();
        col0 += bk.width();
    }
    return full;
}

bool check_feasible(const nfold_instance& inst, std::span<const i64> x) {
    if (x.size() != inst.total_cols()) throw invalid_input("x length differs from variable count");
    const std::size_t r = inst.top_rows();
    std::vector<i64> top(r, 0);
    std::size_t col0 = 0;
    for (const auto& bk : inst.bricks) {
        auto xi = x.subspan(col0, bk.width());
        for (std::size_t j = 0; j < bk.width(); ++j)
            if (xi[j] < bk.lower[j] || xi[j] > bk.upper[j]) return false;
        auto local = bk.B.mul(xi);
        for (std::size_t i = 0; i < local.size(); ++i)
            if (local[i] != bk.b_local[i]) return false;
        auto contrib = bk.A.mul(xi);
        for (std::size_t i = 0; i < r; ++i) top[i] = checked_add(top[i], contrib[i]);
        col0 += bk.width();
    }
    for (std::size_t i = 0; i < r; ++i)
        if (top[i] != inst.b_top[i]) return false;
    return true;
}

i64 evaluate_objective(const nfold_instance& inst, std::span<const i64> x) {
    if (x.size() != inst.obj.size()) throw invalid_input("x length differs from objective size");
    i64 v = 0;
    if (inst.obj.kind == objective_kind::linear_max) {
        for (std::size_t j = 0; j < x.size(); ++j)
            if (inst.obj.c[j] != 0) v = checked_add(v, checked_mul(inst.obj.c[j], x[j]));
    } else {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (inst.obj.a[j] != 0)
                v = checked_add(v, checked_mul(inst.obj.a[j], checked_mul(x[j], x[j])));
            if (inst.obj.b[j] != 0) v = checked_add(v, checked_mul(inst.obj.b[j], x[j]));
        }
    }
    return v;
}

i64 objective_max_sense(const nfold_instance& inst, std::span<const i64> x) {
    i64 v = evaluate_objective(inst, x);
    return inst.obj.kind == objective_kind::linear_max ? v : checked_neg(v);
}

double input_measure(const nfold_instance& inst) {
    if (inst.obj.kind != objective_kind::linear_max)
        throw invalid_input("input measure not applicable to separable convex objectives");
    i64 width = inst.box_width();
    // c_max = max over the box of |c.x|: take the maximizing and minimizing corners.
    i64 hi = 0, lo = 0;
    std::size_t col0 = 0;
    for (const auto& bk : inst.bricks) {
        for (std::size_t j = 0; j < bk.width(); ++j) {
            i64 cj = inst.obj.c[col0 + j];
            if (cj == 0) continue;
            i64 at_upper = checked_mul(cj, bk.upper[j]);
            i64 at_lower = checked_mul(cj, bk.lower[j]);
            hi = checked_add(hi, std::max(at_upper, at_lower));
            lo = checked_add(lo, std::min(at_upper, at_lower));
        }
        col0 += bk.width();
    }
    i64 cmax = std::max(hi < 0 ? checked_neg(hi) : hi, lo < 0 ? checked_neg(lo) : lo);
    if (width <= 1 || cmax <= 1) return 0.0;
    return std::log2(static_cast<double>(width)) * std::log2(static_cast<double>(cmax));
}

namespace {

using nlohmann::json;

std::vector<i64> to_ivec(const json& j, const std::string& where) {
    if (!j.is_array()) throw invalid_input(where + " must be an array of integers");
    std::vector<i64> v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw invalid_input(where + " must contain only integers");
        v.push_back(e.get<i64>());
    }
    return v;
}

int_matrix to_matrix(const json& j, const std::string& where, std::size_t cols_hint) {
    if (!j.is_array()) throw invalid_input(where + " must be an array of rows");
    std::vector<std::vector<i64>> rows;
    for (const auto& row : j) rows.push_back(to_ivec(row, where + " row"));
    if (rows.empty()) return int_matrix(0, cols_hint);
    return int_matrix::from_rows(rows);
}

} // namespace

nfold_instance parse_instance_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("instance JSON parse error: ") + e.what());
    }
    nfold_instance inst;
    if (!doc.contains("objective") || !doc.contains("b_top") || !doc.contains("bricks"))
        throw invalid_input("instance JSON needs objective, b_top and bricks");
    const json& jo = doc["objective"];
    std::string kind = jo.value("kind", "");
    if (kind == "linear_max") {
        inst.obj.kind = objective_kind::linear_max;
        inst.obj.c = to_ivec(jo.at("c"), "objective.c");
    } else if (kind == "sep_convex_min") {
        inst.obj.kind = objective_kind::sep_convex_min;
        inst.obj.a = to_ivec(jo.at("a"), "objective.a");
        inst.obj.b = to_ivec(jo.at("b"), "objective.b");
        if (inst.obj.a.size() != inst.obj.b.size())
            throw invalid_input("objective.a and objective.b must have the same length");
    } else {
        throw invalid_input("objective.kind must be linear_max or sep_convex_min");
    }
    inst.b_top = to_ivec(doc["b_top"], "b_top");
    if (!doc["bricks"].is_array() || doc["bricks"].empty())
        throw invalid_input("bricks must be a non-empty array");
    for (const auto& jb : doc["bricks"]) {
        brick bk;
        bk.A = to_matrix(jb.at("A"), "brick.A", 0);
        std::size_t t = bk.A.cols();
        bk.B = to_matrix(jb.value("B", json::array()), "brick.B", t);
        bk.b_local = to_ivec(jb.value("b_local", json::array()), "brick.b_local");
        bk.lower = to_ivec(jb.at("lower"), "brick.lower");
        bk.upper = to_ivec(jb.at("upper"), "brick.upper");
        inst.bricks.push_back(std::move(bk));
    }
    inst.validate();
    return inst;
}

nfold_instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_json(ss.str());
}

std::string instance_to_json(const nfold_instance& inst) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json jo;
    if (inst.obj.kind == objective_kind::linear_max) {
        jo["kind"] = "linear_max";
        jo["c"] = inst.obj.c;
    } else {
        jo["kind"] = "sep_convex_min";
        jo["a"] = inst.obj.a;
        jo["b"] = inst.obj.b;
    }
    doc["objective"] = jo;
    doc["b_top"] = inst.b_top;
    doc["bricks"] = nlohmann::ordered_json::array();
    for (const auto& bk : inst.bricks) {
        nlohmann::ordered_json jb;
        auto mat = [](const int_matrix& m) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < m.rows(); ++i) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
                rows.push_back(row);
            }
            return rows;
        };
        jb["A"] = mat(bk.A);
        jb["B"] = mat(bk.B);
        jb["b_local"] = bk.b_local;
        jb["lower"] = bk.lower;
        jb["upper"] = bk.upper;
        doc["bricks"].push_back(jb);
    }
    return doc.dump();
}

} // namespace nfold
