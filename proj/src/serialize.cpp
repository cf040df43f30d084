#include "thomtwist/serialize.hpp"

#include <cstdio>
#include <memory>
#include <utility>

namespace tt {

namespace {

std::string at(const std::string& path, const char* key) { return path + "." + key; }
std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(at(path, key), "missing required field");
    return *it;
}

int as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

std::string as_str(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

const Json& as_arr(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

int need_int(const Json& j, const char* key, const std::string& path) {
    return as_int(need(j, key, path), at(path, key));
}

std::string need_str(const Json& j, const char* key, const std::string& path) {
    return as_str(need(j, key, path), at(path, key));
}

bool need_bool(const Json& j, const char* key, const std::string& path) {
    const Json& v = need(j, key, path);
    if (!v.is_boolean()) throw SchemaError(at(path, key), "expected a boolean");
    return v.get<bool>();
}

const Json& need_arr(const Json& j, const char* key, const std::string& path) {
    return as_arr(need(j, key, path), at(path, key));
}

void check_header(const Json& j, const char* kind, int format, const std::string& path) {
    int f = need_int(j, "format", path);
    if (f != format)
        throw SchemaError(at(path, "format"),
                          "unsupported format version " + std::to_string(f) + " (expected " +
                              std::to_string(format) + ")");
    std::string k = need_str(j, "kind", path);
    if (k != kind)
        throw SchemaError(at(path, "kind"), "expected \"" + std::string(kind) + "\", got \"" + k + "\"");
}

Json vec_json(const FpVec& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(static_cast<int>(x));
    return a;
}

FpVec vec_from(const Json& j, int p, const std::string& path) {
    const Json& a = as_arr(j, path);
    FpVec v(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        int c = as_int(a[i], idx(path, i));
        if (c < 0 || c >= p) throw SchemaError(idx(path, i), "coefficient out of range mod p");
        v[i] = static_cast<uint8_t>(c);
    }
    return v;
}

// Sparse matrix: [rows, cols, [[r, c, v], ...]].
Json mat_json(const FpMat& m) {
    Json entries = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) entries.push_back({r, c, m.get(r, c)});
    return Json::array({m.rows(), m.cols(), entries});
}

FpMat mat_from(const Json& j, int p, const std::string& path) {
    const Json& a = as_arr(j, path);
    if (a.size() != 3) throw SchemaError(path, "expected [rows, cols, entries]");
    int rows = as_int(a[0], idx(path, 0)), cols = as_int(a[1], idx(path, 1));
    if (rows < 0 || cols < 0) throw SchemaError(path, "negative matrix shape");
    FpMat m(p, rows, cols);
    const Json& es = as_arr(a[2], idx(path, 2));
    for (size_t k = 0; k < es.size(); ++k) {
        std::string ep = idx(idx(path, 2), k);
        const Json& e = as_arr(es[k], ep);
        if (e.size() != 3) throw SchemaError(ep, "expected [row, col, value]");
        int r = as_int(e[0], idx(ep, 0)), c = as_int(e[1], idx(ep, 1)), v = as_int(e[2], idx(ep, 2));
        if (r < 0 || r >= rows || c < 0 || c >= cols) throw SchemaError(ep, "entry out of bounds");
        if (v <= 0 || v >= p) throw SchemaError(idx(ep, 2), "value out of range mod p");
        m.set(r, c, v);
    }
    return m;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

// ----------------------------------------------------------------- algebra ---

Json algebra_to_json(const FiniteGradedAlgebra& a) {
    Json j;
    j["format"] = 1;
    j["kind"] = "algebra";
    j["name"] = a.name;
    j["prime"] = a.prime;
    j["top_degree"] = a.top_degree;
    j["complete"] = a.complete;
    j["basis"] = a.basis;
    Json gens = Json::array();
    for (const auto& g : a.generators) {
        Json gj;
        gj["name"] = g.name;
        gj["degree"] = g.degree;
        gj["elem"] = vec_json(g.elem);
        Json cp = Json::array();
        for (const auto& t : g.coproduct) cp.push_back({t.coeff, t.ldeg, t.lidx, t.rdeg, t.ridx});
        gj["coproduct"] = cp;
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    Json prods = Json::array();
    for (int d1 = 0; d1 <= a.top_degree; ++d1)
        for (int d2 = 0; d1 + d2 <= a.top_degree; ++d2)
            for (int i = 0; i < a.dim(d1); ++i)
                for (int k = 0; k < a.dim(d2); ++k) {
                    const FpVec& v = a.product(d1, i, d2, k);
                    if (!vec_is_zero(v)) prods.push_back({d1, d2, i, k, vec_json(v)});
                }
    j["products"] = std::move(prods);
    return j;
}

FiniteGradedAlgebra algebra_from_json(const Json& j) {
    const std::string P = "$";
    check_header(j, "algebra", 1, P);
    FiniteGradedAlgebra a;
    a.name = need_str(j, "name", P);
    a.prime = need_int(j, "prime", P);
    if (a.prime < 2) throw SchemaError(at(P, "prime"), "prime must be at least 2");
    a.top_degree = need_int(j, "top_degree", P);
    a.complete = need_bool(j, "complete", P);

    const Json& basis = need_arr(j, "basis", P);
    for (size_t d = 0; d < basis.size(); ++d) {
        const Json& row = as_arr(basis[d], idx(at(P, "basis"), d));
        std::vector<std::string> labels;
        for (size_t i = 0; i < row.size(); ++i)
            labels.push_back(as_str(row[i], idx(idx(at(P, "basis"), d), i)));
        a.basis.push_back(std::move(labels));
    }
    if (a.basis.empty() || a.basis[0] != std::vector<std::string>{"1"})
        throw SchemaError(at(P, "basis"), "degree 0 must be the unit basis [\"1\"]");

    const Json& gens = need_arr(j, "generators", P);
    for (size_t g = 0; g < gens.size(); ++g) {
        std::string gp = idx(at(P, "generators"), g);
        AlgebraGenerator ag;
        ag.name = need_str(gens[g], "name", gp);
        ag.degree = need_int(gens[g], "degree", gp);
        ag.elem = vec_from(need(gens[g], "elem", gp), a.prime, at(gp, "elem"));
        if (static_cast<int>(ag.elem.size()) != a.dim(ag.degree))
            throw SchemaError(at(gp, "elem"), "length differs from the basis dimension");
        const Json& cp = need_arr(gens[g], "coproduct", gp);
        for (size_t k = 0; k < cp.size(); ++k) {
            std::string tp = idx(at(gp, "coproduct"), k);
            const Json& t = as_arr(cp[k], tp);
            if (t.size() != 5) throw SchemaError(tp, "expected [coeff, ldeg, lidx, rdeg, ridx]");
            CoprodTerm term;
            term.coeff = as_int(t[0], idx(tp, 0));
            term.ldeg = as_int(t[1], idx(tp, 1));
            term.lidx = as_int(t[2], idx(tp, 2));
            term.rdeg = as_int(t[3], idx(tp, 3));
            term.ridx = as_int(t[4], idx(tp, 4));
            if (term.ldeg < 0 || term.lidx < 0 || term.lidx >= a.dim(term.ldeg) ||
                term.rdeg < 0 || term.ridx < 0 || term.ridx >= a.dim(term.rdeg))
                throw SchemaError(tp, "coproduct term indexes a missing basis element");
            ag.coproduct.push_back(term);
        }
        a.generators.push_back(std::move(ag));
    }

    a.products_.assign(a.top_degree + 1, {});
    for (int d1 = 0; d1 <= a.top_degree; ++d1) {
        a.products_[d1].assign(a.top_degree + 1, {});
        for (int d2 = 0; d1 + d2 <= a.top_degree; ++d2) {
            if (!a.dim(d1) || !a.dim(d2)) continue;
            a.products_[d1][d2].assign(static_cast<size_t>(a.dim(d1)) * a.dim(d2),
                                       FpVec(a.dim(d1 + d2), 0));
        }
    }
    const Json& prods = need_arr(j, "products", P);
    for (size_t k = 0; k < prods.size(); ++k) {
        std::string pp = idx(at(P, "products"), k);
        const Json& e = as_arr(prods[k], pp);
        if (e.size() != 5) throw SchemaError(pp, "expected [d1, d2, i, j, coeffs]");
        int d1 = as_int(e[0], idx(pp, 0)), d2 = as_int(e[1], idx(pp, 1));
        int i = as_int(e[2], idx(pp, 2)), jj = as_int(e[3], idx(pp, 3));
        if (d1 < 0 || d2 < 0 || d1 + d2 > a.top_degree)
            throw SchemaError(pp, "product degrees outside the table");
        if (i < 0 || i >= a.dim(d1) || jj < 0 || jj >= a.dim(d2))
            throw SchemaError(pp, "product factors index a missing basis element");
        FpVec v = vec_from(e[4], a.prime, idx(pp, 4));
        if (static_cast<int>(v.size()) != a.dim(d1 + d2))
            throw SchemaError(idx(pp, 4), "length differs from the target dimension");
        a.products_[d1][d2][static_cast<size_t>(i) * a.dim(d2) + jj] = std::move(v);
    }
    return a;
}

// ------------------------------------------------------------------ module ---

Json module_to_json(const GradedModule& m) {
    Json j;
    j["format"] = 1;
    j["kind"] = "module";
    j["algebra"] = algebra_to_json(*m.alg);
    j["truncation"] = m.truncation ? Json(*m.truncation) : Json(nullptr);
    Json labels = Json::array();
    for (const auto& [d, labs] : m.labels)
        if (!labs.empty()) labels.push_back({d, labs});
    j["labels"] = std::move(labels);
    Json actions = Json::array();
    for (const auto& per_gen : m.actions) {
        Json rows = Json::array();
        for (const auto& [d, mat] : per_gen) rows.push_back({d, mat_json(mat)});
        actions.push_back(std::move(rows));
    }
    j["actions"] = std::move(actions);
    return j;
}

GradedModule module_from_json(const Json& j) {
    const std::string P = "$";
    check_header(j, "module", 1, P);
    GradedModule m;
    m.alg = std::make_shared<FiniteGradedAlgebra>(algebra_from_json(need(j, "algebra", P)));
    const Json& tr = need(j, "truncation", P);
    if (tr.is_null())
        m.truncation.reset();
    else
        m.truncation = as_int(tr, at(P, "truncation"));

    const Json& labels = need_arr(j, "labels", P);
    for (size_t k = 0; k < labels.size(); ++k) {
        std::string lp = idx(at(P, "labels"), k);
        const Json& e = as_arr(labels[k], lp);
        if (e.size() != 2) throw SchemaError(lp, "expected [degree, [labels]]");
        int d = as_int(e[0], idx(lp, 0));
        if (d < 0) throw SchemaError(idx(lp, 0), "negative degree");
        const Json& labs = as_arr(e[1], idx(lp, 1));
        std::vector<std::string> out;
        for (size_t i = 0; i < labs.size(); ++i) out.push_back(as_str(labs[i], idx(idx(lp, 1), i)));
        if (out.empty()) throw SchemaError(idx(lp, 1), "empty label list");
        if (m.labels.count(d)) throw SchemaError(idx(lp, 0), "duplicate degree");
        m.labels[d] = std::move(out);
    }

    const Json& actions = need_arr(j, "actions", P);
    if (actions.size() != m.alg->generators.size())
        throw SchemaError(at(P, "actions"), "one entry per algebra generator required");
    m.actions.resize(actions.size());
    for (size_t g = 0; g < actions.size(); ++g) {
        std::string gp = idx(at(P, "actions"), g);
        const Json& rows = as_arr(actions[g], gp);
        int gd = m.alg->generators[g].degree;
        for (size_t k = 0; k < rows.size(); ++k) {
            std::string rp = idx(gp, k);
            const Json& e = as_arr(rows[k], rp);
            if (e.size() != 2) throw SchemaError(rp, "expected [degree, matrix]");
            int d = as_int(e[0], idx(rp, 0));
            FpMat mat = mat_from(e[1], m.alg->prime, idx(rp, 1));
            if (mat.cols() != m.dim(d) || mat.rows() != m.dim(d + gd))
                throw SchemaError(idx(rp, 1), "matrix shape disagrees with the labeled dimensions");
            if (m.actions[g].count(d)) throw SchemaError(idx(rp, 0), "duplicate degree");
            m.actions[g][d] = std::move(mat);
        }
    }
    return m;
}

uint64_t content_hash(const GradedModule& m) { return fnv1a(module_to_json(m).dump()); }

// -------------------------------------------------------------- resolution ---

Json resolution_to_json(const Resolution& r) {
    Json j;
    j["format"] = 1;
    j["kind"] = "resolution";
    j["s_max"] = r.s_max();
    j["t_max"] = r.t_max();
    j["content_hash"] = hex64(content_hash(r.module()));
    Json stages = Json::array();
    for (int s = 0; s <= r.s_max(); ++s) {
        Json gens = Json::array();
        for (const auto& g : r.stage(s)) gens.push_back({g.t, g.label});
        stages.push_back(Json{{"s", s}, {"generators", std::move(gens)}});
    }
    j["stages"] = std::move(stages);
    // Stage-0 images in the module: (row = module basis index, col = generator,
    // basis-index slot unused, coeff).
    Json d0 = Json::array();
    for (int gi = 0; gi < static_cast<int>(r.stage(0).size()); ++gi) {
        const FpVec& v = r.diff0(gi);
        for (size_t row = 0; row < v.size(); ++row)
            if (v[row]) d0.push_back({static_cast<int>(row), gi, 0, static_cast<int>(v[row])});
    }
    j["diff0"] = std::move(d0);
    // Higher differentials: (row = target generator, col = source generator,
    // algebra basis index, coeff); the acting degree is the degree difference.
    Json diffs = Json::array();
    for (int s = 1; s <= r.s_max(); ++s) {
        Json entries = Json::array();
        for (int gi = 0; gi < static_cast<int>(r.stage(s).size()); ++gi)
            for (const auto& [key, c] : r.diff(s, gi))
                entries.push_back({key.gi, gi, key.bi, c});
        diffs.push_back(Json{{"s", s}, {"entries", std::move(entries)}});
    }
    j["diff"] = std::move(diffs);
    return j;
}

ResolutionData resolution_data_from_json(const Json& j, const GradedModule& m) {
    const std::string P = "$";
    check_header(j, "resolution", 1, P);
    std::string stored = need_str(j, "content_hash", P);
    std::string expected = hex64(content_hash(m));
    if (stored != expected)
        throw SchemaError(at(P, "content_hash"),
                          "save belongs to a different algebra/module (stored " + stored +
                              ", input " + expected + ")");
    ResolutionData data;
    data.s_max = need_int(j, "s_max", P);
    data.t_max = need_int(j, "t_max", P);
    if (data.s_max < 0 || data.t_max < 0) throw SchemaError(P, "negative window");

    const Json& stages = need_arr(j, "stages", P);
    if (static_cast<int>(stages.size()) != data.s_max + 1)
        throw SchemaError(at(P, "stages"), "expected one entry per stage 0..s_max");
    data.gens.resize(data.s_max + 1);
    for (size_t k = 0; k < stages.size(); ++k) {
        std::string sp = idx(at(P, "stages"), k);
        int s = need_int(stages[k], "s", sp);
        if (s != static_cast<int>(k)) throw SchemaError(at(sp, "s"), "stages must be in order");
        const Json& gens = need_arr(stages[k], "generators", sp);
        for (size_t g = 0; g < gens.size(); ++g) {
            std::string gp = idx(at(sp, "generators"), g);
            const Json& e = as_arr(gens[g], gp);
            if (e.size() != 2) throw SchemaError(gp, "expected [degree, label]");
            FreeGenerator fg;
            fg.t = as_int(e[0], idx(gp, 0));
            fg.label = as_str(e[1], idx(gp, 1));
            if (fg.t < 0 || fg.t > data.t_max) throw SchemaError(idx(gp, 0), "degree outside the window");
            data.gens[s].push_back(std::move(fg));
        }
    }

    const int p = m.prime();
    data.diff0.assign(data.gens[0].size(), FpVec());
    for (size_t g = 0; g < data.gens[0].size(); ++g)
        data.diff0[g] = FpVec(m.dim(data.gens[0][g].t), 0);
    const Json& d0 = need_arr(j, "diff0", P);
    for (size_t k = 0; k < d0.size(); ++k) {
        std::string ep = idx(at(P, "diff0"), k);
        const Json& e = as_arr(d0[k], ep);
        if (e.size() != 4) throw SchemaError(ep, "expected [row, col, 0, coeff]");
        int row = as_int(e[0], idx(ep, 0)), col = as_int(e[1], idx(ep, 1));
        int c = as_int(e[3], idx(ep, 3));
        if (col < 0 || col >= static_cast<int>(data.diff0.size()))
            throw SchemaError(idx(ep, 1), "no such stage-0 generator");
        if (row < 0 || row >= static_cast<int>(data.diff0[col].size()))
            throw SchemaError(idx(ep, 0), "module basis index out of range");
        if (c <= 0 || c >= p) throw SchemaError(idx(ep, 3), "coefficient out of range mod p");
        data.diff0[col][row] = static_cast<uint8_t>(c);
    }

    data.diff.resize(data.s_max + 1);
    for (int s = 1; s <= data.s_max; ++s) data.diff[s].resize(data.gens[s].size());
    const Json& diffs = need_arr(j, "diff", P);
    if (static_cast<int>(diffs.size()) != data.s_max)
        throw SchemaError(at(P, "diff"), "expected one entry per stage 1..s_max");
    for (size_t k = 0; k < diffs.size(); ++k) {
        std::string sp = idx(at(P, "diff"), k);
        int s = need_int(diffs[k], "s", sp);
        if (s != static_cast<int>(k) + 1) throw SchemaError(at(sp, "s"), "stages must be in order");
        const Json& entries = need_arr(diffs[k], "entries", sp);
        for (size_t ei = 0; ei < entries.size(); ++ei) {
            std::string ep = idx(at(sp, "entries"), ei);
            const Json& e = as_arr(entries[ei], ep);
            if (e.size() != 4) throw SchemaError(ep, "expected [row, col, basis-index, coeff]");
            int row = as_int(e[0], idx(ep, 0)), col = as_int(e[1], idx(ep, 1));
            int bi = as_int(e[2], idx(ep, 2)), c = as_int(e[3], idx(ep, 3));
            if (col < 0 || col >= static_cast<int>(data.gens[s].size()))
                throw SchemaError(idx(ep, 1), "no such source generator");
            if (row < 0 || row >= static_cast<int>(data.gens[s - 1].size()))
                throw SchemaError(idx(ep, 0), "no such target generator");
            int bd = data.gens[s][col].t - data.gens[s - 1][row].t;
            if (bd < 0 || bi < 0 || bi >= m.alg->dim(bd))
                throw SchemaError(idx(ep, 2), "no algebra basis element with the implied degree");
            if (c <= 0 || c >= p) throw SchemaError(idx(ep, 3), "coefficient out of range mod p");
            data.diff[s][col][{row, bd, bi}] = c;
        }
    }
    return data;
}

// ------------------------------------------------------------------- chart ---

Json chart_to_json(const ExtChart& c) {
    Json j;
    j["format"] = 1;
    j["kind"] = "chart";
    j["prime"] = c.prime;
    j["s_max"] = c.s_max;
    j["t_max"] = c.t_max;
    Json ranks = Json::array();
    for (const auto& [cell, r] : c.ranks)
        if (r) ranks.push_back({cell.first, cell.second, r});
    j["ranks"] = std::move(ranks);
    Json edges = Json::array();
    for (const auto& e : c.edges) edges.push_back({e.cls, e.s, e.t, e.i, e.s2, e.t2, e.i2});
    j["edges"] = std::move(edges);
    return j;
}

ExtChart chart_from_json(const Json& j) {
    const std::string P = "$";
    check_header(j, "chart", 1, P);
    ExtChart c;
    c.prime = need_int(j, "prime", P);
    c.s_max = need_int(j, "s_max", P);
    c.t_max = need_int(j, "t_max", P);
    const Json& ranks = need_arr(j, "ranks", P);
    for (size_t k = 0; k < ranks.size(); ++k) {
        std::string rp = idx(at(P, "ranks"), k);
        const Json& e = as_arr(ranks[k], rp);
        if (e.size() != 3) throw SchemaError(rp, "expected [s, t, rank]");
        int s = as_int(e[0], idx(rp, 0)), t = as_int(e[1], idx(rp, 1)), r = as_int(e[2], idx(rp, 2));
        if (r <= 0) throw SchemaError(idx(rp, 2), "rank must be positive");
        if (s < 0 || s > c.s_max || t < 0 || t > c.t_max)
            throw SchemaError(rp, "cell outside the window");
        c.ranks[{s, t}] = r;
    }
    const Json& edges = need_arr(j, "edges", P);
    for (size_t k = 0; k < edges.size(); ++k) {
        std::string ep = idx(at(P, "edges"), k);
        const Json& e = as_arr(edges[k], ep);
        if (e.size() != 7) throw SchemaError(ep, "expected [class, s, t, i, s2, t2, i2]");
        ProductEdge pe;
        pe.cls = as_str(e[0], idx(ep, 0));
        pe.s = as_int(e[1], idx(ep, 1));
        pe.t = as_int(e[2], idx(ep, 2));
        pe.i = as_int(e[3], idx(ep, 3));
        pe.s2 = as_int(e[4], idx(ep, 4));
        pe.t2 = as_int(e[5], idx(ep, 5));
        pe.i2 = as_int(e[6], idx(ep, 6));
        if (pe.i < 0 || pe.i >= c.rank(pe.s, pe.t) || pe.i2 < 0 || pe.i2 >= c.rank(pe.s2, pe.t2))
            throw SchemaError(ep, "edge endpoint indexes a missing rank unit");
        c.edges.push_back(std::move(pe));
    }
    return c;
}

// -------------------------------------------------------------- cohomology ---

Json cohomology_to_json(const CohomologyPresentation& p) {
    Json j;
    j["format"] = 1;
    j["kind"] = "cohomology";
    j["name"] = p.name;
    j["prime"] = p.prime;
    j["top_degree"] = p.D;
    j["complete"] = p.complete;
    Json labels = Json::array();
    for (const auto& [d, labs] : p.labels)
        if (!labs.empty()) labels.push_back({d, labs});
    j["labels"] = std::move(labels);
    Json prods = Json::array();
    for (const auto& [degs, cell] : p.products) {
        auto [d1, d2] = degs;
        for (int i = 0; i < p.dim(d1); ++i)
            for (int k = 0; k < p.dim(d2); ++k) {
                const FpVec& v = cell[static_cast<size_t>(i) * p.dim(d2) + k];
                if (!vec_is_zero(v)) prods.push_back({d1, d2, i, k, vec_json(v)});
            }
    }
    j["products"] = std::move(prods);
    if (p.prime == 2) {
        Json sq = Json::array();
        for (int k = 1; k <= 4; ++k)
            for (const auto& [d, mat] : p.sq[k])
                if (!mat.is_zero()) sq.push_back({k, d, mat_json(mat)});
        j["sq"] = std::move(sq);
    } else {
        Json beta = Json::array(), p1 = Json::array();
        for (const auto& [d, mat] : p.beta_mats)
            if (!mat.is_zero()) beta.push_back({d, mat_json(mat)});
        for (const auto& [d, mat] : p.p1_mats)
            if (!mat.is_zero()) p1.push_back({d, mat_json(mat)});
        j["beta"] = std::move(beta);
        j["p1"] = std::move(p1);
    }
    return j;
}

CohomologyPresentation cohomology_from_json(const Json& j) {
    const std::string P = "$";
    check_header(j, "cohomology", 1, P);
    CohomologyPresentation p;
    p.name = need_str(j, "name", P);
    p.prime = need_int(j, "prime", P);
    if (p.prime < 2) throw SchemaError(at(P, "prime"), "prime must be at least 2");
    p.D = need_int(j, "top_degree", P);
    p.complete = need_bool(j, "complete", P);

    const Json& labels = need_arr(j, "labels", P);
    for (size_t k = 0; k < labels.size(); ++k) {
        std::string lp = idx(at(P, "labels"), k);
        const Json& e = as_arr(labels[k], lp);
        if (e.size() != 2) throw SchemaError(lp, "expected [degree, [labels]]");
        int d = as_int(e[0], idx(lp, 0));
        if (d < 0 || d > p.D) throw SchemaError(idx(lp, 0), "degree outside the window");
        const Json& labs = as_arr(e[1], idx(lp, 1));
        std::vector<std::string> out;
        for (size_t i = 0; i < labs.size(); ++i) out.push_back(as_str(labs[i], idx(idx(lp, 1), i)));
        if (p.labels.count(d)) throw SchemaError(idx(lp, 0), "duplicate degree");
        p.labels[d] = std::move(out);
    }
    if (p.dim(0) != 1) throw SchemaError(at(P, "labels"), "degree 0 must have exactly the unit");

    const Json& prods = need_arr(j, "products", P);
    for (size_t k = 0; k < prods.size(); ++k) {
        std::string pp = idx(at(P, "products"), k);
        const Json& e = as_arr(prods[k], pp);
        if (e.size() != 5) throw SchemaError(pp, "expected [d1, d2, i, j, coeffs]");
        int d1 = as_int(e[0], idx(pp, 0)), d2 = as_int(e[1], idx(pp, 1));
        int i = as_int(e[2], idx(pp, 2)), jj = as_int(e[3], idx(pp, 3));
        if (d1 < 0 || d2 < 0 || d1 + d2 > p.D)
            throw SchemaError(pp, "product degrees outside the table");
        if (i < 0 || i >= p.dim(d1) || jj < 0 || jj >= p.dim(d2))
            throw SchemaError(pp, "product factors index a missing basis element");
        FpVec v = vec_from(e[4], p.prime, idx(pp, 4));
        if (static_cast<int>(v.size()) != p.dim(d1 + d2))
            throw SchemaError(idx(pp, 4), "length differs from the target dimension");
        auto& cell = p.products[{d1, d2}];
        if (cell.empty()) cell.assign(static_cast<size_t>(p.dim(d1)) * p.dim(d2),
                                      FpVec(p.dim(d1 + d2), 0));
        cell[static_cast<size_t>(i) * p.dim(d2) + jj] = std::move(v);
    }
    // Materialize the remaining (possibly all-zero) cells for stored degrees.
    for (const auto& [d, labs] : p.labels)
        for (const auto& [d2, labs2] : p.labels) {
            (void)labs;
            (void)labs2;
            if (d + d2 > p.D) continue;
            auto& cell = p.products[{d, d2}];
            if (cell.empty())
                cell.assign(static_cast<size_t>(p.dim(d)) * p.dim(d2), FpVec(p.dim(d + d2), 0));
        }

    if (p.prime == 2) {
        const Json& sq = need_arr(j, "sq", P);
        for (size_t k = 0; k < sq.size(); ++k) {
            std::string sp = idx(at(P, "sq"), k);
            const Json& e = as_arr(sq[k], sp);
            if (e.size() != 3) throw SchemaError(sp, "expected [k, degree, matrix]");
            int op = as_int(e[0], idx(sp, 0)), d = as_int(e[1], idx(sp, 1));
            if (op < 1 || op > 4) throw SchemaError(idx(sp, 0), "operation index must be 1..4");
            FpMat mat = mat_from(e[2], p.prime, idx(sp, 2));
            if (d < 0 || d + op > p.D) throw SchemaError(idx(sp, 1), "degree outside the window");
            if (mat.cols() != p.dim(d) || mat.rows() != p.dim(d + op))
                throw SchemaError(idx(sp, 2), "matrix shape disagrees with the labeled dimensions");
            p.sq[op][d] = std::move(mat);
        }
    } else {
        auto load_ops = [&](const char* key, int shift, std::map<int, FpMat>& into) {
            const Json& arr = need_arr(j, key, P);
            for (size_t k = 0; k < arr.size(); ++k) {
                std::string sp = idx(at(P, key), k);
                const Json& e = as_arr(arr[k], sp);
                if (e.size() != 2) throw SchemaError(sp, "expected [degree, matrix]");
                int d = as_int(e[0], idx(sp, 0));
                FpMat mat = mat_from(e[1], p.prime, idx(sp, 1));
                if (d < 0 || d + shift > p.D) throw SchemaError(idx(sp, 0), "degree outside the window");
                if (mat.cols() != p.dim(d) || mat.rows() != p.dim(d + shift))
                    throw SchemaError(idx(sp, 1),
                                      "matrix shape disagrees with the labeled dimensions");
                into[d] = std::move(mat);
            }
        };
        load_ops("beta", 1, p.beta_mats);
        load_ops("p1", 2 * (p.prime - 1), p.p1_mats);
    }
    return p;
}

// ------------------------------------------------------------------- twist ---

Json twist_to_json(const TwistData& t) {
    Json j;
    j["target"] = t.target;
    Json classes = Json::object();
    for (const auto& [name, cls] : t.classes)
        classes[name] = Json{{"degree", cls.degree}, {"coords", vec_json(cls.coords)}};
    j["classes"] = std::move(classes);
    return j;
}

TwistData twist_from_json(const Json& j, const CohomologyPresentation& pres) {
    const std::string P = "$.twist";
    TwistData t;
    t.target = need_str(j, "target", P);
    const Json& classes = need(j, "classes", P);
    if (!classes.is_object()) throw SchemaError(at(P, "classes"), "expected an object");
    for (const auto& [name, cj] : classes.items()) {
        std::string cp = at(P, "classes") + "." + name;
        CohClass cls;
        cls.degree = need_int(cj, "degree", cp);
        cls.coords = vec_from(need(cj, "coords", cp), pres.prime, at(cp, "coords"));
        if (cls.degree < 0 || cls.degree > pres.D)
            throw SchemaError(at(cp, "degree"), "degree outside the presentation window");
        if (static_cast<int>(cls.coords.size()) != pres.dim(cls.degree))
            throw SchemaError(at(cp, "coords"), "length differs from the basis dimension");
        t.classes[name] = std::move(cls);
    }
    return t;
}

}  // namespace tt
