#include "dabim/serialize.hpp"

#include <algorithm>
#include <fstream>

namespace dabim {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw SchemaError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

template <typename T>
T get(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    try {
        return v.get<T>();
    } catch (const Json::exception&) {
        fail(where + "." + key, "has the wrong type");
    }
}

Grading grading_from_json(const Json& j, std::size_t dim, const std::string& where) {
    if (!j.is_array() || j.size() != dim)
        fail(where, "grading must be an array of " + std::to_string(dim) + " integers (scaled by 4)");
    std::vector<std::int64_t> v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(where, "grading entries must be integers");
        v.push_back(x.get<std::int64_t>());
    }
    return Grading::from_scaled(std::move(v));
}

GradingHom hom_from_json(const Json& j, const std::string& where) {
    const auto rows = get<std::vector<std::vector<std::int64_t>>>(j, "matrix", where);
    if (rows.empty()) fail(where, "empty matrix");
    GradingHom h(get<std::string>(j, "name", where), rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != h.cols()) fail(where, "ragged matrix");
        for (std::size_t c = 0; c < h.cols(); ++c) h.set_entry(r, c, rows[r][c]);
    }
    return h;
}

template <typename F>
auto parsing(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

}  // namespace

Json grading_to_json(const Grading& g) { return Json(g.scaled_coords()); }

Json hom_to_json(const GradingHom& h) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < h.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < h.cols(); ++c) row.push_back(h.entry(r, c));
        rows.push_back(std::move(row));
    }
    return Json{{"name", h.name()}, {"matrix", std::move(rows)}};
}

Json algebra_to_json(const PresentedAlgebra& alg) {
    Json j;
    j["name"] = alg.name();
    j["vertices"] = alg.vertex_count();
    j["grading_dim"] = alg.grading_dim();
    j["vertex_notation"] = alg.vertex_notation();
    Json arrows = Json::array();
    for (const auto& a : alg.quiver().arrows())
        arrows.push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}, {"grading", grading_to_json(a.grading)}});
    j["arrows"] = std::move(arrows);
    Json rules = Json::array();
    for (const auto& r : alg.rules()) rules.push_back(alg.to_string(r.lhs) + " -> " + alg.to_string(r.rhs));
    j["rules"] = std::move(rules);
    Json named = Json::array();
    for (const auto& n : alg.named()) named.push_back({{"name", n.name}, {"element", alg.to_string(n.terms)}});
    j["named"] = std::move(named);
    return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
    const std::string where = "algebra";
    const auto name = get<std::string>(j, "name", where);
    const std::string at = where + " " + name;
    const int vertices = get<int>(j, "vertices", at);
    const auto dim = get<std::size_t>(j, "grading_dim", at);
    if (vertices < 1) fail(at + ".vertices", "must be positive");
    const bool vn = get<bool>(j, "vertex_notation", at);
    Quiver q(vertices, dim);
    const Json& arrows = field(j, "arrows", at);
    if (!arrows.is_array()) fail(at + ".arrows", "expected an array");
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const std::string aw = at + ".arrows[" + std::to_string(k) + "]";
        const auto& a = arrows[k];
        parsing(aw, [&] {
            return q.add_arrow(get<std::string>(a, "name", aw), get<int>(a, "source", aw), get<int>(a, "target", aw),
                               grading_from_json(field(a, "grading", aw), dim, aw + ".grading"));
        });
    }
    // paths are parsed against the bare quiver
    auto bare = parsing(at, [&] { return PresentedAlgebra::create(name, q, {}, {}, vn, true); });
    std::vector<RewriteRule> rules;
    const auto rule_strings = get<std::vector<std::string>>(j, "rules", at);
    for (std::size_t k = 0; k < rule_strings.size(); ++k) {
        const std::string rw = at + ".rules[" + std::to_string(k) + "]";
        const auto& s = rule_strings[k];
        auto arrow = s.find("->");
        if (arrow == std::string::npos) fail(rw, "expected \"lhs -> rhs\"");
        rules.push_back(parsing(rw, [&] {
            RewriteRule r;
            r.lhs = bare->parse_path(s.substr(0, arrow));
            std::string rhs = s.substr(arrow + 2);
            if (rhs.find_first_not_of(" 0") != std::string::npos) {
                for (auto& t : bare->parse_element(rhs)) r.rhs.push_back(t);
            }
            return r;
        }));
    }
    std::vector<NamedElement> named;
    const Json& nj = field(j, "named", at);
    if (!nj.is_array()) fail(at + ".named", "expected an array");
    for (std::size_t k = 0; k < nj.size(); ++k) {
        const std::string nw = at + ".named[" + std::to_string(k) + "]";
        named.push_back({get<std::string>(nj[k], "name", nw),
                         parsing(nw, [&] { return bare->parse_element(get<std::string>(nj[k], "element", nw)); })});
    }
    auto alg = parsing(at, [&] { return PresentedAlgebra::create(name, q, std::move(rules), std::move(named), vn); });
    auto report = check_confluence(*alg, 5);
    if (!report.confluent())
        fail(at + ".rules", "not confluent, the word " + alg->to_string(report.failures.front().word) +
                                " has two normal forms");
    return alg;
}

namespace {

struct ArrowRow {
    int from, to;
    std::vector<Path> in;
    Path out;
    bool operator<(const ArrowRow& o) const {
        if (from != o.from) return from < o.from;
        if (in != o.in) return std::lexicographical_compare(in.begin(), in.end(), o.in.begin(), o.in.end());
        if (to != o.to) return to < o.to;
        return out < o.out;
    }
};

}  // namespace

Json bimodule_to_json(const DABimodule& M) {
    const auto& O = *M.out_algebra();
    const auto& I = *M.in_algebra();
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "bimodule";
    j["name"] = M.name();
    Json algs = Json::array();
    algs.push_back(algebra_to_json(O));
    if (I.name() != O.name()) algs.push_back(algebra_to_json(I));
    j["algebras"] = std::move(algs);
    j["out_algebra"] = O.name();
    j["in_algebra"] = I.name();
    j["out_hom"] = hom_to_json(M.out_hom());
    j["in_hom"] = hom_to_json(M.in_hom());
    j["input_len_bound"] = M.input_len_bound() ? Json(*M.input_len_bound()) : Json(nullptr);
    Json nodes = Json::array();
    for (const auto& g : M.generators())
        nodes.push_back({{"name", g.name},
                         {"left_idem", g.left},
                         {"right_idem", g.right},
                         {"hom_degree", g.hom},
                         {"grading", grading_to_json(g.grading)}});
    j["nodes"] = std::move(nodes);
    std::vector<ArrowRow> rows;
    for (int x = 0; x < M.generator_count(); ++x)
        for (const auto& [in, sum] : M.table()[static_cast<std::size_t>(x)])
            for (const auto& t : sum) rows.push_back({x, t.gen, in, t.out});
    std::sort(rows.begin(), rows.end());
    Json arrows = Json::array();
    for (const auto& r : rows) {
        Json in = Json::array();
        for (const auto& p : r.in) in.push_back(I.to_string(p));
        arrows.push_back({{"from", M.generator(r.from).name},
                          {"to", M.generator(r.to).name},
                          {"out", O.to_string(r.out)},
                          {"in", std::move(in)}});
    }
    for (const auto& f : M.families()) {
        Json in = Json::array();
        int slot = -1;
        for (std::size_t s = 0; s < f.in.size(); ++s) {
            in.push_back(pattern_to_string(I, f.in[s]));
            if (slot < 0 && f.in[s].scaled) slot = static_cast<int>(s);
        }
        Json a{{"from", M.generator(f.from).name},
               {"to", M.generator(f.to).name},
               {"out", pattern_to_string(O, f.out)},
               {"in", std::move(in)},
               {"k_min", f.k_min}};
        a["k_slot"] = slot >= 0 ? Json(slot) : Json(nullptr);
        arrows.push_back(std::move(a));
    }
    j["arrows"] = std::move(arrows);
    return j;
}

BimodulePtr bimodule_from_json(const Json& j) {
    const std::string where = "bimodule";
    if (get<std::string>(j, "schema", where) != kSchemaVersion)
        fail(where + ".schema", std::string("expected ") + kSchemaVersion);
    if (get<std::string>(j, "kind", where) != "bimodule") fail(where + ".kind", "expected \"bimodule\"");
    const auto name = get<std::string>(j, "name", where);
    const std::string at = where + " " + name;
    std::map<std::string, AlgebraPtr> algs;
    const Json& aj = field(j, "algebras", at);
    if (!aj.is_array()) fail(at + ".algebras", "expected an array");
    for (const auto& a : aj) {
        auto alg = algebra_from_json(a);
        algs[alg->name()] = alg;
    }
    auto algebra = [&](const char* key) {
        auto n = get<std::string>(j, key, at);
        auto it = algs.find(n);
        if (it == algs.end()) fail(at + "." + key, "algebra " + n + " is not embedded");
        return it->second;
    };
    auto O = algebra("out_algebra");
    auto I = algebra("in_algebra");
    auto out_hom = hom_from_json(field(j, "out_hom", at), at + ".out_hom");
    auto in_hom = hom_from_json(field(j, "in_hom", at), at + ".in_hom");
    if (out_hom.cols() != O->grading_dim()) fail(at + ".out_hom", "does not act on the output algebra grading");
    if (in_hom.cols() != I->grading_dim()) fail(at + ".in_hom", "does not act on the input algebra grading");
    if (in_hom.rows() != out_hom.rows()) fail(at + ".in_hom", "lands in a different grading group than out_hom");
    auto M = std::make_shared<DABimodule>(name, O, I, out_hom, in_hom);
    const Json& bound = field(j, "input_len_bound", at);
    if (!bound.is_null()) {
        if (!bound.is_number_integer() || bound.get<std::int64_t>() < 0) fail(at + ".input_len_bound", "must be null or a non-negative integer");
        M->set_input_len_bound(bound.get<std::size_t>());
    }
    const Json& nodes = field(j, "nodes", at);
    if (!nodes.is_array()) fail(at + ".nodes", "expected an array");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::string nw = at + ".nodes[" + std::to_string(k) + "]";
        DAGenerator g;
        g.name = get<std::string>(nodes[k], "name", nw);
        g.left = get<int>(nodes[k], "left_idem", nw);
        g.right = get<int>(nodes[k], "right_idem", nw);
        g.hom = get<int>(nodes[k], "hom_degree", nw);
        g.grading = grading_from_json(field(nodes[k], "grading", nw), out_hom.rows(), nw + ".grading");
        if (g.left < 0 || g.left >= O->vertex_count()) fail(nw + ".left_idem", "not a vertex of " + O->name());
        if (g.right < 0 || g.right >= I->vertex_count()) fail(nw + ".right_idem", "not a vertex of " + I->name());
        if (M->find_generator(g.name)) fail(nw + ".name", "duplicate generator " + g.name);
        M->add_generator(std::move(g));
    }
    const Json& arrows = field(j, "arrows", at);
    if (!arrows.is_array()) fail(at + ".arrows", "expected an array");
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const auto& a = arrows[k];
        const std::string aw = at + ".arrows[" + std::to_string(k) + "]";
        auto gen = [&](const char* key) {
            auto n = get<std::string>(a, key, aw);
            auto x = M->find_generator(n);
            if (!x) fail(aw + "." + key, "unknown generator " + n);
            return *x;
        };
        const int from = gen("from"), to = gen("to");
        const auto out = get<std::string>(a, "out", aw);
        const auto in = get<std::vector<std::string>>(a, "in", aw);
        if (a.contains("k_min")) {
            ArrowFamily f{from, to, parsing(aw + ".out", [&] { return parse_pattern(*O, out); }), {},
                          get<int>(a, "k_min", aw)};
            for (std::size_t s = 0; s < in.size(); ++s)
                f.in.push_back(parsing(aw + ".in[" + std::to_string(s) + "]", [&] { return parse_pattern(*I, in[s]); }));
            const Json& slot = field(a, "k_slot", aw);
            if (!slot.is_null()) {
                if (!slot.is_number_integer() || slot.get<std::int64_t>() < 0 || slot.get<std::size_t>() >= f.in.size() ||
                    !f.in[slot.get<std::size_t>()].scaled)
                    fail(aw + ".k_slot", "does not point at an input carrying k");
            }
            parsing(aw, [&] {
                M->add_family(std::move(f));
                return 0;
            });
        } else {
            Path o = parsing(aw + ".out", [&] { return O->parse_path(out); });
            std::vector<Path> ins;
            for (std::size_t s = 0; s < in.size(); ++s)
                ins.push_back(parsing(aw + ".in[" + std::to_string(s) + "]", [&] { return I->parse_path(in[s]); }));
            for (std::size_t s = 0; s < ins.size(); ++s)
                if (!I->is_irreducible(ins[s])) fail(aw + ".in[" + std::to_string(s) + "]", "not in normal form");
            if (!O->is_irreducible(o)) fail(aw + ".out", "not in normal form");
            const auto& gf = M->generator(from);
            const auto& gt = M->generator(to);
            if (o.start != gf.left || o.end != gt.left)
                fail(aw, "output " + out + " does not run from the left idempotent of " + gf.name + " to that of " + gt.name);
            int v = gf.right;
            for (std::size_t s = 0; s < ins.size(); ++s) {
                if (ins[s].is_idempotent()) fail(aw + ".in[" + std::to_string(s) + "]", "idempotent input");
                if (ins[s].start != v) fail(aw + ".in[" + std::to_string(s) + "]", "input chain breaks at " + in[s]);
                v = ins[s].end;
            }
            if (v != gt.right) fail(aw, "inputs do not end at the right idempotent of " + gt.name);
            M->add_arrow(from, to, std::move(o), std::move(ins));
        }
    }
    if (auto p = M->check_idempotents(); !p.empty()) fail(at, p.front());
    if (auto p = M->check_gradings(4); !p.empty()) fail(at, p.front());
    return M;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

}  // namespace dabim
