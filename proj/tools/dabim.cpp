#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dabim/checks.hpp"
#include "dabim/serialize.hpp"

using namespace dabim;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
    int m = 3;
    int i = 1;
    std::string sign = "pos";
    std::size_t maxlen = 8;
    std::size_t max_inputs = 3;
    std::size_t basis_len = 4;
    int k_max = 4;
    std::size_t depth_limit = 16;
    std::string format = "text";
    std::string out;

    VerifyBounds bounds() const { return {max_inputs, basis_len, k_max}; }
};

struct Report {
    std::string command;
    Json parameters = Json::object();
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    Json extra = Json::object();

    bool pass() const { return all_pass(checks); }

    std::string render(const std::string& format) const {
        if (format == "json") {
            Json j;
            j["command"] = command;
            j["parameters"] = parameters;
            Json cs = Json::array();
            for (const auto& c : checks) cs.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            j["checks"] = std::move(cs);
            if (!notes.empty()) j["notes"] = notes;
            for (const auto& [k, v] : extra.items()) j[k] = v;
            j["pass"] = pass();
            return j.dump(2) + "\n";
        }
        std::ostringstream os;
        os << command;
        for (const auto& [k, v] : parameters.items()) os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        os << "\n";
        for (const auto& c : checks) {
            os << (c.pass ? "PASS  " : "FAIL  ") << c.name;
            if (!c.detail.empty()) os << ": " << c.detail;
            os << "\n";
        }
        for (const auto& n : notes) os << n << "\n";
        os << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
        return os.str();
    }
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot write " + out);
    f << text;
}

int finish(const Report& r, const Common& c) {
    emit(r.render(c.format), c.out);
    return r.pass() ? kExitPass : kExitFail;
}

Json bounds_json(const Common& c) {
    return {{"max_inputs", c.max_inputs}, {"basis_len", c.basis_len}, {"k_max", c.k_max}};
}

void add_bounds(CLI::App* cmd, Common& c) {
    cmd->add_option("--max-inputs", c.max_inputs, "Longest input sequence in structure checks")->capture_default_str();
    cmd->add_option("--basis-len", c.basis_len, "Longest input path in structure checks")->capture_default_str();
    cmd->add_option("--k-max", c.k_max, "Largest power instantiated in family checks")->capture_default_str();
}

void add_index(CLI::App* cmd, Common& c) {
    cmd->add_option("--i", c.i, "Crossing index, 1 <= i <= m-1")->capture_default_str();
    cmd->add_option("--sign", c.sign, "Crossing sign")->check(CLI::IsMember({"pos", "neg"}))->capture_default_str();
}

std::string word_string(const std::vector<int>& w) {
    std::string s;
    for (int c : w) s += (s.empty() ? "" : " ") + std::to_string(c);
    return s;
}

Json counts_json(const DABimodule& M) {
    Json a = Json::array();
    for (const auto& [k, n] : graded_counts(M)) a.push_back({{"hom", k.first}, {"grading", k.second}, {"count", n}});
    return a;
}

std::string counts_text(const DABimodule& M) {
    std::string s;
    for (const auto& [k, n] : graded_counts(M))
        s += (s.empty() ? "" : ", ") + std::to_string(n) + " at (" + std::to_string(k.first) + ", " +
             std::to_string(k.second) + ")";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path algebras and DA bimodules over GF(2)"};
    app.require_subcommand(1);
    Common c;
    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--m", c.m, "Number of strands")->capture_default_str();
        cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        cmd->add_option("--out", c.out, "Write to this file instead of standard output");
    };

    std::string alg_name;
    auto* va = app.add_subcommand("verify-algebra", "Check a presented algebra; for Clbot also the kernel of the map to KS");
    common(va);
    va->add_option("--name", alg_name, "KS, B, Cl or Clbot")->required()->check(CLI::IsMember({"KS", "B", "Cl", "Clbot"}));
    va->add_option("--maxlen", c.maxlen, "Path length bound")->capture_default_str();

    std::string object = "twist";
    auto* vb = app.add_subcommand("verify-bimodule", "Check idempotents, gradings and the structure relation of a bimodule");
    common(vb);
    add_index(vb, c);
    add_bounds(vb, c);
    vb->add_option("--object", object, "twist, crossing, restricted-twist, reduced-twist or induced-crossing")
        ->capture_default_str();
    vb->add_option("--maxlen", c.maxlen, "Output path length bound for A box M")->capture_default_str();

    auto* vt = app.add_subcommand("verify-theorem2",
                                  "Check that the restricted twist and the induced crossing bimodule are equivalent");
    common(vt);
    add_index(vt, c);
    add_bounds(vt, c);

    std::string word, compare, flavor = "KS";
    bool do_reduce = false;
    auto* br = app.add_subcommand("braid", "Box tensor the crossing bimodules of a braid word");
    common(br);
    add_bounds(br, c);
    br->add_option("--word", word, "Letters such as \"1 -2 1\"")->required();
    br->add_option("--flavor", flavor, "KS or OSz")->check(CLI::IsMember({"KS", "OSz"}))->capture_default_str();
    br->add_flag("--reduce", do_reduce, "Cancel unit arrows in the result");
    br->add_option("--compare", compare, "Second word; search for an isomorphism with the first");
    br->add_option("--depth-limit", c.depth_limit, "Longest chain followed in a box tensor product")->capture_default_str();

    auto* dump = app.add_subcommand("dump", "Write a bimodule or algebra as JSON");
    dump->add_option("--m", c.m, "Number of strands")->capture_default_str();
    dump->add_option("--out", c.out, "Output file");
    add_index(dump, c);
    dump->add_option("--object", object, "Bimodule to write")->capture_default_str();
    dump->add_option("--algebra", alg_name, "Write this algebra instead (KS, B, Cl, Clbot)");

    std::string path;
    auto* load = app.add_subcommand("load", "Read a bimodule file, re-validate it and run the structure checks");
    load->add_option("path", path, "JSON file")->required();
    load->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    load->add_option("--out", c.out, "Write the report to this file");
    add_bounds(load, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c.m < 2) throw std::invalid_argument("--m must be at least 2");
        Report r;
        if (va->parsed()) {
            r.command = "verify-algebra";
            r.parameters = {{"name", alg_name}, {"m", c.m}, {"maxlen", c.maxlen}};
            r.checks = algebra_checks(alg_name, c.m, c.maxlen);
            return finish(r, c);
        }
        if (vb->parsed()) {
            auto kind = parse_object(object);
            auto M = build_object(kind, c.m, c.i, parse_sign(c.sign));
            r.command = "verify-bimodule";
            r.parameters = {{"object", object}, {"m", c.m}, {"i", c.i}, {"sign", c.sign}, {"bounds", bounds_json(c)}};
            r.checks = bimodule_checks(*M, c.bounds(), c.maxlen);
            r.notes.push_back("all checks are bounded by the parameters above");
            return finish(r, c);
        }
        if (vt->parsed()) {
            r.command = "verify-theorem2";
            r.parameters = {{"m", c.m}, {"i", c.i}, {"sign", c.sign}, {"bounds", bounds_json(c)}};
            r.checks = equivalence_checks(c.m, c.i, parse_sign(c.sign), c.bounds());
            return finish(r, c);
        }
        if (br->parsed()) {
            BraidOptions opt;
            opt.flavor = parse_flavor(flavor);
            opt.reduce = do_reduce;
            opt.depth_limit = c.depth_limit;
            opt.input_bound = c.basis_len;
            auto w = parse_braid_word(word, c.m);
            auto M = braid_bimodule(c.m, w, opt);
            r.command = "braid";
            r.parameters = {{"m", c.m}, {"word", word_string(w)}, {"flavor", flavor}, {"reduce", do_reduce},
                            {"depth_limit", c.depth_limit}};
            if (opt.flavor == Flavor::OSz) r.parameters["input_bound"] = c.basis_len;
            r.checks.push_back({"product", true,
                                std::to_string(M->generator_count()) + " generators, " +
                                    std::to_string(M->concrete_term_count()) + " arrows"});
            r.notes.push_back("generators by (homological degree, collapsed grading): " + counts_text(*M));
            if (opt.flavor == Flavor::OSz) r.notes.push_back("Alexander shift: " + alexander_shift(c.m, w).to_string());
            r.extra["counts"] = counts_json(*M);
            if (!compare.empty()) {
                auto w2 = parse_braid_word(compare, c.m);
                auto M2 = braid_bimodule(c.m, w2, opt);
                auto iso = find_isomorphism(*M, *M2, 1000000);
                std::string d = iso.found              ? "isomorphic after " + std::to_string(iso.tried) + " trials"
                                : iso.budget_exhausted ? "not found within budget"
                                                       : "no generator bijection matches the arrow tables";
                r.checks.push_back({"isomorphic to " + word_string(w2), iso.found, d});
                r.extra["compare_counts"] = counts_json(*M2);
            }
            r.notes.push_back("braid composition is a property check, not a claim of the source");
            if (c.format == "json") r.extra["result"] = bimodule_to_json(*M);
            return finish(r, c);
        }
        if (dump->parsed()) {
            Json j;
            if (!alg_name.empty()) {
                j = algebra_to_json(*build_algebra(alg_name, c.m));
                j = Json{{"schema", kSchemaVersion}, {"kind", "algebra"}, {"algebra", j}};
            } else {
                j = bimodule_to_json(*build_object(parse_object(object), c.m, c.i, parse_sign(c.sign)));
            }
            emit(j.dump(2) + "\n", c.out);
            return kExitPass;
        }
        if (load->parsed()) {
            auto j = load_json_file(path);
            auto M = bimodule_from_json(j);
            r.command = "load";
            r.parameters = {{"path", path}, {"bounds", bounds_json(c)}};
            r.checks.push_back({"schema", true, M->name() + ": " + std::to_string(M->generator_count()) + " generators"});
            const Json again = bimodule_to_json(*M);
            r.checks.push_back({"round trip", bimodule_to_json(*bimodule_from_json(again)) == again,
                                "dump and reload give the same file"});
            auto more = bimodule_checks(*M, c.bounds(), 4);
            r.checks.insert(r.checks.end(), more.begin(), more.end());
            return finish(r, c);
        }
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
