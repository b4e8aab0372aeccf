#include "dabim/checks.hpp"

#include <algorithm>
#include <sstream>

namespace dabim {

bool all_pass(const std::vector<CheckResult>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult from_problems(std::string name, const std::vector<std::string>& problems, std::string ok_detail) {
    if (problems.empty()) return {std::move(name), true, std::move(ok_detail)};
    std::string d = problems.front();
    if (problems.size() > 1) d += " (and " + std::to_string(problems.size() - 1) + " more)";
    return {std::move(name), false, d};
}

CheckResult from_report(std::string name, const DABimodule& target, const StructureReport& r) {
    std::string bounds = std::to_string(r.sequences_checked) + " input sequences, pool length " +
                         std::to_string(r.pool_len) + (r.clamped ? " (clamped to the table bound)" : "");
    if (r.pass()) return {std::move(name), true, bounds};
    return {std::move(name), false,
            std::to_string(r.failure_count) + " failures, first: " + describe_failure(target, r.failures.front())};
}

std::string sum_string(const PresentedAlgebra& A, const std::vector<Path>& s) { return A.to_string(s); }

}  // namespace

AlgebraPtr build_algebra(const std::string& name, int m) {
    if (name == "KS") return ks_algebra(m);
    if (name == "B") return b_algebra(m);
    if (name == "Cl") return cl_algebra(m);
    if (name == "Clbot") return cl_bottom_algebra(m);
    throw std::invalid_argument("unknown algebra " + name + " (expected KS, B, Cl or Clbot)");
}

std::vector<CheckResult> kernel_checks(int m, std::size_t maxlen) {
    std::vector<CheckResult> out;
    const auto& fam = algebras(m);
    const auto& C = *fam.cl_bot;
    const auto sum = central_sum(C, m);
    auto describe = [](const KernelIdealReport& r) {
        std::ostringstream os;
        os << "degrees 0.." << r.max_complete_degree << ", kernel dims";
        for (const auto& d : r.per_degree) os << ' ' << d.dim_kernel;
        return os.str();
    };
    auto first_bad = [](const KernelIdealReport& r) {
        for (const auto& d : r.per_degree)
            if (!d.equal)
                return "degree " + std::to_string(d.degree) + ": kernel " + std::to_string(d.dim_kernel) + ", ideal " +
                       std::to_string(d.dim_ideal);
        return std::string("no complete degree");
    };
    auto rep = compare_kernel_with_ideal(*fam.phi, {sum}, maxlen);
    out.push_back({"kernel equals the ideal of U_1 + ... + U_m", rep.pass(), rep.pass() ? describe(rep) : first_bad(rep)});

    auto pieces = central_sum_pieces(C, m);
    std::vector<Path> total;
    bool corners = pieces.size() == static_cast<std::size_t>(m);
    for (int v = 0; v < m && corners; ++v) {
        const auto& p = pieces[static_cast<std::size_t>(v)];
        auto e = std::vector<Path>{Path::idempotent(v)};
        corners = C.multiply(C.multiply(e, sum), e) == p;
        total.insert(total.end(), p.begin(), p.end());
    }
    corners = corners && C.normal_form(total) == sum;
    out.push_back({"the vertex pieces of the sum add up to it", corners, std::to_string(pieces.size()) + " pieces"});
    auto rep2 = compare_kernel_with_ideal(*fam.phi, pieces, maxlen);
    out.push_back({"kernel equals the ideal of the vertex pieces", rep2.pass(), rep2.pass() ? describe(rep2) : first_bad(rep2)});

    std::string bad;
    int checked = 0;
    for (int j = 1; j <= m && bad.empty(); ++j) {
        const int u = C.named_index("U" + std::to_string(j)).value();
        for (int v : {j - 1, j}) {
            if (v >= m) continue;
            auto sq = C.named_power_at(u, v, 2);
            if (!sq) continue;
            ++checked;
            auto in = ideal_contains(C, {sum}, {*sq}, maxlen);
            if (in != std::optional<bool>(true)) {
                bad = "U" + std::to_string(j) + "^2 at " + std::to_string(v) + (in ? " is not in the ideal" : " undecided");
                break;
            }
        }
    }
    out.push_back({"each U_j^2 lies in the ideal", bad.empty(), bad.empty() ? std::to_string(checked) + " corners" : bad});
    return out;
}

std::vector<CheckResult> algebra_checks(const std::string& name, int m, std::size_t maxlen) {
    std::vector<CheckResult> out;
    auto alg = build_algebra(name, m);
    const auto& A = *alg;
    auto basis = A.basis(maxlen);
    out.push_back({"basis", true, std::to_string(basis.size()) + " paths of length <= " + std::to_string(maxlen)});

    auto conf = check_confluence(A, std::min<std::size_t>(maxlen, 8));
    std::string cdetail = std::to_string(conf.pairs_checked) + " overlaps";
    if (!conf.confluent()) {
        const auto& f = conf.failures.front();
        cdetail = A.to_string(f.word) + " reduces to " + sum_string(A, f.via_first) + " and " + sum_string(A, f.via_second);
    }
    out.push_back({"confluence", conf.confluent(), cdetail});

    std::vector<std::string> problems;
    for (const auto& r : A.rules()) {
        for (const auto& t : r.rhs)
            if (A.grading(t) != A.grading(r.lhs) || t.start != r.lhs.start || t.end != r.lhs.end)
                problems.push_back("rule " + A.to_string(r.lhs) + " -> " + A.to_string(t) + " is not homogeneous");
    }
    out.push_back(from_problems("homogeneous relations", problems, std::to_string(A.rules().size()) + " rules"));

    problems.clear();
    std::vector<Path> small;
    for (const auto& p : basis)
        if (p.length() <= 2) small.push_back(p);
    std::size_t triples = 0;
    for (const auto& a : small)
        for (const auto& b : small) {
            if (a.end != b.start) continue;
            auto ab = A.multiply(a, b);
            for (const auto& c : small) {
                if (b.end != c.start) continue;
                ++triples;
                if (A.multiply(ab, {c}) != A.multiply({a}, A.multiply(b, c)))
                    problems.push_back("(" + A.to_string(a) + ")(" + A.to_string(b) + ")(" + A.to_string(c) + ")");
            }
        }
    out.push_back(from_problems("associativity", problems, std::to_string(triples) + " triples of paths of length <= 2"));

    problems.clear();
    for (const auto& n : A.named())
        for (std::size_t k = 0; k < A.quiver().arrows().size(); ++k) {
            std::vector<Path> a{A.arrow_path(static_cast<int>(k))};
            if (A.multiply(n.terms, a) != A.multiply(a, n.terms))
                problems.push_back(n.name + " does not commute with " + A.quiver().arrows()[k].name);
        }
    out.push_back(from_problems("central named elements", problems, std::to_string(A.named().size()) + " elements"));

    if (name == "Clbot") {
        auto phi = algebras(m).phi;
        auto v = phi->validate();
        out.push_back(from_problems("phi is an algebra map", v, "relations map to zero"));
        out.push_back({"phi is onto", phi->surjective_on_arrows(), "every arrow of KS is hit"});
        auto k = kernel_checks(m, maxlen);
        out.insert(out.end(), k.begin(), k.end());
    }
    return out;
}

ObjectKind parse_object(const std::string& s) {
    if (s == "twist") return ObjectKind::Twist;
    if (s == "crossing") return ObjectKind::Crossing;
    if (s == "restricted-twist") return ObjectKind::RestrictedTwist;
    if (s == "reduced-twist") return ObjectKind::ReducedTwist;
    if (s == "induced-crossing") return ObjectKind::InducedCrossing;
    throw std::invalid_argument("unknown object " + s +
                                " (expected twist, crossing, restricted-twist, reduced-twist or induced-crossing)");
}

std::string to_string(ObjectKind k) {
    switch (k) {
        case ObjectKind::Twist: return "twist";
        case ObjectKind::Crossing: return "crossing";
        case ObjectKind::RestrictedTwist: return "restricted-twist";
        case ObjectKind::ReducedTwist: return "reduced-twist";
        case ObjectKind::InducedCrossing: return "induced-crossing";
    }
    return "?";
}

BimodulePtr build_object(ObjectKind k, int m, int i, Sign s) {
    switch (k) {
        case ObjectKind::Twist: return twist_bimodule(m, i, s);
        case ObjectKind::Crossing: return crossing_bimodule(m, i, s);
        case ObjectKind::RestrictedTwist: return restrict_inputs(*algebras(m).phi, twist_bimodule(m, i, s));
        case ObjectKind::ReducedTwist: return reduced_restricted_twist(m, i, s);
        case ObjectKind::InducedCrossing: return induct_outputs(*algebras(m).phi, collapsed_crossing(m, i, s));
    }
    throw std::logic_error("unhandled object kind");
}

std::vector<CheckResult> bimodule_checks(const DABimodule& M, const VerifyBounds& b, std::size_t maxlen) {
    std::vector<CheckResult> out;
    out.push_back(from_problems("idempotents", M.check_idempotents(),
                                std::to_string(M.generator_count()) + " generators, " +
                                    std::to_string(M.concrete_term_count()) + " arrows, " +
                                    std::to_string(M.families().size()) + " families"));
    out.push_back(from_problems("gradings", M.check_gradings(b.k_max), "every arrow, families up to k = " + std::to_string(b.k_max)));
    out.push_back(from_report("structure relation", M, verify_structure(M, b)));
    if (M.max_arity() <= 1 && !M.has_families() && !M.input_len_bound()) {
        auto holder = std::make_shared<DABimodule>(M);
        auto D = box_with_algebra(holder, maxlen);
        out.push_back(from_problems("A box M is a dg module", verify_dg_module(D, 2),
                                    std::to_string(D.basis.size()) + " basis elements"));
    }
    return out;
}

std::vector<CheckResult> equivalence_checks(int m, int i, Sign s, const VerifyBounds& b) {
    std::vector<CheckResult> out;
    const auto& fam = algebras(m);
    auto twist = twist_bimodule(m, i, s);
    out.push_back({"the twist bimodule has no higher operations", twist->max_arity() <= 1,
                   "max inputs " + std::to_string(twist->max_arity())});
    auto rest = restrict_inputs(*fam.phi, twist);
    out.push_back(from_report("restricted twist: structure relation", *rest, verify_structure(*rest, b)));

    auto red = reduce(rest);
    auto cd = cancellation_data(m, i, s);
    out.push_back({"reduction matches the hand-written model", same_by_names(*red.reduced, *cd.small),
                   std::to_string(red.reduced->generator_count()) + " generators, cancelled " +
                       red.cancelled.front().first + " -> " + red.cancelled.front().second});
    const auto& f = *red.include;
    const auto& g = *red.project;
    const auto& T = *red.homotopy;
    out.push_back({"computed f, g, T agree with the hand-written maps without inputs",
                   components_up_to(f, 0) == cd.include && components_up_to(g, 0) == cd.project &&
                       components_up_to(T, 0) == cd.homotopy,
                   std::to_string(f.term_count() + g.term_count() + T.term_count()) + " computed components"});
    out.push_back({"computed g f = id and f g = id + dT", compose(g, f) == DAMorphism::identity(red.reduced) &&
                                                            compose(f, g) + DAMorphism::identity(rest) == differential(T),
                   "all components"});
    out.push_back(from_report("computed f is a homomorphism", *rest, verify_cycle(f, b)));
    out.push_back(from_report("computed g is a homomorphism", *red.reduced, verify_cycle(g, b)));

    auto id_small = components_up_to(DAMorphism::identity(cd.small), 0);
    auto id_big = components_up_to(DAMorphism::identity(cd.big), 0);
    out.push_back({"g f = id", components_up_to(compose(cd.project, cd.include), 0) == id_small, "type D components"});
    out.push_back({"f g = id + dT",
                   components_up_to(compose(cd.include, cd.project), 0) + id_big ==
                       components_up_to(differential(cd.homotopy), 0),
                   "type D components"});
    out.push_back({"f and g are cycles",
                   components_up_to(differential(cd.include), 0).is_zero() &&
                       components_up_to(differential(cd.project), 0).is_zero(),
                   "type D components"});
    out.push_back({"T T = 0", compose(cd.homotopy, cd.homotopy).is_zero(), ""});

    auto eq = crossing_equivalence(m, i, s);
    out.push_back(from_report("induced crossing: structure relation", *eq.induced_crossing,
                              verify_structure(*eq.induced_crossing, b)));
    out.push_back(from_report("forward map is a homomorphism", *eq.induced_crossing, verify_cycle(eq.forward, b)));
    out.push_back(from_report("backward map is a homomorphism", *eq.reduced_twist, verify_cycle(eq.backward, b)));
    out.push_back({"backward after forward is the identity",
                   compose(eq.backward, eq.forward) == DAMorphism::identity(eq.reduced_twist), ""});
    out.push_back({"forward after backward is the identity",
                   compose(eq.forward, eq.backward) == DAMorphism::identity(eq.induced_crossing), ""});
    auto gp = eq.forward.check_gradings();
    auto gb = eq.backward.check_gradings();
    gp.insert(gp.end(), gb.begin(), gb.end());
    out.push_back(from_problems("both maps preserve gradings", gp, "homological and collapsed"));
    out.push_back({"correction_back match = match_back correction",
                   compose(eq.correction_back, eq.match) == compose(eq.match_back, eq.correction), ""});
    out.push_back({"correction match_back = match correction_back",
                   compose(eq.correction, eq.match_back) == compose(eq.match, eq.correction_back), ""});
    out.push_back({"correction_back correction = 0", compose(eq.correction_back, eq.correction).is_zero(), ""});
    out.push_back({"correction correction_back = 0", compose(eq.correction, eq.correction_back).is_zero(), ""});
    return out;
}

Flavor parse_flavor(const std::string& s) {
    if (s == "KS" || s == "ks") return Flavor::KS;
    if (s == "OSz" || s == "osz") return Flavor::OSz;
    throw std::invalid_argument("unknown flavor " + s + " (expected KS or OSz)");
}

std::vector<int> parse_braid_word(const std::string& text, int m) {
    std::istringstream in(text);
    std::vector<int> w;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int c = 0;
        try {
            c = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw std::invalid_argument("braid letter " + tok + " is not an integer");
        if (c == 0 || std::abs(c) > m - 1)
            throw std::invalid_argument("braid letter " + tok + " must be nonzero with magnitude at most " +
                                        std::to_string(m - 1));
        w.push_back(c);
    }
    if (w.empty()) throw std::invalid_argument("empty braid word");
    return w;
}

BimodulePtr braid_bimodule(int m, const std::vector<int>& word, const BraidOptions& opt) {
    auto letter = [&](int c) {
        Sign s = c > 0 ? Sign::Positive : Sign::Negative;
        return opt.flavor == Flavor::KS ? twist_bimodule(m, std::abs(c), s) : crossing_bimodule(m, std::abs(c), s);
    };
    // right to left, so the left factor is always a single crossing and can
    // take outputs of any length
    BimodulePtr acc = letter(word.back());
    if (opt.flavor == Flavor::OSz && word.size() > 1) {
        auto bounded = std::make_shared<DABimodule>(*acc);
        bounded->set_input_len_bound(opt.input_bound);
        acc = bounded;
    }
    TensorOptions t;
    t.depth_limit = opt.depth_limit;
    if (opt.flavor == Flavor::OSz) t.max_input_len = opt.input_bound;
    for (auto it = word.rbegin() + 1; it != word.rend(); ++it) acc = box_tensor(letter(*it), acc, t);
    if (opt.reduce) {
        ReduceOptions r;
        r.witnesses = false;
        r.max_input_len = t.max_input_len;
        acc = reduce(acc, r).reduced;
    }
    return acc;
}

std::map<std::pair<int, std::int64_t>, int> graded_counts(const DABimodule& M) {
    std::map<std::pair<int, std::int64_t>, int> counts;
    const bool refined = M.grading_dim() > 1;
    const int m = static_cast<int>(M.grading_dim() / 2);
    for (const auto& g : M.generators()) {
        Grading e = refined ? GradingHom::epsilon(m).apply(g.grading) : g.grading;
        counts[{g.hom, e.as_integer()}]++;
    }
    return counts;
}

Grading alexander_shift(int m, const std::vector<int>& word) {
    Grading g(static_cast<std::size_t>(m));
    for (int c : word) {
        const auto i = static_cast<std::size_t>(std::abs(c));
        const std::int64_t d = c > 0 ? -1 : 1;  // quarter units
        g.set_scaled(i - 1, g.scaled(i - 1) + d);
        g.set_scaled(i, g.scaled(i) + d);
    }
    return g;
}

}  // namespace dabim
