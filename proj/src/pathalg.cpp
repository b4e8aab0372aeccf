#include "dabim/pathalg.hpp"

#include "dabim/gf2.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dabim {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

constexpr std::size_t kRewriteStepLimit = 100000;

}  // namespace

Quiver::Quiver(int vertex_count, std::size_t grading_dim)
    : vertex_count_(vertex_count), grading_dim_(grading_dim),
      out_(static_cast<std::size_t>(std::max(vertex_count, 0))) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
}

int Quiver::add_arrow(std::string name, int source, int target, Grading grading) {
    if (source < 0 || source >= vertex_count_ || target < 0 || target >= vertex_count_)
        throw std::invalid_argument("arrow " + name + " has an endpoint outside the quiver");
    if (grading.dim() != grading_dim_)
        throw std::invalid_argument("arrow " + name + " has grading of the wrong dimension");
    if (find(name)) throw std::invalid_argument("duplicate arrow name " + name);
    int idx = static_cast<int>(arrows_.size());
    arrows_.push_back({std::move(name), source, target, std::move(grading)});
    out_[static_cast<std::size_t>(source)].push_back(idx);
    return idx;
}

std::optional<int> Quiver::find(std::string_view name) const {
    for (std::size_t k = 0; k < arrows_.size(); ++k)
        if (arrows_[k].name == name) return static_cast<int>(k);
    return std::nullopt;
}

std::optional<int> Quiver::find_between(int s, int t) const {
    std::optional<int> found;
    for (std::size_t k = 0; k < arrows_.size(); ++k)
        if (arrows_[k].source == s && arrows_[k].target == t) {
            if (found) return std::nullopt;
            found = static_cast<int>(k);
        }
    return found;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (auto c = a.arrows <=> b.arrows; c != 0) return c;
    if (auto c = a.start <=> b.start; c != 0) return c;
    return a.end <=> b.end;
}

std::size_t PathHash::operator()(const Path& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.start) * 1000003u ^ static_cast<std::size_t>(p.end);
    for (int a : p.arrows) h = h * 1315423911u + static_cast<std::size_t>(a) + 0x9e3779b9u;
    return h;
}

std::size_t PathSeqHash::operator()(const std::vector<Path>& ps) const noexcept {
    std::size_t h = ps.size();
    PathHash ph;
    for (const auto& p : ps) h = h * 2654435761u ^ ph(p);
    return h;
}

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(const PresentedAlgebra* alg, std::vector<Path> terms)
    : alg_(alg), terms_(std::move(terms)) {
    gf2_normalize(terms_);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    if (alg_ != o.alg_) throw std::invalid_argument("adding elements of different algebras");
    std::vector<Path> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return AlgebraElement(alg_, std::move(t));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    if (alg_ != o.alg_) throw std::invalid_argument("multiplying elements of different algebras");
    return AlgebraElement(alg_, alg_->multiply(terms_, o.terms_));
}

std::string AlgebraElement::to_string() const { return alg_->to_string(terms_); }

// ----------------------------------------------------------------- algebra

namespace {

void check_path(const Quiver& q, const Path& p, const std::string& what) {
    if (p.start < 0 || p.start >= q.vertex_count() || p.end < 0 || p.end >= q.vertex_count())
        throw std::invalid_argument(what + ": vertex out of range");
    int v = p.start;
    for (int a : p.arrows) {
        if (a < 0 || a >= static_cast<int>(q.arrows().size()))
            throw std::invalid_argument(what + ": unknown arrow");
        if (q.arrow(a).source != v) throw std::invalid_argument(what + ": arrows do not compose");
        v = q.arrow(a).target;
    }
    if (v != p.end) throw std::invalid_argument(what + ": end vertex mismatch");
}

}  // namespace

AlgebraPtr PresentedAlgebra::create(std::string name, Quiver quiver, std::vector<RewriteRule> rules,
                                    std::vector<NamedElement> named, bool vertex_notation,
                                    bool enforce_term_order) {
    std::shared_ptr<PresentedAlgebra> alg(new PresentedAlgebra());
    alg->name_ = std::move(name);
    alg->quiver_ = std::move(quiver);
    alg->vertex_notation_ = vertex_notation;
    const Quiver& q = alg->quiver_;
    std::set<std::vector<int>> seen_lhs;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        auto& rule = rules[r];
        std::string what = alg->name_ + " rule " + std::to_string(r);
        if (rule.lhs.is_idempotent()) throw std::invalid_argument(what + ": idempotent left side");
        check_path(q, rule.lhs, what);
        if (!seen_lhs.insert(rule.lhs.arrows).second)
            throw std::invalid_argument(what + ": duplicate left side");
        gf2_normalize(rule.rhs);
        for (const auto& t : rule.rhs) {
            check_path(q, t, what);
            if (t.start != rule.lhs.start || t.end != rule.lhs.end)
                throw std::invalid_argument(what + ": right side has different endpoints");
            if (enforce_term_order && !(t < rule.lhs))
                throw std::invalid_argument(what + ": rule does not decrease in the term order");
        }
    }
    alg->rules_ = std::move(rules);
    alg->rules_by_first_.assign(q.arrows().size(), {});
    for (std::size_t r = 0; r < alg->rules_.size(); ++r)
        alg->rules_by_first_[static_cast<std::size_t>(alg->rules_[r].lhs.arrows.front())].push_back(r);
    for (auto& n : named) {
        for (auto& t : n.terms) check_path(q, t, alg->name_ + " element " + n.name);
        n.terms = alg->normal_form(n.terms);
    }
    alg->named_ = std::move(named);
    return alg;
}

Path PresentedAlgebra::concat(const Path& a, const Path& b) const {
    if (a.end != b.start) throw std::invalid_argument("concat: paths do not compose");
    Path p{a.start, b.end, a.arrows};
    p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
    return p;
}

Path PresentedAlgebra::arrow_path(int a) const {
    const auto& ar = quiver_.arrow(a);
    return Path{ar.source, ar.target, {a}};
}

std::optional<PresentedAlgebra::Match> PresentedAlgebra::find_redex(const Path& p) const {
    const auto n = p.arrows.size();
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (std::size_t r : rules_by_first_[static_cast<std::size_t>(p.arrows[pos])]) {
            const auto& lhs = rules_[r].lhs.arrows;
            if (pos + lhs.size() > n) continue;
            if (std::equal(lhs.begin(), lhs.end(), p.arrows.begin() + static_cast<long>(pos)))
                return Match{pos, r};
        }
    }
    return std::nullopt;
}

Path PresentedAlgebra::apply_rule_at(const Path& p, std::size_t pos, std::size_t len,
                                     const Path& rhs) const {
    Path q{p.start, p.end, {}};
    q.arrows.reserve(p.arrows.size() - len + rhs.arrows.size());
    q.arrows.insert(q.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<long>(pos));
    q.arrows.insert(q.arrows.end(), rhs.arrows.begin(), rhs.arrows.end());
    q.arrows.insert(q.arrows.end(), p.arrows.begin() + static_cast<long>(pos + len), p.arrows.end());
    return q;
}

std::vector<Path> PresentedAlgebra::normal_form(const Path& p) const {
    std::vector<Path> out;
    std::vector<Path> stack{p};
    std::size_t steps = 0;
    while (!stack.empty()) {
        Path q = std::move(stack.back());
        stack.pop_back();
        auto m = find_redex(q);
        if (!m) {
            out.push_back(std::move(q));
            continue;
        }
        if (++steps > kRewriteStepLimit)
            throw std::runtime_error(name_ + ": rewriting does not terminate");
        const auto& rule = rules_[m->rule];
        for (const auto& r : rule.rhs) stack.push_back(apply_rule_at(q, m->pos, rule.lhs.length(), r));
    }
    gf2_normalize(out);
    return out;
}

std::vector<Path> PresentedAlgebra::normal_form(const std::vector<Path>& sum) const {
    std::vector<Path> out;
    for (const auto& p : sum) {
        auto nf = normal_form(p);
        out.insert(out.end(), nf.begin(), nf.end());
    }
    gf2_normalize(out);
    return out;
}

std::vector<Path> PresentedAlgebra::multiply(const Path& a, const Path& b) const {
    if (a.end != b.start) return {};
    if (a.is_idempotent()) return {b};
    if (b.is_idempotent()) return {a};
    return normal_form(concat(a, b));
}

std::vector<Path> PresentedAlgebra::multiply(const std::vector<Path>& a,
                                             const std::vector<Path>& b) const {
    std::vector<Path> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            auto p = multiply(x, y);
            out.insert(out.end(), p.begin(), p.end());
        }
    gf2_normalize(out);
    return out;
}

std::optional<Path> PresentedAlgebra::multiply_monomial(const Path& a, const Path& b) const {
    auto p = multiply(a, b);
    if (p.empty()) return std::nullopt;
    if (p.size() > 1)
        throw std::logic_error(name_ + ": product " + to_string(a) + " * " + to_string(b) +
                               " is not a single path");
    return p.front();
}

bool PresentedAlgebra::is_irreducible(const Path& p) const { return !find_redex(p).has_value(); }

Grading PresentedAlgebra::grading(const Path& p) const {
    Grading g(quiver_.grading_dim());
    for (int a : p.arrows) g += quiver_.arrow(a).grading;
    return g;
}

std::vector<Path> PresentedAlgebra::basis_from(int vertex, std::size_t max_len) const {
    std::vector<Path> out{Path::idempotent(vertex)};
    std::vector<Path> frontier{Path::idempotent(vertex)};
    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (int a : quiver_.out_arrows(p.end)) {
                Path q = p;
                q.arrows.push_back(a);
                q.end = quiver_.arrow(a).target;
                // p is irreducible, so only redexes ending at the new arrow matter
                bool reducible = false;
                for (const auto& rule : rules_) {
                    const auto& lhs = rule.lhs.arrows;
                    if (lhs.size() > q.arrows.size()) continue;
                    if (std::equal(lhs.rbegin(), lhs.rend(), q.arrows.rbegin())) {
                        reducible = true;
                        break;
                    }
                }
                if (!reducible) next.push_back(std::move(q));
            }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::vector<Path> PresentedAlgebra::basis(std::size_t max_len) const {
    std::vector<Path> out;
    for (int v = 0; v < vertex_count(); ++v) {
        auto b = basis_from(v, max_len);
        out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> PresentedAlgebra::named_index(std::string_view name) const {
    for (std::size_t k = 0; k < named_.size(); ++k)
        if (named_[k].name == name) return static_cast<int>(k);
    return std::nullopt;
}

std::optional<Path> PresentedAlgebra::named_power_at(int named_idx, int vertex, int power) const {
    if (power < 0) throw std::invalid_argument("negative power");
    const auto& n = named_.at(static_cast<std::size_t>(named_idx));
    const Path* piece = nullptr;
    for (const auto& t : n.terms)
        if (t.start == vertex) {
            if (piece) throw std::logic_error(n.name + " has several terms at one vertex");
            piece = &t;
        }
    if (!piece) return std::nullopt;
    if (piece->end != vertex) throw std::logic_error(n.name + " is not a loop");
    Path acc = Path::idempotent(vertex);
    for (int k = 0; k < power; ++k) {
        auto next = multiply_monomial(acc, *piece);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

AlgebraElement PresentedAlgebra::element(const Path& p) const {
    check_path(quiver_, p, name_ + " element");
    return AlgebraElement(this, normal_form(p));
}

AlgebraElement PresentedAlgebra::element(std::vector<Path> terms) const {
    for (const auto& p : terms) check_path(quiver_, p, name_ + " element");
    return AlgebraElement(this, normal_form(terms));
}

AlgebraElement PresentedAlgebra::one() const {
    std::vector<Path> t;
    for (int v = 0; v < vertex_count(); ++v) t.push_back(Path::idempotent(v));
    return AlgebraElement(this, std::move(t));
}

std::string PresentedAlgebra::to_string(const Path& p) const {
    std::ostringstream os;
    if (vertex_notation_) {
        os << '(' << p.start;
        for (int a : p.arrows) os << '|' << quiver_.arrow(a).target;
        os << ')';
        return os.str();
    }
    if (p.is_idempotent()) return "I" + std::to_string(p.start);
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) os << ' ';
        os << quiver_.arrow(p.arrows[k]).name;
    }
    return os.str();
}

std::string PresentedAlgebra::to_string(const std::vector<Path>& sum) const {
    if (sum.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < sum.size(); ++k) {
        if (k) s += " + ";
        s += to_string(sum[k]);
    }
    return s;
}

Path PresentedAlgebra::parse_path(std::string_view text) const {
    auto toks = split_ws(text);
    if (toks.empty()) throw std::invalid_argument("empty path");
    std::optional<Path> acc;
    for (const auto& tok : toks) {
        Path piece;
        if (tok.front() == '(') {
            if (tok.back() != ')') throw std::invalid_argument("bad path token " + tok);
            std::vector<int> verts;
            std::string body = tok.substr(1, tok.size() - 2);
            std::size_t pos = 0;
            while (true) {
                auto bar = body.find('|', pos);
                std::string num = body.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
                try {
                    verts.push_back(std::stoi(num));
                } catch (const std::exception&) {
                    throw std::invalid_argument("bad vertex in " + tok);
                }
                if (bar == std::string::npos) break;
                pos = bar + 1;
            }
            for (int v : verts)
                if (v < 0 || v >= vertex_count()) throw std::invalid_argument("vertex out of range in " + tok);
            piece = Path::idempotent(verts.front());
            for (std::size_t k = 1; k < verts.size(); ++k) {
                auto a = quiver_.find_between(verts[k - 1], verts[k]);
                if (!a) throw std::invalid_argument("no unique arrow for step in " + tok);
                piece.arrows.push_back(*a);
            }
            piece.end = verts.back();
        } else if (auto a = quiver_.find(tok)) {
            piece = arrow_path(*a);
        } else if (tok.size() > 1 && tok.front() == 'I' &&
                   std::all_of(tok.begin() + 1, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            int v = std::stoi(tok.substr(1));
            if (v < 0 || v >= vertex_count()) throw std::invalid_argument("idempotent out of range: " + tok);
            piece = Path::idempotent(v);
        } else {
            throw std::invalid_argument("unknown arrow " + tok + " in algebra " + name_);
        }
        if (!acc) acc = piece;
        else acc = concat(*acc, piece);
    }
    return *acc;
}

std::vector<Path> PresentedAlgebra::parse_element(std::string_view text) const {
    std::string t = trim(text);
    if (t == "0") return {};
    std::vector<Path> terms;
    std::size_t pos = 0;
    while (pos <= t.size()) {
        auto plus = t.find('+', pos);
        std::string term = trim(std::string_view(t).substr(pos, plus == std::string::npos ? std::string::npos : plus - pos));
        terms.push_back(parse_path(term));
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return normal_form(terms);
}

// -------------------------------------------------------------- confluence

ConfluenceReport check_confluence(const PresentedAlgebra& alg, std::size_t max_word_len) {
    ConfluenceReport rep;
    const auto& rules = alg.rules_;
    auto resolve = [&](const Path& word, std::size_t pos, const RewriteRule& rule,
                       std::vector<Path>& out) -> std::string {
        try {
            std::vector<Path> sum;
            for (const auto& r : rule.rhs) sum.push_back(alg.apply_rule_at(word, pos, rule.lhs.length(), r));
            out = alg.normal_form(sum);
        } catch (const std::runtime_error& e) {
            return e.what();
        }
        return {};
    };
    auto check = [&](const Path& word, std::size_t pos1, const RewriteRule& r1, std::size_t pos2,
                     const RewriteRule& r2) {
        ++rep.pairs_checked;
        CriticalPair cp;
        cp.word = word;
        std::string e1 = resolve(word, pos1, r1, cp.via_first);
        std::string e2 = resolve(word, pos2, r2, cp.via_second);
        if (!e1.empty() || !e2.empty()) {
            cp.note = !e1.empty() ? e1 : e2;
            rep.failures.push_back(std::move(cp));
        } else if (cp.via_first != cp.via_second) {
            cp.note = "critical pair does not resolve";
            rep.failures.push_back(std::move(cp));
        }
    };
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const auto& a = rules[i].lhs.arrows;
            const auto& b = rules[j].lhs.arrows;
            // overlaps: proper suffix of a equals proper prefix of b
            for (std::size_t o = 1; o < a.size() && o < b.size(); ++o) {
                if (!std::equal(a.end() - static_cast<long>(o), a.end(), b.begin())) continue;
                Path w{rules[i].lhs.start, rules[j].lhs.end, a};
                w.arrows.insert(w.arrows.end(), b.begin() + static_cast<long>(o), b.end());
                if (w.length() > max_word_len) continue;
                check(w, 0, rules[i], a.size() - o, rules[j]);
            }
            // inclusions: b is a subword of a
            if (i != j && b.size() <= a.size())
                for (std::size_t p = 0; p + b.size() <= a.size(); ++p)
                    if (std::equal(b.begin(), b.end(), a.begin() + static_cast<long>(p)))
                        check(rules[i].lhs, 0, rules[i], p, rules[j]);
        }
    return rep;
}

std::vector<BasisBucket> graded_basis(const PresentedAlgebra& alg, std::size_t max_len) {
    std::map<std::tuple<int, int, Grading>, std::vector<Path>> buckets;
    for (auto& p : alg.basis(max_len)) buckets[{p.start, p.end, alg.grading(p)}].push_back(p);
    std::vector<BasisBucket> out;
    for (auto& [k, v] : buckets) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v});
    return out;
}

// -------------------------------------------------------------------- homs

AlgebraHom::AlgebraHom(std::string name, AlgebraPtr source, AlgebraPtr target,
                       std::vector<int> vertex_map, std::vector<std::vector<Path>> arrow_images,
                       GradingHom grading_hom)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)),
      vertex_map_(std::move(vertex_map)), arrow_images_(std::move(arrow_images)),
      grading_hom_(std::move(grading_hom)) {
    if (vertex_map_.size() != static_cast<std::size_t>(source_->vertex_count()))
        throw std::invalid_argument(name_ + ": vertex map has the wrong size");
    if (arrow_images_.size() != source_->quiver().arrows().size())
        throw std::invalid_argument(name_ + ": arrow images have the wrong size");
    for (auto& img : arrow_images_) img = target_->normal_form(img);
}

std::vector<Path> AlgebraHom::apply(const Path& p) const {
    if (p.is_idempotent()) return {Path::idempotent(vertex_image(p.start))};
    std::vector<Path> acc = arrow_images_.at(static_cast<std::size_t>(p.arrows.front()));
    for (std::size_t k = 1; k < p.arrows.size() && !acc.empty(); ++k)
        acc = target_->multiply(acc, arrow_images_.at(static_cast<std::size_t>(p.arrows[k])));
    return acc;
}

std::vector<Path> AlgebraHom::apply(const std::vector<Path>& sum) const {
    std::vector<Path> out;
    for (const auto& p : sum) {
        auto img = apply(p);
        out.insert(out.end(), img.begin(), img.end());
    }
    gf2_normalize(out);
    return out;
}

std::vector<std::string> AlgebraHom::validate() const {
    std::vector<std::string> problems;
    for (int v : vertex_map_)
        if (v < 0 || v >= target_->vertex_count()) problems.push_back("vertex image out of range");
    if (grading_hom_.cols() != source_->grading_dim() || grading_hom_.rows() != target_->grading_dim())
        problems.push_back("grading hom has the wrong shape");
    if (!problems.empty()) return problems;
    const auto& arrows = source_->quiver().arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        Grading expect = grading_hom_.apply(arrows[a].grading);
        for (const auto& t : arrow_images_[a]) {
            if (t.start != vertex_image(arrows[a].source) || t.end != vertex_image(arrows[a].target))
                problems.push_back("image of " + arrows[a].name + " has wrong endpoints");
            if (target_->grading(t) != expect)
                problems.push_back("image of " + arrows[a].name + " has the wrong grading");
        }
    }
    for (const auto& rule : source_->rules()) {
        if (apply(rule.lhs) != apply(rule.rhs))
            problems.push_back("relation " + source_->to_string(rule.lhs) + " -> " +
                               source_->to_string(rule.rhs) + " is not respected");
    }
    return problems;
}

bool AlgebraHom::surjective_on_arrows() const {
    for (std::size_t b = 0; b < target_->quiver().arrows().size(); ++b) {
        std::vector<Path> want{target_->arrow_path(static_cast<int>(b))};
        bool hit = false;
        for (const auto& img : arrow_images_)
            if (img == want) hit = true;
        if (!hit) return false;
    }
    return true;
}

std::unordered_map<Path, std::vector<Path>, PathHash> AlgebraHom::fibers(std::size_t max_source_len) const {
    std::unordered_map<Path, std::vector<Path>, PathHash> out;
    for (const auto& b : source_->basis(max_source_len))
        for (const auto& t : apply(b)) out[t].push_back(b);
    return out;
}

// ------------------------------------------------------ derived algebras

AlgebraPtr collapse_grading(const PresentedAlgebra& alg, const GradingHom& h, std::string name) {
    Quiver q(alg.vertex_count(), h.rows());
    for (const auto& a : alg.quiver().arrows()) q.add_arrow(a.name, a.source, a.target, h.apply(a.grading));
    return PresentedAlgebra::create(std::move(name), std::move(q), alg.rules(), alg.named(),
                                    alg.vertex_notation());
}

AlgebraPtr truncate(const PresentedAlgebra& alg, const std::vector<int>& vertices, std::string name,
                    std::size_t max_excursion_len, std::size_t max_word_len) {
    std::vector<int> keep = vertices;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> newv(static_cast<std::size_t>(alg.vertex_count()), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || keep[k] >= alg.vertex_count()) throw std::invalid_argument("truncate: bad vertex");
        newv[static_cast<std::size_t>(keep[k])] = static_cast<int>(k);
    }
    auto inside = [&](int v) { return newv[static_cast<std::size_t>(v)] >= 0; };

    Quiver q(static_cast<int>(keep.size()), alg.grading_dim());
    std::vector<Path> image;  // image in alg of each new arrow
    std::vector<int> old_to_new(alg.quiver().arrows().size(), -1);
    for (std::size_t a = 0; a < alg.quiver().arrows().size(); ++a) {
        const auto& ar = alg.quiver().arrows()[a];
        if (!inside(ar.source) || !inside(ar.target)) continue;
        old_to_new[a] = q.add_arrow(ar.name, newv[static_cast<std::size_t>(ar.source)],
                                    newv[static_cast<std::size_t>(ar.target)], ar.grading);
        image.push_back(alg.arrow_path(static_cast<int>(a)));
    }
    for (int s : keep) {
        std::vector<Path> frontier{Path::idempotent(s)};
        for (std::size_t len = 1; len <= max_excursion_len && !frontier.empty(); ++len) {
            std::vector<Path> next;
            for (const auto& p : frontier)
                for (int a : alg.quiver().out_arrows(p.end)) {
                    int t = alg.quiver().arrow(a).target;
                    if (len == 1 && inside(t)) continue;
                    Path qp = p;
                    qp.arrows.push_back(a);
                    qp.end = t;
                    if (!alg.is_irreducible(qp)) continue;
                    if (inside(t)) {
                        std::string nm;
                        for (int x : qp.arrows) nm += alg.quiver().arrow(x).name;
                        q.add_arrow(nm, newv[static_cast<std::size_t>(s)], newv[static_cast<std::size_t>(t)],
                                    alg.grading(qp));
                        image.push_back(qp);
                    } else {
                        next.push_back(std::move(qp));
                    }
                }
            frontier = std::move(next);
        }
    }

    std::vector<RewriteRule> rules;
    for (const auto& rule : alg.rules()) {
        bool ok = true;
        auto translate = [&](const Path& p) {
            Path n{inside(p.start) ? newv[static_cast<std::size_t>(p.start)] : -1,
                   inside(p.end) ? newv[static_cast<std::size_t>(p.end)] : -1, {}};
            if (n.start < 0 || n.end < 0) ok = false;
            for (int a : p.arrows) {
                int na = old_to_new[static_cast<std::size_t>(a)];
                if (na < 0) ok = false;
                n.arrows.push_back(na);
            }
            return n;
        };
        RewriteRule nr{translate(rule.lhs), {}};
        for (const auto& r : rule.rhs) nr.rhs.push_back(translate(r));
        if (ok) rules.push_back(std::move(nr));
    }

    auto contains_lhs = [&](const Path& w) {
        for (const auto& r : rules) {
            const auto& l = r.lhs.arrows;
            if (l.size() > w.arrows.size()) continue;
            if (std::search(w.arrows.begin(), w.arrows.end(), l.begin(), l.end()) != w.arrows.end())
                return true;
        }
        return false;
    };
    auto image_of = [&](const Path& w) {
        std::vector<Path> acc{Path::idempotent(keep[static_cast<std::size_t>(w.start)])};
        for (int a : w.arrows) acc = alg.multiply(acc, {image[static_cast<std::size_t>(a)]});
        return acc;
    };
    std::map<std::vector<Path>, Path> seen;
    std::vector<Path> frontier;
    for (int v = 0; v < q.vertex_count(); ++v) {
        seen.emplace(image_of(Path::idempotent(v)), Path::idempotent(v));
        for (int a : q.out_arrows(v)) {
            Path w{v, q.arrow(a).target, {a}};
            seen.emplace(image_of(w), w);
            frontier.push_back(w);
        }
    }
    std::sort(frontier.begin(), frontier.end());
    for (std::size_t len = 2; len <= max_word_len && !frontier.empty(); ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (int a : q.out_arrows(p.end)) {
                Path w = p;
                w.arrows.push_back(a);
                w.end = q.arrow(a).target;
                if (contains_lhs(w)) continue;
                auto img = image_of(w);
                if (img.empty()) {
                    rules.push_back({w, {}});
                    continue;
                }
                auto [it, fresh] = seen.emplace(img, w);
                if (!fresh) {
                    rules.push_back({w, {it->second}});
                    continue;
                }
                next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return PresentedAlgebra::create(std::move(name), std::move(q), std::move(rules));
}

// ------------------------------------------------------- kernel vs ideal

bool KernelIdealReport::pass() const {
    if (per_degree.empty()) return false;
    for (const auto& d : per_degree)
        if (!d.equal) return false;
    return true;
}

namespace {

struct DegreeData {
    std::vector<Path> basis;
    std::vector<std::int64_t> deg;
    std::int64_t complete = -1;
};

DegreeData z_graded_basis(const PresentedAlgebra& alg, std::size_t max_len) {
    if (alg.grading_dim() != 1) throw std::invalid_argument(alg.name() + " is not Z-graded");
    for (const auto& a : alg.quiver().arrows())
        if (a.grading.as_integer() < 0)
            throw std::invalid_argument(alg.name() + " has an arrow of negative degree");
    DegreeData d;
    d.basis = alg.basis(max_len);
    std::optional<std::int64_t> min_at_bound;
    std::int64_t max_deg = 0;
    for (const auto& p : d.basis) {
        auto g = alg.grading(p).as_integer();
        d.deg.push_back(g);
        max_deg = std::max(max_deg, g);
        if (p.length() == max_len) min_at_bound = std::min(min_at_bound.value_or(g), g);
    }
    // a longer irreducible path has a prefix of length max_len, hence a degree at least as big
    d.complete = min_at_bound ? *min_at_bound - 1 : max_deg;
    return d;
}

Gf2Span ideal_in_degree(const PresentedAlgebra& alg, const DegreeData& dd,
                        const std::vector<std::vector<Path>>& gens, std::int64_t degree,
                        const std::unordered_map<Path, std::size_t, PathHash>& index) {
    Gf2Span span(index.size());
    for (const auto& g : gens) {
        if (g.empty()) continue;
        std::int64_t dg = alg.grading(g.front()).as_integer();
        for (std::size_t xi = 0; xi < dd.basis.size(); ++xi) {
            if (dd.deg[xi] + dg > degree) continue;
            auto xg = alg.multiply({dd.basis[xi]}, g);
            if (xg.empty()) continue;
            for (std::size_t yi = 0; yi < dd.basis.size(); ++yi) {
                if (dd.deg[xi] + dg + dd.deg[yi] != degree) continue;
                auto prod = alg.multiply(xg, {dd.basis[yi]});
                if (prod.empty()) continue;
                BitVec v(index.size());
                for (const auto& t : prod) v.flip(index.at(t));
                span.insert(std::move(v));
            }
        }
    }
    return span;
}

}  // namespace

KernelIdealReport compare_kernel_with_ideal(const AlgebraHom& phi,
                                            const std::vector<std::vector<Path>>& generators,
                                            std::size_t max_len) {
    const auto& src = *phi.source();
    DegreeData dd = z_graded_basis(src, max_len);
    KernelIdealReport rep;
    rep.max_complete_degree = dd.complete;
    for (std::int64_t d = 0; d <= dd.complete; ++d) {
        std::unordered_map<Path, std::size_t, PathHash> index;
        std::vector<Path> vd;
        for (std::size_t k = 0; k < dd.basis.size(); ++k)
            if (dd.deg[k] == d) {
                index.emplace(dd.basis[k], vd.size());
                vd.push_back(dd.basis[k]);
            }
        std::unordered_map<Path, std::size_t, PathHash> tindex;
        std::vector<std::vector<Path>> imgs;
        for (const auto& p : vd) {
            imgs.push_back(phi.apply(p));
            for (const auto& t : imgs.back()) tindex.emplace(t, tindex.size());
        }
        std::vector<BitVec> images;
        for (const auto& img : imgs) {
            BitVec v(tindex.size());
            for (const auto& t : img) v.flip(tindex.at(t));
            images.push_back(std::move(v));
        }
        auto kernel = gf2_kernel(images, tindex.size());
        Gf2Span ideal = ideal_in_degree(src, dd, generators, d, index);
        DegreeComparison dc;
        dc.degree = d;
        dc.dim_space = vd.size();
        dc.dim_kernel = kernel.size();
        dc.dim_ideal = ideal.rank();
        bool kernel_in_ideal = true;
        for (const auto& k : kernel)
            if (!ideal.contains(k)) kernel_in_ideal = false;
        dc.equal = kernel_in_ideal && dc.dim_kernel == dc.dim_ideal;
        rep.per_degree.push_back(dc);
    }
    return rep;
}

std::optional<bool> ideal_contains(const PresentedAlgebra& alg,
                                   const std::vector<std::vector<Path>>& generators,
                                   const std::vector<Path>& element, std::size_t max_len) {
    auto el = alg.normal_form(element);
    if (el.empty()) return true;
    DegreeData dd = z_graded_basis(alg, max_len);
    std::int64_t d = alg.grading(el.front()).as_integer();
    for (const auto& t : el)
        if (alg.grading(t).as_integer() != d) throw std::invalid_argument("ideal_contains: element is not homogeneous");
    if (d > dd.complete) return std::nullopt;
    std::unordered_map<Path, std::size_t, PathHash> index;
    for (std::size_t k = 0; k < dd.basis.size(); ++k)
        if (dd.deg[k] == d) index.emplace(dd.basis[k], index.size());
    Gf2Span ideal = ideal_in_degree(alg, dd, generators, d, index);
    BitVec v(index.size());
    for (const auto& t : el) v.flip(index.at(t));
    return ideal.contains(std::move(v));
}

}  // namespace dabim
