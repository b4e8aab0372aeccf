#include <algorithm>
#include <cctype>
#include <sstream>

#include "dabim/dastruct.hpp"

namespace dabim {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool chain_ok(const std::vector<Path>& in, int right_from, int right_to) {
    int v = right_from;
    for (const auto& p : in) {
        if (p.start != v) return false;
        v = p.end;
    }
    return v == right_to;
}

}  // namespace

// ---------------------------------------------------------------- patterns

std::optional<Path> instantiate(const PresentedAlgebra& alg, const PathPattern& pat, int k) {
    if (pat.central < 0) return pat.base;
    int power = pat.offset + (pat.scaled ? k : 0);
    auto u = alg.named_power_at(pat.central, pat.base.end, power);
    if (!u) return std::nullopt;
    return alg.multiply_monomial(pat.base, *u);
}

std::string pattern_to_string(const PresentedAlgebra& alg, const PathPattern& pat) {
    std::string s = alg.to_string(pat.base);
    if (pat.central < 0) return s;
    s += " * " + alg.named().at(static_cast<std::size_t>(pat.central)).name + "^";
    if (!pat.scaled) return s + std::to_string(pat.offset);
    if (pat.offset == 0) return s + "k";
    return s + "(k" + (pat.offset > 0 ? "+" : "") + std::to_string(pat.offset) + ")";
}

PathPattern parse_pattern(const PresentedAlgebra& alg, std::string_view text) {
    std::string t = trim(text);
    auto star = t.find('*');
    if (star == std::string::npos) return PathPattern::plain(alg.parse_path(t));
    PathPattern pat;
    pat.base = alg.parse_path(t.substr(0, star));
    std::string rest = trim(std::string_view(t).substr(star + 1));
    auto caret = rest.find('^');
    if (caret == std::string::npos) throw std::invalid_argument("pattern needs an exponent: " + t);
    std::string name = trim(std::string_view(rest).substr(0, caret));
    auto idx = alg.named_index(name);
    if (!idx) throw std::invalid_argument("unknown central element " + name);
    pat.central = *idx;
    std::string e;
    for (char c : rest.substr(caret + 1))
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') e += c;
    if (!e.empty() && e.front() == 'k') {
        pat.scaled = true;
        std::string off = e.substr(1);
        if (off.empty()) pat.offset = 0;
        else {
            if (off.front() == '+') off = off.substr(1);
            try {
                pat.offset = std::stoi(off);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad exponent in pattern " + t);
            }
        }
    } else {
        try {
            pat.offset = std::stoi(e);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in pattern " + t);
        }
    }
    return pat;
}

// --------------------------------------------------------------- bimodule

void toggle_term(OutSum& sum, OutTerm t) {
    auto it = std::find(sum.begin(), sum.end(), t);
    if (it != sum.end()) sum.erase(it);
    else sum.push_back(std::move(t));
}

DABimodule::DABimodule(std::string name, AlgebraPtr out_alg, AlgebraPtr in_alg, GradingHom out_hom,
                       GradingHom in_hom)
    : name_(std::move(name)), out_alg_(std::move(out_alg)), in_alg_(std::move(in_alg)),
      out_hom_(std::move(out_hom)), in_hom_(std::move(in_hom)) {
    if (out_hom_.cols() != out_alg_->grading_dim() || in_hom_.cols() != in_alg_->grading_dim() ||
        in_hom_.rows() != out_hom_.rows())
        throw std::invalid_argument(name_ + ": grading homs do not fit the algebras");
}

int DABimodule::add_generator(DAGenerator g) {
    if (g.left < 0 || g.left >= out_alg_->vertex_count() || g.right < 0 || g.right >= in_alg_->vertex_count())
        throw std::invalid_argument(name_ + ": generator " + g.name + " has an idempotent out of range");
    if (g.grading.dim() != grading_dim())
        throw std::invalid_argument(name_ + ": generator " + g.name + " has grading of the wrong dimension");
    if (find_generator(g.name)) throw std::invalid_argument(name_ + ": duplicate generator " + g.name);
    gens_.push_back(std::move(g));
    table_.emplace_back();
    families_by_gen_.emplace_back();
    return static_cast<int>(gens_.size()) - 1;
}

std::optional<int> DABimodule::find_generator(std::string_view name) const {
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (gens_[k].name == name) return static_cast<int>(k);
    return std::nullopt;
}

int DABimodule::generator_index(std::string_view name) const {
    auto g = find_generator(name);
    if (!g) throw std::invalid_argument(name_ + ": no generator named " + std::string(name));
    return *g;
}

void DABimodule::add_arrow(int from, int to, Path out, std::vector<Path> in) {
    if (from < 0 || from >= generator_count() || to < 0 || to >= generator_count())
        throw std::invalid_argument(name_ + ": arrow between unknown generators");
    auto& entry = table_[static_cast<std::size_t>(from)];
    auto it = entry.find(in);
    if (it == entry.end()) it = entry.emplace(std::move(in), OutSum{}).first;
    toggle_term(it->second, OutTerm{std::move(out), to});
    if (it->second.empty()) entry.erase(it);
}

void DABimodule::add_family(ArrowFamily f) {
    if (f.from < 0 || f.from >= generator_count() || f.to < 0 || f.to >= generator_count())
        throw std::invalid_argument(name_ + ": family between unknown generators");
    bool scaled = f.out.scaled;
    for (const auto& p : f.in) scaled = scaled || p.scaled;
    if (!scaled) throw std::invalid_argument(name_ + ": family does not depend on k");
    if (f.in.empty()) throw std::invalid_argument(name_ + ": a family needs inputs");
    families_by_gen_[static_cast<std::size_t>(f.from)].push_back(families_.size());
    families_.push_back(std::move(f));
}

std::size_t DABimodule::concrete_term_count() const {
    std::size_t n = 0;
    for (const auto& e : table_)
        for (const auto& [k, v] : e) n += v.size();
    return n;
}

std::size_t DABimodule::max_arity() const {
    std::size_t n = 0;
    for (const auto& e : table_)
        for (const auto& [k, v] : e) n = std::max(n, k.size());
    for (const auto& f : families_) n = std::max(n, f.in.size());
    return n;
}

OutSum DABimodule::delta(int x, const std::vector<Path>& inputs) const {
    const auto& gx = generator(x);
    if (input_len_bound_)
        for (const auto& p : inputs)
            if (p.length() > *input_len_bound_)
                throw OutOfDomain(name_ + ": input " + in_alg_->to_string(p) + " is longer than the table bound " +
                                  std::to_string(*input_len_bound_));
    if (inputs.size() == 1 && inputs[0].is_idempotent()) {
        if (inputs[0].start != gx.right) return {};
        return {OutTerm{Path::idempotent(gx.left), x}};
    }
    int v = gx.right;
    for (const auto& p : inputs) {
        if (p.is_idempotent() || p.start != v) return {};
        v = p.end;
    }
    OutSum out;
    const auto& entry = table_[static_cast<std::size_t>(x)];
    if (auto it = entry.find(inputs); it != entry.end()) out = it->second;
    for (std::size_t fi : families_by_gen_[static_cast<std::size_t>(x)]) {
        const auto& f = families_[fi];
        if (f.in.size() != inputs.size()) continue;
        std::optional<std::size_t> slot;
        for (std::size_t s = 0; s < f.in.size(); ++s)
            if (f.in[s].scaled) {
                slot = s;
                break;
            }
        std::vector<int> ks;
        if (!slot) {
            ks.push_back(f.k_min);
        } else {
            for (int k = f.k_min;; ++k) {
                auto inst = instantiate(*in_alg_, f.in[*slot], k);
                if (!inst || inst->length() > inputs[*slot].length()) break;
                if (*inst == inputs[*slot]) {
                    ks.push_back(k);
                    break;
                }
            }
        }
        for (int k : ks) {
            bool match = true;
            for (std::size_t s = 0; s < f.in.size() && match; ++s) {
                auto inst = instantiate(*in_alg_, f.in[s], k);
                match = inst && *inst == inputs[s];
            }
            if (!match) continue;
            if (auto o = instantiate(*out_alg_, f.out, k)) toggle_term(out, OutTerm{*o, f.to});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ConcreteArrow> DABimodule::arrows_from(int x, std::optional<std::size_t> max_input_len) const {
    std::vector<ConcreteArrow> out;
    for (const auto& [in, sum] : table_[static_cast<std::size_t>(x)])
        for (const auto& t : sum) out.push_back({x, t.gen, t.out, in});
    const auto& fams = families_by_gen_[static_cast<std::size_t>(x)];
    if (!fams.empty() && !max_input_len)
        throw std::logic_error(name_ + ": listing family arrows needs an input length bound");
    for (std::size_t fi : fams) {
        const auto& f = families_[fi];
        for (int k = f.k_min;; ++k) {
            std::vector<Path> in;
            bool stop = false;
            for (const auto& pat : f.in) {
                auto inst = instantiate(*in_alg_, pat, k);
                if (!inst || inst->length() > *max_input_len) {
                    stop = true;
                    break;
                }
                in.push_back(std::move(*inst));
            }
            if (stop) break;
            if (auto o = instantiate(*out_alg_, f.out, k)) out.push_back({x, f.to, *o, std::move(in)});
        }
    }
    return out;
}

std::vector<ConcreteArrow> DABimodule::all_arrows(std::optional<std::size_t> max_input_len) const {
    std::vector<ConcreteArrow> out;
    for (int x = 0; x < generator_count(); ++x) {
        auto a = arrows_from(x, max_input_len);
        out.insert(out.end(), std::make_move_iterator(a.begin()), std::make_move_iterator(a.end()));
    }
    return out;
}

std::string DABimodule::describe_arrow(const ConcreteArrow& a) const {
    std::ostringstream os;
    os << generator(a.from).name << "; ";
    if (a.in.empty()) os << "-";
    for (std::size_t k = 0; k < a.in.size(); ++k) os << (k ? ", " : "") << in_alg_->to_string(a.in[k]);
    os << " -> " << out_alg_->to_string(a.out) << " (x) " << generator(a.to).name;
    return os.str();
}

std::vector<std::string> DABimodule::check_idempotents() const {
    std::vector<std::string> problems;
    auto check = [&](const ConcreteArrow& a) {
        const auto& gf = generator(a.from);
        const auto& gt = generator(a.to);
        if (a.out.start != gf.left || a.out.end != gt.left)
            problems.push_back("output idempotents: " + describe_arrow(a));
        if (!chain_ok(a.in, gf.right, gt.right)) problems.push_back("input idempotents: " + describe_arrow(a));
        for (const auto& p : a.in)
            if (p.is_idempotent()) problems.push_back("idempotent input: " + describe_arrow(a));
    };
    for (int x = 0; x < generator_count(); ++x)
        for (const auto& [in, sum] : table_[static_cast<std::size_t>(x)])
            for (const auto& t : sum) check({x, t.gen, t.out, in});
    for (const auto& f : families_)
        for (int k = f.k_min; k < f.k_min + 3; ++k) {
            ConcreteArrow a{f.from, f.to, {}, {}};
            bool ok = true;
            for (const auto& pat : f.in) {
                auto inst = instantiate(*in_alg_, pat, k);
                if (!inst) ok = false;
                else a.in.push_back(*inst);
            }
            auto o = instantiate(*out_alg_, f.out, k);
            if (!ok || !o) continue;
            a.out = *o;
            check(a);
        }
    return problems;
}

std::vector<std::string> DABimodule::check_gradings(int k_max) const {
    std::vector<std::string> problems;
    auto check = [&](const ConcreteArrow& a) {
        const auto& gf = generator(a.from);
        const auto& gt = generator(a.to);
        if (gt.hom != gf.hom + static_cast<int>(a.in.size()) - 1)
            problems.push_back("homological degree: " + describe_arrow(a));
        Grading lhs = gf.grading;
        for (const auto& p : a.in) lhs += in_hom_.apply(in_alg_->grading(p));
        Grading rhs = out_hom_.apply(out_alg_->grading(a.out)) + gt.grading;
        if (lhs != rhs)
            problems.push_back("grading " + lhs.to_string() + " vs " + rhs.to_string() + ": " + describe_arrow(a));
    };
    for (int x = 0; x < generator_count(); ++x)
        for (const auto& [in, sum] : table_[static_cast<std::size_t>(x)])
            for (const auto& t : sum) check({x, t.gen, t.out, in});
    for (const auto& f : families_)
        for (int k = f.k_min; k <= std::max(k_max, f.k_min); ++k) {
            ConcreteArrow a{f.from, f.to, {}, {}};
            bool ok = true;
            for (const auto& pat : f.in) {
                auto inst = instantiate(*in_alg_, pat, k);
                if (!inst) ok = false;
                else a.in.push_back(*inst);
            }
            auto o = instantiate(*out_alg_, f.out, k);
            if (!ok || !o) continue;
            a.out = *o;
            check(a);
        }
    return problems;
}

// ---------------------------------------------------------- verification

namespace {

struct EvalKey {
    int gen;
    std::vector<Path> in;
    friend bool operator==(const EvalKey&, const EvalKey&) = default;
};
struct EvalKeyHash {
    std::size_t operator()(const EvalKey& k) const noexcept {
        return PathSeqHash{}(k.in) * 31u + static_cast<std::size_t>(k.gen);
    }
};

}  // namespace

StructureReport verify_structure(const DABimodule& M, const VerifyBounds& b) {
    StructureReport rep;
    std::size_t len = b.basis_len;
    if (M.has_families()) len = std::max(len, static_cast<std::size_t>(2 * b.k_max + 1));
    if (auto bound = M.input_len_bound(); bound && 2 * len > *bound) {
        len = std::max<std::size_t>(1, *bound / 2);
        rep.clamped = true;
    }
    rep.pool_len = len;
    const auto& A = *M.in_algebra();
    const auto& O = *M.out_algebra();
    std::vector<std::vector<Path>> pool(static_cast<std::size_t>(A.vertex_count()));
    for (const auto& p : A.basis(len))
        if (!p.is_idempotent()) pool[static_cast<std::size_t>(p.start)].push_back(p);

    std::unordered_map<EvalKey, OutSum, EvalKeyHash> cache;
    auto delta = [&](int x, std::vector<Path> in) -> const OutSum& {
        EvalKey key{x, std::move(in)};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        OutSum val = M.delta(x, key.in);
        return cache.emplace(std::move(key), std::move(val)).first->second;
    };

    std::vector<Path> seq;
    auto residual = [&](int x) {
        const std::size_t n = seq.size();
        std::vector<OutTerm> acc;
        for (std::size_t q = 0; q <= n; ++q) {
            OutSum first = delta(x, std::vector<Path>(seq.begin(), seq.begin() + static_cast<long>(q)));
            for (const auto& t1 : first) {
                const OutSum& second = delta(t1.gen, std::vector<Path>(seq.begin() + static_cast<long>(q), seq.end()));
                for (const auto& t2 : second)
                    for (auto& p : O.multiply(t1.out, t2.out)) acc.push_back({std::move(p), t2.gen});
            }
        }
        for (std::size_t s = 0; s + 1 < n; ++s)
            for (auto& d : A.multiply(seq[s], seq[s + 1])) {
                std::vector<Path> merged(seq.begin(), seq.begin() + static_cast<long>(s));
                merged.push_back(d);
                merged.insert(merged.end(), seq.begin() + static_cast<long>(s + 2), seq.end());
                const OutSum& r = delta(x, merged);
                acc.insert(acc.end(), r.begin(), r.end());
            }
        gf2_normalize(acc);
        return acc;
    };

    std::function<void(int, int)> walk = [&](int x, int v) {
        ++rep.sequences_checked;
        auto r = residual(x);
        if (!r.empty()) {
            ++rep.failure_count;
            if (rep.failures.size() < 5) rep.failures.push_back({x, seq, r});
        }
        if (seq.size() >= b.max_inputs) return;
        for (const auto& p : pool[static_cast<std::size_t>(v)]) {
            seq.push_back(p);
            walk(x, p.end);
            seq.pop_back();
        }
    };
    for (int x = 0; x < M.generator_count(); ++x) walk(x, M.generator(x).right);
    return rep;
}

std::string describe_failure(const DABimodule& M, const StructureFailure& f) {
    std::ostringstream os;
    os << M.generator(f.gen).name << "; ";
    for (std::size_t k = 0; k < f.inputs.size(); ++k) os << (k ? ", " : "") << M.in_algebra()->to_string(f.inputs[k]);
    os << " : residual";
    for (const auto& t : f.residual) os << " " << M.out_algebra()->to_string(t.out) << "(x)" << M.generator(t.gen).name;
    return os.str();
}

}  // namespace dabim
