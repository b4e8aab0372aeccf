#include <algorithm>
#include <map>
#include <sstream>

#include "dabim/dastruct.hpp"

namespace dabim {

namespace {

bool same_algebra(const PresentedAlgebra& a, const PresentedAlgebra& b) {
    return &a == &b || (a.name() == b.name() && a.quiver().arrows().size() == b.quiver().arrows().size() &&
                        a.vertex_count() == b.vertex_count());
}

void require_length_homogeneous(const PresentedAlgebra& A) {
    for (const auto& r : A.rules())
        for (const auto& t : r.rhs)
            if (t.length() != r.lhs.length())
                throw std::logic_error(A.name() + ": splitting inputs needs length preserving relations");
}

/// Pairs (p, q) of non-idempotent basis paths with d among the terms of p q.
class Factorizer {
public:
    explicit Factorizer(const PresentedAlgebra& A) : A_(A) { require_length_homogeneous(A); }
    const std::vector<std::pair<Path, Path>>& operator()(const Path& d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        std::vector<std::pair<Path, Path>> out;
        for (const auto& p : A_.basis_from(d.start, d.length() - 1)) {
            if (p.is_idempotent()) continue;
            std::size_t rest = d.length() - p.length();
            for (const auto& q : A_.basis_from(p.end, rest)) {
                if (q.length() != rest) continue;
                auto prod = A_.multiply(p, q);
                if (std::find(prod.begin(), prod.end(), d) != prod.end()) out.emplace_back(p, q);
            }
        }
        return cache_.emplace(d, std::move(out)).first->second;
    }

private:
    const PresentedAlgebra& A_;
    std::unordered_map<Path, std::vector<std::pair<Path, Path>>, PathHash> cache_;
};

std::vector<Path> concat_inputs(const std::vector<Path>& a, const std::vector<Path>& b) {
    std::vector<Path> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

}  // namespace

DAMorphism::DAMorphism(std::string name, BimodulePtr source, BimodulePtr target, int degree)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), degree_(degree),
      table_(static_cast<std::size_t>(source_->generator_count())) {
    if (!same_algebra(*source_->out_algebra(), *target_->out_algebra()) ||
        !same_algebra(*source_->in_algebra(), *target_->in_algebra()))
        throw std::invalid_argument(name_ + ": source and target live over different algebras");
}

DAMorphism DAMorphism::identity(const BimodulePtr& M) {
    DAMorphism f("id", M, M, 0);
    for (int x = 0; x < M->generator_count(); ++x) f.add(x, x, Path::idempotent(M->generator(x).left), {});
    return f;
}

void DAMorphism::add(int from, int to, Path out, std::vector<Path> in) {
    if (from < 0 || from >= source_->generator_count() || to < 0 || to >= target_->generator_count())
        throw std::invalid_argument(name_ + ": component between unknown generators");
    auto& entry = table_[static_cast<std::size_t>(from)];
    auto it = entry.find(in);
    if (it == entry.end()) it = entry.emplace(std::move(in), OutSum{}).first;
    toggle_term(it->second, OutTerm{std::move(out), to});
    if (it->second.empty()) entry.erase(it);
}

void DAMorphism::add(std::string_view from, std::string_view to, std::string_view out,
                     std::vector<std::string> in) {
    const auto& O = *target_->out_algebra();
    const auto& I = *source_->in_algebra();
    auto o = O.parse_element(out);
    std::vector<Path> ins;
    for (const auto& s : in) {
        auto e = I.parse_element(s);
        if (e.size() != 1) throw std::invalid_argument(name_ + ": input " + s + " is not a single path");
        ins.push_back(e.front());
    }
    for (auto& t : o) add(source_->generator_index(from), target_->generator_index(to), t, ins);
}

std::size_t DAMorphism::term_count() const {
    std::size_t n = 0;
    for (const auto& e : table_)
        for (const auto& [k, v] : e) n += v.size();
    return n;
}

OutSum DAMorphism::eval(int x, const std::vector<Path>& inputs) const {
    const auto& entry = table_.at(static_cast<std::size_t>(x));
    auto it = entry.find(inputs);
    if (it == entry.end()) return {};
    OutSum s = it->second;
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<ConcreteArrow> DAMorphism::arrows_from(int x) const {
    std::vector<ConcreteArrow> out;
    for (const auto& [in, sum] : table_.at(static_cast<std::size_t>(x)))
        for (const auto& t : sum) out.push_back({x, t.gen, t.out, in});
    return out;
}

DAMorphism DAMorphism::operator+(const DAMorphism& o) const {
    if (o.source_ != source_ || o.target_ != target_)
        throw std::invalid_argument("adding morphisms with different source or target");
    DAMorphism r = *this;
    r.name_ = name_ + "+" + o.name_;
    for (int x = 0; x < source_->generator_count(); ++x)
        for (auto& a : o.arrows_from(x)) r.add(a.from, a.to, a.out, a.in);
    return r;
}

bool operator==(const DAMorphism& a, const DAMorphism& b) {
    if (a.source_->generator_count() != b.source_->generator_count()) return false;
    for (std::size_t x = 0; x < a.table_.size(); ++x) {
        const auto& ea = a.table_[x];
        const auto& eb = b.table_[x];
        if (ea.size() != eb.size()) return false;
        for (const auto& [k, v] : ea) {
            auto it = eb.find(k);
            if (it == eb.end()) return false;
            auto sa = v, sb = it->second;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb) return false;
        }
    }
    return true;
}

std::vector<std::string> DAMorphism::check_gradings() const {
    std::vector<std::string> problems;
    const auto& S = *source_;
    const auto& T = *target_;
    for (int x = 0; x < S.generator_count(); ++x)
        for (const auto& a : arrows_from(x)) {
            const auto& gx = S.generator(a.from);
            const auto& gy = T.generator(a.to);
            std::ostringstream what;
            what << name_ << ": " << gx.name << " -> " << T.out_algebra()->to_string(a.out) << " (x) " << gy.name
                 << " with " << a.in.size() << " inputs";
            if (gy.hom != gx.hom + static_cast<int>(a.in.size()) + degree_)
                problems.push_back("homological degree: " + what.str());
            Grading lhs = gx.grading;
            for (const auto& p : a.in) lhs += S.in_hom().apply(S.in_algebra()->grading(p));
            if (lhs != T.out_hom().apply(T.out_algebra()->grading(a.out)) + gy.grading)
                problems.push_back("grading: " + what.str());
        }
    return problems;
}

DAMorphism compose(const DAMorphism& second, const DAMorphism& first) {
    if (first.target() != second.source()) throw std::invalid_argument("compose: morphisms do not meet");
    const auto& O = *first.target()->out_algebra();
    DAMorphism r(second.name() + "." + first.name(), first.source(), second.target(),
                 first.degree() + second.degree());
    for (int x = 0; x < first.source()->generator_count(); ++x)
        for (const auto& a : first.arrows_from(x))
            for (const auto& b : second.arrows_from(a.to))
                for (auto& p : O.multiply(a.out, b.out)) r.add(x, b.to, p, concat_inputs(a.in, b.in));
    return r;
}

DAMorphism differential(const DAMorphism& f, std::optional<std::size_t> max_input_len) {
    const auto& X = *f.source();
    const auto& Y = *f.target();
    const auto& O = *X.out_algebra();
    DAMorphism r("d(" + f.name() + ")", f.source(), f.target(), f.degree() - 1);
    Factorizer split(*X.in_algebra());
    for (int x = 0; x < X.generator_count(); ++x) {
        for (const auto& a : f.arrows_from(x)) {
            for (const auto& b : Y.arrows_from(a.to, max_input_len))
                for (auto& p : O.multiply(a.out, b.out)) r.add(x, b.to, p, concat_inputs(a.in, b.in));
            for (std::size_t s = 0; s < a.in.size(); ++s)
                for (const auto& [p, q] : split(a.in[s])) {
                    std::vector<Path> in(a.in.begin(), a.in.begin() + static_cast<long>(s));
                    in.push_back(p);
                    in.push_back(q);
                    in.insert(in.end(), a.in.begin() + static_cast<long>(s + 1), a.in.end());
                    r.add(x, a.to, a.out, std::move(in));
                }
        }
        for (const auto& a : X.arrows_from(x, max_input_len))
            for (const auto& b : f.arrows_from(a.to))
                for (auto& p : O.multiply(a.out, b.out)) r.add(x, b.to, p, concat_inputs(a.in, b.in));
    }
    return r;
}

StructureReport verify_cycle(const DAMorphism& f, const VerifyBounds& b) {
    const auto& X = *f.source();
    const auto& Y = *f.target();
    StructureReport rep;
    std::size_t len = b.basis_len;
    if (X.has_families() || Y.has_families()) len = std::max(len, static_cast<std::size_t>(2 * b.k_max + 1));
    for (auto bound : {X.input_len_bound(), Y.input_len_bound()})
        if (bound && 2 * len > *bound) {
            len = std::max<std::size_t>(1, *bound / 2);
            rep.clamped = true;
        }
    rep.pool_len = len;
    const auto& A = *X.in_algebra();
    const auto& O = *X.out_algebra();
    std::vector<std::vector<Path>> pool(static_cast<std::size_t>(A.vertex_count()));
    for (const auto& p : A.basis(len))
        if (!p.is_idempotent()) pool[static_cast<std::size_t>(p.start)].push_back(p);

    std::vector<Path> seq;
    auto slice = [&](std::size_t a, std::size_t e) {
        return std::vector<Path>(seq.begin() + static_cast<long>(a), seq.begin() + static_cast<long>(e));
    };
    auto residual = [&](int x) {
        const std::size_t n = seq.size();
        std::vector<OutTerm> acc;
        for (std::size_t q = 0; q <= n; ++q) {
            for (const auto& t1 : f.eval(x, slice(0, q)))
                for (const auto& t2 : Y.delta(t1.gen, slice(q, n)))
                    for (auto& p : O.multiply(t1.out, t2.out)) acc.push_back({std::move(p), t2.gen});
            for (const auto& t1 : X.delta(x, slice(0, q)))
                for (const auto& t2 : f.eval(t1.gen, slice(q, n)))
                    for (auto& p : O.multiply(t1.out, t2.out)) acc.push_back({std::move(p), t2.gen});
        }
        for (std::size_t s = 0; s + 1 < n; ++s)
            for (auto& d : A.multiply(seq[s], seq[s + 1])) {
                std::vector<Path> merged = slice(0, s);
                merged.push_back(d);
                auto tail = slice(s + 2, n);
                merged.insert(merged.end(), tail.begin(), tail.end());
                auto r = f.eval(x, merged);
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
    for (int x = 0; x < X.generator_count(); ++x) walk(x, X.generator(x).right);
    return rep;
}

}  // namespace dabim
