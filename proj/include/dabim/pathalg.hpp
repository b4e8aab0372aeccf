#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dabim/grading.hpp"

namespace dabim {

struct QuiverArrow {
    std::string name;
    int source = 0;
    int target = 0;
    Grading grading;
};

class Quiver {
public:
    Quiver(int vertex_count, std::size_t grading_dim);

    int add_arrow(std::string name, int source, int target, Grading grading);

    int vertex_count() const { return vertex_count_; }
    std::size_t grading_dim() const { return grading_dim_; }
    const std::vector<QuiverArrow>& arrows() const { return arrows_; }
    const QuiverArrow& arrow(int a) const { return arrows_.at(static_cast<std::size_t>(a)); }
    const std::vector<int>& out_arrows(int v) const { return out_.at(static_cast<std::size_t>(v)); }
    std::optional<int> find(std::string_view name) const;
    /// The unique arrow from s to t, if there is exactly one.
    std::optional<int> find_between(int s, int t) const;

private:
    int vertex_count_;
    std::size_t grading_dim_;
    std::vector<QuiverArrow> arrows_;
    std::vector<std::vector<int>> out_;
};

/// A path in a quiver, read left to right. Idempotents are paths of length zero.
struct Path {
    int start = 0;
    int end = 0;
    std::vector<int> arrows;

    static Path idempotent(int v) { return Path{v, v, {}}; }
    std::size_t length() const { return arrows.size(); }
    bool is_idempotent() const { return arrows.empty(); }

    friend bool operator==(const Path&, const Path&) = default;
};

/// Term order: length first, then lexicographic on arrow indices.
std::strong_ordering operator<=>(const Path& a, const Path& b);

struct PathHash {
    std::size_t operator()(const Path& p) const noexcept;
};
struct PathSeqHash {
    std::size_t operator()(const std::vector<Path>& ps) const noexcept;
};

/// Reduce a vector to a canonical mod-2 sum: sorted, pairs cancelled.
template <class T, class Less = std::less<T>>
void gf2_normalize(std::vector<T>& v, Less less = Less{}) {
    std::sort(v.begin(), v.end(), less);
    std::vector<T> out;
    out.reserve(v.size());
    for (std::size_t k = 0; k < v.size();) {
        std::size_t j = k;
        while (j < v.size() && !less(v[k], v[j]) && !less(v[j], v[k])) ++j;
        if ((j - k) % 2 == 1) out.push_back(std::move(v[k]));
        k = j;
    }
    v = std::move(out);
}

/// lhs -> sum of rhs paths (empty rhs means lhs is zero)
struct RewriteRule {
    Path lhs;
    std::vector<Path> rhs;
};

struct NamedElement {
    std::string name;
    std::vector<Path> terms;
};

class PresentedAlgebra;
using AlgebraPtr = std::shared_ptr<const PresentedAlgebra>;

/// A mod-2 sum of irreducible paths of one algebra.
class AlgebraElement {
public:
    AlgebraElement(const PresentedAlgebra* alg, std::vector<Path> terms);

    const PresentedAlgebra& algebra() const { return *alg_; }
    const std::vector<Path>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.alg_ == b.alg_ && a.terms_ == b.terms_;
    }
    std::string to_string() const;

private:
    const PresentedAlgebra* alg_;
    std::vector<Path> terms_;
};

struct CriticalPair {
    Path word;
    std::vector<Path> via_first;
    std::vector<Path> via_second;
    std::string note;
};

struct ConfluenceReport {
    std::size_t pairs_checked = 0;
    std::vector<CriticalPair> failures;
    bool confluent() const { return failures.empty(); }
};

class PresentedAlgebra {
public:
    /// Builds and validates a presentation. With enforce_term_order each rule
    /// must rewrite to strictly smaller paths.
    static AlgebraPtr create(std::string name, Quiver quiver, std::vector<RewriteRule> rules,
                             std::vector<NamedElement> named = {}, bool vertex_notation = false,
                             bool enforce_term_order = true);

    const std::string& name() const { return name_; }
    const Quiver& quiver() const { return quiver_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    int vertex_count() const { return quiver_.vertex_count(); }
    std::size_t grading_dim() const { return quiver_.grading_dim(); }
    bool vertex_notation() const { return vertex_notation_; }

    bool composable(const Path& a, const Path& b) const { return a.end == b.start; }
    Path concat(const Path& a, const Path& b) const;
    Path arrow_path(int a) const;

    /// Normal form of an arbitrary path as a mod-2 sum of irreducible paths.
    std::vector<Path> normal_form(const Path& p) const;
    std::vector<Path> normal_form(const std::vector<Path>& sum) const;
    /// Product of two paths; zero when they do not compose.
    std::vector<Path> multiply(const Path& a, const Path& b) const;
    std::vector<Path> multiply(const std::vector<Path>& a, const std::vector<Path>& b) const;
    /// Product known to be a single path or zero; throws otherwise.
    std::optional<Path> multiply_monomial(const Path& a, const Path& b) const;
    bool is_irreducible(const Path& p) const;
    Grading grading(const Path& p) const;

    /// Irreducible paths of length at most max_len, in term order.
    std::vector<Path> basis(std::size_t max_len) const;
    std::vector<Path> basis_from(int vertex, std::size_t max_len) const;

    const std::vector<NamedElement>& named() const { return named_; }
    std::optional<int> named_index(std::string_view name) const;
    /// The n-th power of a named element, cut down to the given vertex.
    /// Returns nullopt when it vanishes; throws when it is not a single path.
    std::optional<Path> named_power_at(int named_idx, int vertex, int power) const;

    AlgebraElement element(const Path& p) const;
    AlgebraElement element(std::vector<Path> terms) const;
    AlgebraElement idempotent(int v) const { return element(Path::idempotent(v)); }
    AlgebraElement one() const;
    AlgebraElement zero() const { return AlgebraElement(this, {}); }

    std::string to_string(const Path& p) const;
    std::string to_string(const std::vector<Path>& sum) const;
    /// Parses "I3", "(0|1|0)", "(2)" or space separated arrow names. The
    /// result is the literal path, not reduced.
    Path parse_path(std::string_view text) const;
    /// Parses "0" or "p + q + ...", reducing each term.
    std::vector<Path> parse_element(std::string_view text) const;

private:
    PresentedAlgebra() = default;
    struct Match {
        std::size_t pos;
        std::size_t rule;
    };
    std::optional<Match> find_redex(const Path& p) const;
    Path apply_rule_at(const Path& p, std::size_t pos, std::size_t len, const Path& rhs) const;

    friend ConfluenceReport check_confluence(const PresentedAlgebra& alg, std::size_t max_word_len);

    std::string name_;
    Quiver quiver_{0, 0};
    std::vector<RewriteRule> rules_;
    std::vector<std::vector<std::size_t>> rules_by_first_;
    std::vector<NamedElement> named_;
    bool vertex_notation_ = false;
};

/// Checks every overlap and inclusion ambiguity between rule left hand sides.
ConfluenceReport check_confluence(const PresentedAlgebra& alg, std::size_t max_word_len = 16);

/// Basis elements grouped by (left idempotent, right idempotent, grading).
struct BasisBucket {
    int left;
    int right;
    Grading grading;
    std::vector<Path> paths;
};
std::vector<BasisBucket> graded_basis(const PresentedAlgebra& alg, std::size_t max_len);

class AlgebraHom {
public:
    AlgebraHom(std::string name, AlgebraPtr source, AlgebraPtr target, std::vector<int> vertex_map,
               std::vector<std::vector<Path>> arrow_images, GradingHom grading_hom);

    const std::string& name() const { return name_; }
    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const GradingHom& grading_hom() const { return grading_hom_; }
    int vertex_image(int v) const { return vertex_map_.at(static_cast<std::size_t>(v)); }

    std::vector<Path> apply(const Path& p) const;
    std::vector<Path> apply(const std::vector<Path>& sum) const;

    /// Empty when the data define a graded algebra map.
    std::vector<std::string> validate() const;
    bool surjective_on_arrows() const;

    /// For every target path, the source basis paths (length <= max_len)
    /// whose image contains it.
    std::unordered_map<Path, std::vector<Path>, PathHash> fibers(std::size_t max_source_len) const;

private:
    std::string name_;
    AlgebraPtr source_, target_;
    std::vector<int> vertex_map_;
    std::vector<std::vector<Path>> arrow_images_;
    GradingHom grading_hom_;
};

/// Same quiver and relations, gradings pushed through h.
AlgebraPtr collapse_grading(const PresentedAlgebra& alg, const GradingHom& h, std::string name);

/// Corner algebra on a subset of vertices. Paths that leave the subset and
/// come back become new arrows; relations among the new arrows are found by
/// enumerating words up to max_word_len.
AlgebraPtr truncate(const PresentedAlgebra& alg, const std::vector<int>& vertices, std::string name,
                    std::size_t max_excursion_len = 6, std::size_t max_word_len = 4);

struct DegreeComparison {
    std::int64_t degree = 0;
    std::size_t dim_space = 0;
    std::size_t dim_kernel = 0;
    std::size_t dim_ideal = 0;
    bool equal = false;
};

struct KernelIdealReport {
    /// Largest degree for which paths of length <= max_len give a complete basis.
    std::int64_t max_complete_degree = -1;
    std::vector<DegreeComparison> per_degree;
    bool pass() const;
};

/// Compares ker(phi) with the two-sided ideal generated by the given elements,
/// one degree at a time. Needs a Z-graded source with non-negative arrow degrees.
KernelIdealReport compare_kernel_with_ideal(const AlgebraHom& phi,
                                            const std::vector<std::vector<Path>>& generators,
                                            std::size_t max_len);

/// Membership of a homogeneous element in a two-sided ideal; nullopt when the
/// length bound is too small to decide.
std::optional<bool> ideal_contains(const PresentedAlgebra& alg,
                                   const std::vector<std::vector<Path>>& generators,
                                   const std::vector<Path>& element, std::size_t max_len);

}  // namespace dabim
