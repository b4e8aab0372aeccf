#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dabim/grading.hpp"
#include "dabim/pathalg.hpp"

namespace dabim {

/// base * U^power, where power = offset + k for a scaled pattern and
/// offset otherwise. U is a named central element of the algebra.
struct PathPattern {
    Path base;
    int central = -1;
    int offset = 0;
    bool scaled = false;

    static PathPattern plain(Path p) { return PathPattern{std::move(p), -1, 0, false}; }
    static PathPattern power(Path base, int central, int offset, bool scaled) {
        return PathPattern{std::move(base), central, offset, scaled};
    }
    friend bool operator==(const PathPattern&, const PathPattern&) = default;
};

/// Instance of a pattern at parameter k, or nullopt when it vanishes.
std::optional<Path> instantiate(const PresentedAlgebra& alg, const PathPattern& pat, int k);
std::string pattern_to_string(const PresentedAlgebra& alg, const PathPattern& pat);
/// Parses "<path>" or "<path> * <name>^<exp>" with exp an integer, "k" or "k+n".
PathPattern parse_pattern(const PresentedAlgebra& alg, std::string_view text);

struct DAGenerator {
    std::string name;
    int left = 0;
    int right = 0;
    int hom = 0;
    Grading grading;
};

/// out (x) generator
struct OutTerm {
    Path out;
    int gen = 0;
    friend bool operator==(const OutTerm&, const OutTerm&) = default;
    friend std::strong_ordering operator<=>(const OutTerm& a, const OutTerm& b) {
        if (auto c = a.gen <=> b.gen; c != 0) return c;
        return a.out <=> b.out;
    }
};
using OutSum = std::vector<OutTerm>;

struct ConcreteArrow {
    int from = 0;
    int to = 0;
    Path out;
    std::vector<Path> in;
};

/// Infinitely many arrows indexed by k >= k_min.
struct ArrowFamily {
    int from = 0;
    int to = 0;
    PathPattern out;
    std::vector<PathPattern> in;
    int k_min = 0;
};

/// Raised when a bounded table is evaluated outside the inputs it covers.
class OutOfDomain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ArrowTable = std::vector<std::unordered_map<std::vector<Path>, OutSum, PathSeqHash>>;

/// Type DA bimodule over (output algebra, input algebra) with zero
/// differentials on both algebras. Structure maps are stored as a table of
/// concrete arrows together with finitely many parametrised families.
class DABimodule {
public:
    DABimodule(std::string name, AlgebraPtr out_alg, AlgebraPtr in_alg, GradingHom out_hom, GradingHom in_hom);

    int add_generator(DAGenerator g);
    /// Adds out (x) to to delta(from; in). Adding a term twice cancels it.
    void add_arrow(int from, int to, Path out, std::vector<Path> in);
    void add_family(ArrowFamily f);
    void set_input_len_bound(std::optional<std::size_t> b) { input_len_bound_ = b; }
    void set_name(std::string n) { name_ = std::move(n); }

    const std::string& name() const { return name_; }
    const AlgebraPtr& out_algebra() const { return out_alg_; }
    const AlgebraPtr& in_algebra() const { return in_alg_; }
    const GradingHom& out_hom() const { return out_hom_; }
    const GradingHom& in_hom() const { return in_hom_; }
    std::size_t grading_dim() const { return out_hom_.rows(); }

    const std::vector<DAGenerator>& generators() const { return gens_; }
    const DAGenerator& generator(int x) const { return gens_.at(static_cast<std::size_t>(x)); }
    int generator_count() const { return static_cast<int>(gens_.size()); }
    std::optional<int> find_generator(std::string_view name) const;
    int generator_index(std::string_view name) const;

    const ArrowTable& table() const { return table_; }
    const std::vector<ArrowFamily>& families() const { return families_; }
    bool has_families() const { return !families_.empty(); }
    /// When set, the table is exact only for inputs of at most this length.
    std::optional<std::size_t> input_len_bound() const { return input_len_bound_; }
    std::size_t concrete_term_count() const;
    std::size_t max_arity() const;

    /// delta^1_{n+1}(x; inputs), with strict unitality built in.
    OutSum delta(int x, const std::vector<Path>& inputs) const;
    /// Arrows out of x; family instances are listed while every input has
    /// length at most max_input_len.
    std::vector<ConcreteArrow> arrows_from(int x, std::optional<std::size_t> max_input_len) const;
    std::vector<ConcreteArrow> all_arrows(std::optional<std::size_t> max_input_len) const;

    /// Idempotent compatibility of every concrete arrow and family pattern.
    std::vector<std::string> check_idempotents() const;
    /// Homological and intrinsic grading of every arrow, families up to k_max.
    std::vector<std::string> check_gradings(int k_max) const;

    std::string describe_arrow(const ConcreteArrow& a) const;

private:
    std::string name_;
    AlgebraPtr out_alg_, in_alg_;
    GradingHom out_hom_, in_hom_;
    std::vector<DAGenerator> gens_;
    ArrowTable table_;
    std::vector<ArrowFamily> families_;
    std::vector<std::vector<std::size_t>> families_by_gen_;
    std::optional<std::size_t> input_len_bound_;
};

using BimodulePtr = std::shared_ptr<const DABimodule>;

void toggle_term(OutSum& sum, OutTerm t);

struct VerifyBounds {
    std::size_t max_inputs = 3;
    std::size_t basis_len = 4;
    int k_max = 4;
};

struct StructureFailure {
    int gen = 0;
    std::vector<Path> inputs;
    OutSum residual;
};

struct StructureReport {
    std::size_t sequences_checked = 0;
    std::size_t pool_len = 0;
    bool clamped = false;
    std::size_t failure_count = 0;
    std::vector<StructureFailure> failures;  // first few only
    bool pass() const { return failure_count == 0; }
};

/// Checks the DA structure relation on every composable sequence of
/// non-idempotent basis inputs of bounded number and length.
StructureReport verify_structure(const DABimodule& M, const VerifyBounds& b);
std::string describe_failure(const DABimodule& target, const StructureFailure& f);

// ------------------------------------------------------------- morphisms

/// Morphism of DA bimodules, stored as a finite table of components.
/// Degree 0 for maps and 1 for homotopies.
class DAMorphism {
public:
    DAMorphism(std::string name, BimodulePtr source, BimodulePtr target, int degree = 0);

    static DAMorphism identity(const BimodulePtr& M);

    void add(int from, int to, Path out, std::vector<Path> in);
    void add(std::string_view from, std::string_view to, std::string_view out, std::vector<std::string> in);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const BimodulePtr& source() const { return source_; }
    const BimodulePtr& target() const { return target_; }
    int degree() const { return degree_; }
    const ArrowTable& table() const { return table_; }
    std::size_t term_count() const;
    bool is_zero() const { return term_count() == 0; }

    OutSum eval(int x, const std::vector<Path>& inputs) const;
    std::vector<ConcreteArrow> arrows_from(int x) const;

    DAMorphism operator+(const DAMorphism& o) const;
    friend bool operator==(const DAMorphism& a, const DAMorphism& b);

    std::vector<std::string> check_gradings() const;

private:
    std::string name_;
    BimodulePtr source_, target_;
    int degree_;
    ArrowTable table_;
};

/// second after first
DAMorphism compose(const DAMorphism& second, const DAMorphism& first);
/// The morphism differential, materialised; family arrows of source and
/// target are used while their inputs have length at most max_input_len.
DAMorphism differential(const DAMorphism& f, std::optional<std::size_t> max_input_len = std::nullopt);
/// Checks that the differential of f vanishes on bounded input sequences.
StructureReport verify_cycle(const DAMorphism& f, const VerifyBounds& b);

// ------------------------------------------------------------- reduction

struct ReduceOptions {
    bool witnesses = true;
    std::size_t depth_limit = 64;
    std::optional<std::size_t> max_input_len;
    std::optional<std::size_t> max_cancellations;
};

struct Reduction {
    BimodulePtr reduced;
    std::optional<DAMorphism> include;  // reduced -> original
    std::optional<DAMorphism> project;  // original -> reduced
    std::optional<DAMorphism> homotopy; // original -> original
    std::vector<std::pair<std::string, std::string>> cancelled;
};

/// A delta^1_1 arrow x0 -> 1 (x) y0 that can be cancelled, chosen with the
/// highest homological degree of x0, ties broken by generator names.
std::optional<std::pair<int, int>> choose_cancellation(const DABimodule& M);
Reduction cancel_arrow(const BimodulePtr& M, int x0, int y0, const ReduceOptions& opt);
/// Cancels unit arrows until none are left.
Reduction reduce(const BimodulePtr& M, const ReduceOptions& opt = {});

// -------------------------------------------------------- tensor products

struct TensorOptions {
    std::size_t depth_limit = 16;
    std::optional<std::size_t> max_input_len;
};

/// X box Y for DA bimodules X over (A, B) and Y over (B, C).
BimodulePtr box_tensor(const BimodulePtr& X, const BimodulePtr& Y, const TensorOptions& opt = {});

/// The identity bimodule of an algebra, listing inputs up to max_len.
BimodulePtr identity_bimodule(const AlgebraPtr& A, std::size_t max_len);

/// A box M as a right differential module (the input algebra acting through
/// delta_2), truncated to output algebra paths of length <= max_len.
struct DGModule {
    BimodulePtr source;
    std::size_t max_len = 0;
    std::vector<std::pair<Path, int>> basis;
    std::vector<int> hom;
    std::vector<Grading> grading;
    std::vector<std::vector<int>> d;  // sorted indices, mod 2
    std::map<std::pair<Path, int>, int> index;

    std::optional<int> index_of(const Path& a, int gen) const;
    /// Indices outside the truncation are reported by throwing OutOfDomain.
    std::vector<int> right_act(int idx, const Path& c) const;
    std::vector<int> left_act(const Path& b, int idx) const;
};
DGModule box_with_algebra(const BimodulePtr& M, std::size_t max_len);
/// d^2 = 0, d is a right module map, associativity; empty when all hold.
std::vector<std::string> verify_dg_module(const DGModule& D, std::size_t action_len);

// ------------------------------------------------------- change of rings

/// Pull the input algebra back along phi: source(phi) acts through phi.
BimodulePtr restrict_inputs(const AlgebraHom& phi, const BimodulePtr& M);
/// Push outputs forward along phi.
BimodulePtr induct_outputs(const AlgebraHom& phi, const BimodulePtr& M);
/// Same arrows over algebras with identical quivers but other gradings.
BimodulePtr regrade(const BimodulePtr& M, AlgebraPtr out_alg, AlgebraPtr in_alg, const GradingHom& gen_map,
                    GradingHom out_hom, GradingHom in_hom, std::string name);

// ----------------------------------------------------------- comparisons

struct IsoResult {
    bool found = false;
    bool budget_exhausted = false;
    std::size_t tried = 0;
    std::vector<int> map;  // generator of X -> generator of Y
};
/// Searches for a bijection of generators preserving idempotents, gradings
/// and the full arrow table.
IsoResult find_isomorphism(const DABimodule& X, const DABimodule& Y, std::size_t budget);
/// Arrow tables agree under the identification of generators by name.
bool same_by_names(const DABimodule& X, const DABimodule& Y);

}  // namespace dabim
