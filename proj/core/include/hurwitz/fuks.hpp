#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/complex.hpp"
#include "hurwitz/group.hpp"

namespace hurwitz {

// A word over the conjugacy class, letters stored as class positions.
using Word = std::vector<uint8_t>;

// Basis element of the cell cochain complex at level n: an ordered tuple of
// nonempty words with n letters in total. Cohomological degree is
// n - (number of words).
struct FuksCell {
    std::vector<Word> words;

    int level() const;
    int degree() const { return level() - int(words.size()); }
    Word letters() const;  // concatenation
    std::string str() const;
    auto operator<=>(const FuksCell&) const = default;
};

using CellSum = std::map<FuksCell, Rat>;
using WordSum = std::map<Word, Rat>;

// Signed sum over the order-preserving interleavings of w and w2. Letters of
// w2 pass through unchanged; the letter of w placed at output position p is
// conjugated by the product of the w2-letters that land before p.
WordSum shuffle(const ConjClass& c, const Word& w, const Word& w2);

// Alternating sum of adjacent-pair shuffles; raises degree by one.
CellSum fuks_differential(const ConjClass& c, const FuksCell& cell);

// Subcomplex selector. Admissibility depends only on the letter tuple, which
// the differential preserves up to conjugation, so every mode is stable.
struct CellFilter {
    enum class Base { All, Generating, AdjoinedGenerating };
    Base base = Base::All;
    int adjoined = -1;   // group element adjoined before the generation check
    int monodromy = -1;  // required ordered product; -1 = unconstrained

    static CellFilter all() { return {}; }
    static CellFilter generating() { return {Base::Generating, -1, -1}; }
    static CellFilter generating_with_monodromy(int product) {
        return {Base::Generating, -1, product};
    }
    static CellFilter generating_with_adjoined(int g) {
        return {Base::AdjoinedGenerating, g, -1};
    }
    CellFilter with_monodromy(int product) const {
        CellFilter f = *this;
        f.monodromy = product;
        return f;
    }

    bool admits(const FiniteGroup& g, const ConjClass& c, std::span<const uint8_t> letters) const;
    std::string key() const;
    static CellFilter parse(const std::string& s);
};

// One level of the cell complex: cells per degree and the assembled
// differentials, verified to square to zero.
class FuksComplex {
  public:
    FuksComplex(const FiniteGroup& g, const ConjClass& c, int n, CellFilter filter,
                int max_degree, Budget& budget);

    const FiniteGroup& group() const { return *group_; }
    const ConjClass& cls() const { return *class_; }
    int n() const { return n_; }
    const CellFilter& filter() const { return filter_; }

    int degree_hi() const { return degree_hi_; }
    bool truncated() const { return n_ >= 1 && degree_hi_ < n_ - 1; }

    long dim(int degree) const;
    const std::vector<FuksCell>& cells(int degree) const;
    int index_of(int degree, const FuksCell& cell) const;  // -1 when absent
    const SparseMat& delta(int degree) const;              // degree -> degree+1

    const BasedComplex& based() const { return based_; }

    SparseVec to_vec(int degree, const CellSum& sum) const;  // throws on foreign cells
    SparseVec project_vec(int degree, const CellSum& sum) const;  // drops foreign cells
    CellSum to_sum(int degree, const SparseVec& vec) const;

  private:
    const FiniteGroup* group_;
    const ConjClass* class_;
    int n_;
    CellFilter filter_;
    int degree_hi_;
    std::vector<std::vector<FuksCell>> cells_;
    std::vector<std::map<FuksCell, int>> index_;
    std::vector<SparseMat> delta_;
    BasedComplex based_;
};

// Memoizes built complexes per (group, filter, n, degree cap).
class FuksCache {
  public:
    FuksCache(const FiniteGroup& g, const ConjClass& c, Budget& budget)
        : group_(&g), class_(&c), budget_(&budget) {}
    // max_degree = -1 builds all degrees 0..n-1
    const FuksComplex& get(int n, const CellFilter& filter, int max_degree = -1);
    Budget& budget() { return *budget_; }
    const FiniteGroup& group() const { return *group_; }
    const ConjClass& cls() const { return *class_; }

  private:
    const FiniteGroup* group_;
    const ConjClass* class_;
    Budget* budget_;
    std::map<std::string, std::unique_ptr<FuksComplex>> store_;
};

// --- chain-level operators -------------------------------------------------

// Matrix of the costabilization by the single letter a: picks cells whose
// last word is exactly (a), drops it, and projects to the target basis.
// src is at level n, dst at level n-1, both in the same degree.
SparseMat costabilize_matrix(const FuksComplex& src, const FuksComplex& dst, int a_class,
                             int degree);

// Matrix of u -> u ⊗ (a); every image cell must be admissible in dst.
SparseMat append_matrix(const FuksComplex& src, const FuksComplex& dst, int a_class, int degree);

// Matrix of the labeling map from the one-letter-alphabet complex: a word
// pattern goes to the sum of all admissible letterings of that pattern.
SparseMat conf_pullback_matrix(const FuksComplex& conf, const FuksComplex& dst, int degree);

// Exact check that m is a chain map: delta_dst ∘ m = m' ∘ delta_src where m,
// m' are the operator's matrices in consecutive degrees.
bool is_chain_map(const SparseMat& m_deg, const SparseMat& m_next, const SparseMat& delta_src,
                  const SparseMat& delta_dst);

// --- formal cochains and witness-producing reductions ----------------------

struct Cochain {
    int level = 0;
    int degree = 0;
    CellSum terms;

    bool is_zero() const { return terms.empty(); }
    std::string str() const;
};

Cochain cochain_add(const Cochain& a, const Cochain& b, const Rat& factor = Rat(1));
Cochain delta(const ConjClass& c, const Cochain& x);
Cochain append_letter(const Cochain& x, uint8_t a_class);
// terms whose last word is (a), with that word removed; no filtering
Cochain strip_letter_raw(const Cochain& x, uint8_t a_class);
// as above, then drop terms not admitted by `target_filter` at level-1
Cochain strip_letter(const FiniteGroup& g, const ConjClass& c, const CellFilter& target_filter,
                     const Cochain& x, uint8_t a_class);

// Raised when a guaranteed witness does not exist at this scale; carries the
// serialized instance for the report.
struct FalsificationError : std::runtime_error {
    std::string instance;
    FalsificationError(const std::string& what, std::string inst)
        : std::runtime_error(what), instance(std::move(inst)) {}
};

struct ReduceWitness {
    Cochain z;  // cocycle at level n-1, same degree as y
    Cochain w;  // degree-1 cochain at level n-1
};

// Given a cocycle x = y ⊗ (g) at level n+1, finds z and w at level n-1 with
// y - z⊗(g) = δ(w⊗(g)), exactly. Witnesses are searched in the subcomplex of
// cells whose letters together with g generate the group, refined by the
// forced monodromy. Verifies the identity by substitution before returning.
ReduceWitness reduce_one_more_g(FuksCache& cache, int g_class, const Cochain& x);

// Drives a cocycle of the form y ⊗ (g) to zero by iterating the reduction:
// returns a degree-1 cochain W with x = δ(W), exactly.
Cochain reduce_to_zero(FuksCache& cache, int g_class, const Cochain& x, int max_steps = -1);

struct TailNormalization {
    Cochain normalized;   // x - δ(witness)
    Cochain witness;
    bool projected_form;  // stripped tail projections vanish for s < m, h != g
    bool literal_form;    // every short-tail term literally ends in g's
};

// Makes x cohomologous to a cocycle whose level-s tail projections factor
// through the single letter g for all s < m. Preconditions (each stripped
// projection is a coboundary) are discharged by exact linear solves; a solve
// failure raises FalsificationError with the instance serialized.
TailNormalization normalize_tail(FuksCache& cache, const CellFilter& base, int g_class,
                                 const Cochain& x, int m);

}  // namespace hurwitz
