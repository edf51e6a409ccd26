#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hurwitz/fuks.hpp"
#include "hurwitz/homology_basis.hpp"

namespace hurwitz {

// Shared context for the stable-range certificates: one group, its involution
// class, a complex cache, and the reference one-letter-alphabet group used
// for the configuration-space comparison.
class StableContext {
  public:
    StableContext(const FiniteGroup& g, Budget& budget);

    const FiniteGroup& group() const { return *group_; }
    const ConjClass& cls() const { return cls_; }
    FuksCache& cache() { return cache_; }
    Budget& budget() { return *budget_; }

    const FuksComplex& component(int n, int monodromy, int max_degree);
    const FuksComplex& conf(int n, int max_degree);

    // basis of H^degree of a complex (memoized per complex identity)
    const HomologyBasis& basis(const FuksComplex& fc, int degree);

    // induced map on H^degree of the class-labeling chain map from the
    // one-letter complex into `target`; chain-map property is re-verified.
    SparseMat pullback_on_h(const FuksComplex& target, int degree);

    // induced map on H^degree of one costabilization strip. Target complex
    // is the same filter family one level down with the monodromy adjusted.
    SparseMat costab_on_h(const FuksComplex& src, const FuksComplex& dst, int a_class,
                          int degree);

    // parity of a group element: 0 if it lies in the subgroup generated by
    // pairwise products of class members, 1 otherwise
    int parity(int elem) const;

    int order_two(int class_idx) const { return cls_.elem(class_idx); }

  private:
    const FiniteGroup* group_;
    ConjClass cls_;
    Budget* budget_;
    FuksCache cache_;
    FiniteGroup conf_group_;
    ConjClass conf_cls_;
    FuksCache conf_cache_;
    std::map<std::string, std::unique_ptr<HomologyBasis>> bases_;
};

// One (n, i) entry of the stable comparison table.
struct StableCell {
    int n = 0;
    int i = 0;
    long dim_h = -1;          // dim H^i(component)
    long dim_conf = -1;       // dim H^i of the configuration baseline
    long stab_rank = -1;      // rank of Σ[h][h] : H^i(n) -> H^i(n-2), -1 if n-2 < 0
    bool pullback_injective = false;
    bool dims_equal = false;
    bool computed = false;
    std::string error;        // budget exhaustion is recorded, not fatal
};

struct StableTable {
    std::string group_spec;
    int monodromy = -1;
    int parity = 0;
    std::vector<StableCell> cells;  // ordered by (i, n)
    // per degree: first n with dim and stabilization rank locked at n, n+2;
    // -1 when never within the computed range
    std::vector<int> stabilized_from;
    std::vector<int> locked_from;  // third agreeing level seen

    const StableCell* cell(int n, int i) const;
};

// Fills the table for all matching-parity n <= n_max and i <= i_max.
// wall_budget_ms bounds optional large-n work; cells that would exceed it
// record an error string instead of failing the run.
StableTable stable_table(StableContext& ctx, int monodromy, int i_max, int n_max, int jobs,
                         long wall_budget_ms = -1);

// --- certificates ------------------------------------------------------------

struct TheoremVerdict {
    StableTable table;
    bool pass = false;          // every check inside the quantified range holds
    bool range_nonempty = false;
    std::vector<std::string> notes;
};

// Stable comparison with the configuration baseline: for each i <= i_max,
// from the empirical onset (where dim and stabilization rank lock) through
// n_max, dim H^i(component) must equal the baseline and the labeling
// pullback must be injective on H^i. Injectivity is checked at every
// computed level, stabilization onset per degree is reported.
TheoremVerdict certify_theorem(StableContext& ctx, int monodromy_class, int i_max, int n_max,
                               int jobs, long i_top_budget_ms);

struct KernelSpace {
    int n = 0, i = 0;
    int monodromy = -1;
    long ambient_dim = 0;           // dim H^i(component)
    std::vector<SparseVec> basis;   // dual-side kernel: null space of pullback^T
    long dim() const { return long(basis.size()); }
};

// ker( H_i(component) -> H_i(baseline) ) in the coordinates dual to the
// computed H^i basis.
KernelSpace kernel_space(StableContext& ctx, int monodromy, int n, int i);

struct ActionVerdict {
    KernelSpace kernel;
    bool action_vanishes = false;    // [h] (appending) kills the kernel
    bool composite_identity = false; // [g]^j[h] = [h][h^{-1}gh]^j on H^i, j <= j_max
    bool vacuous = false;            // kernel dimension 0
};

// Appending h != g acts by zero on the kernel at (n, i); also verifies the
// braid-rewriting operator identity on homology for j <= j_max.
ActionVerdict certify_trivial_action(StableContext& ctx, int g_class, int h_class, int n, int i,
                                     int j_max);

struct CyclicVerdict {
    int n = 0, i = 0;
    int zeta = -1;
    bool parity_match = true;
    long kernel_dim = -1;
    bool pass = false;  // kernel 0 (vacuously when the component is empty)
};

// Kernel of the comparison for a rotation boundary monodromy.
CyclicVerdict certify_cyclic_monodromy(StableContext& ctx, int zeta_elem, int n, int i);

struct AnnihilationVerdict {
    KernelSpace kernel;
    long joint_kernel_dim = -1;
    int w_max = 0;
    bool pass = false;
    std::vector<long> joint_dims_by_w;  // monotone non-increasing
};

// Joint kernel, inside the comparison kernel at (n, i), of the homology
// operators "append h, then w copies of g" for w <= w_max and h != g.
AnnihilationVerdict certify_annihilation(StableContext& ctx, int g_class, int n, int i,
                                         int w_max);

// Induced matrix on H^i of the stabilization operator Σ_h [h][h] from level n
// to level n-2 (same monodromy).
SparseMat stabilization_operator_on_h(StableContext& ctx, int monodromy, int n, int i);

}  // namespace hurwitz
