#pragma once

#include <map>
#include <string>
#include <vector>

#include "hurwitz/complex.hpp"
#include "hurwitz/fuks.hpp"
#include "hurwitz/group.hpp"

namespace hurwitz {

// Graded module over the component ring, of the restricted shape the
// certificates need: every graded piece is 0- or 1-dimensional and each class
// member either acts by zero or by shifting the grading up by one.
struct ModuleSpec {
    enum class Kind { TrivialK, ShiftNonneg, ShiftLaurent, Custom };
    Kind kind = Kind::TrivialK;
    int g_class = -1;              // the shifting class member (built-ins)
    std::vector<int> acting;       // class members acting by shift (Custom)
    bool support_all = false;      // Custom: gradings in Z vs only m >= 0
    bool support_origin_only = false;

    static ModuleSpec trivial();
    static ModuleSpec shift_nonneg(int g_class);  // k in each m >= 0, [g] shifts
    static ModuleSpec shift_laurent(int g_class);
    static ModuleSpec custom(std::vector<int> acting, bool support_all);

    bool grading_valid(long m) const;
    bool acts(int h_class) const;
    bool invertible(int h_class) const;  // shift iso in both directions
    std::string str() const;
};

// Basis element alpha ⊗ (letters) ⊗ beta of a two-sided complex; the module
// gradings are carried explicitly and alpha + |letters| + beta is constant
// along every operator we apply.
struct TwoCell {
    long alpha = 0;
    Word letters;
    long beta = 0;

    int t() const { return int(letters.size()); }
    auto operator<=>(const TwoCell&) const = default;
    std::string str() const;
};

using TwoCellSum = std::map<TwoCell, Rat>;

void two_sum_add(TwoCellSum& acc, const TwoCell& cell, const Rat& coeff);

// Leftward differential: the i-th letter acts on the left module and
// conjugates the letters before it. Signs are (-1)^i with 1-based i.
TwoCellSum d_left(const ConjClass& c, const ModuleSpec& m_left, const TwoCell& v);
// Rightward differential: the i-th letter, conjugated through the letters
// after it, acts on the right module.
TwoCellSum d_right(const ConjClass& c, const ModuleSpec& n_right, const TwoCell& v);

enum class LetterMode { All, SomeLetterDiffers, AllLettersEqual };

// A finite window of the two-sided complex for a module pair, graded by
// letter count t (the differential lowers t by one). Windowing in alpha is a
// quotient by the subcomplex alpha > alpha_hi; the t boundary is open
// whenever cells exist past t_max. The printed differentials are assembled
// as given and their sum is verified to square to zero cell by cell with no
// truncation; if that ever failed, the alternating Koszul weight would be
// applied to the leftward part and recorded in sign_convention.
class TwoSidedWindow {
  public:
    TwoSidedWindow(const FiniteGroup& g, const ConjClass& c, ModuleSpec m_left,
                   ModuleSpec n_right, long z, int t_max, long alpha_lo, long alpha_hi,
                   LetterMode mode, int g_class, Budget& budget);

    const FiniteGroup& group() const { return *group_; }
    const ConjClass& cls() const { return *class_; }
    long z() const { return z_; }
    int t_max() const { return t_max_; }
    int g_class() const { return g_class_; }
    const ModuleSpec& left() const { return m_left_; }
    const ModuleSpec& right() const { return n_right_; }
    const std::string& sign_convention() const { return sign_convention_; }

    long dim(int t) const;
    const std::vector<TwoCell>& cells(int t) const;
    int index_of(int t, const TwoCell& cell) const;

    const SparseMat& d_total(int t) const;  // t -> t-1, alpha-projected
    const SparseMat& d_l(int t) const;
    const SparseMat& d_r(int t) const;

    const BasedComplex& based() const { return based_; }

    SparseVec project_vec(int t, const TwoCellSum& sum) const;  // drops cells outside
    bool in_window(const TwoCell& cell) const;

  private:
    const FiniteGroup* group_;
    const ConjClass* class_;
    ModuleSpec m_left_, n_right_;
    long z_;
    int t_max_;
    long alpha_lo_, alpha_hi_;
    LetterMode mode_;
    int g_class_;
    std::string sign_convention_;
    std::vector<std::vector<TwoCell>> cells_;
    std::vector<std::map<TwoCell, int>> index_;
    std::vector<SparseMat> dl_, dr_, dt_;
    BasedComplex based_;
};

// One-sided complex k{c}^t ⊗ M: the two-sided complex with the trivial
// module on the left, so only the rightward differential survives.
TwoSidedWindow one_sided_window(const FiniteGroup& g, const ConjClass& c, ModuleSpec m,
                                long z, int t_max, Budget& budget);

// --- explicit homotopies ----------------------------------------------------

// Shape of a letter word relative to g: (x_1..x_s, h, g^t) with h the
// rightmost letter different from g. Undefined for all-g words.
struct GShape {
    int s = 0;  // letters strictly before h
    int t = 0;  // trailing copies of g
};
GShape g_shape(const Word& letters, int g_class);

// v ↦ (-1)^n (x_1,..,x_s, h g h^{-1}, h, g,..,g); adds a letter, beta -= 1.
TwoCellSum sigma_image(const ConjClass& c, int g_class, const TwoCell& v);
// v ↦ (-1)^n (g x_1 g^{-1},..,g x_s g^{-1}, g, h, g,..,g); beta -= 1.
TwoCellSum bianchi_image(const ConjClass& c, int g_class, const TwoCell& v);

// S0: v ↦ (-1)^{n+1} alpha ⊗ letters ⊗ h ⊗ beta-1; needs [h] invertible on N.
TwoCellSum s0_image(const ConjClass& c, const ModuleSpec& n_right, int h_class,
                    const TwoCell& v);

struct HomotopyCheck {
    bool graded_identity = true;   // main coefficient correct, residue strictly
                                   // below in the trailing-g filtration
    bool literal_identity = true;  // residue empty for every basis vector
    long cells_checked = 0;
    std::string failure;           // first violating cell, if any
};

// Per-basis verification of (σd + dσ)(v) = (-1)^{n+s+1} v modulo cells with
// strictly fewer trailing g's, over all window cells. Exact, no truncation.
HomotopyCheck check_sigma_homotopy(const TwoSidedWindow& w);

// S0 two-term identity (dS0 + S0 d)(v) = v + [m][h]-twist(v), exact per basis.
// When [h] acts by zero on the left module the twist vanishes and this is a
// homotopy between the identity and zero.
HomotopyCheck check_s0_homotopy(const FiniteGroup& g, const ConjClass& c, ModuleSpec m_left,
                                ModuleSpec n_right, int h_class, int t_max);

// Per-basis verification that (σ'd + dσ')(v) equals (-1)^{n+s+1} times the
// cell v with its left grading raised by one (and right grading lowered),
// modulo cells with strictly fewer trailing g's. The leading term is a unit
// times a degreewise injection, so the composite is injective; it is
// invertible only once the left grading is unbounded.
HomotopyCheck check_bianchi_homotopy(const TwoSidedWindow& w);

// Injectivity of the composite as a matrix: columns over the cells of `src`,
// rows over `margin`, whose alpha window must extend one step higher so the
// shift is not cut off. Returns (rank, source dim) per degree t in
// [1, t_max-1].
std::vector<std::pair<long, long>> bianchi_composite_ranks(const TwoSidedWindow& src,
                                                           const TwoSidedWindow& margin);

// --- derived complexes -------------------------------------------------------

// Cone-shaped truncation: alpha >= 0, beta >= x of the some-letter-differs
// complex at z = 0. Finite, closed on both ends.
TwoSidedWindow truncation_dx(const FiniteGroup& g, const ConjClass& c, int g_class, int x,
                             Budget& budget);

struct BInclusionReport {
    HomologyReport full;      // window of the whole complex
    HomologyReport sub;       // all-letters-g subcomplex
    HomologyReport quotient;  // complement, isomorphic to shifted windows of T
    bool quotient_exact_on_trusted = false;
    bool dims_match_on_trusted = false;  // H(sub) == H(full) where both trusted
};

// Certifies that including the single-letter subcomplex into the full
// two-sided window induces matching homology dimensions, by checking the
// quotient is exact on trusted degrees.
BInclusionReport two_sided_b_inclusion(const FiniteGroup& g, const ConjClass& c, int g_class,
                                       long z, int t_max, long alpha_hi, Budget& budget);

}  // namespace hurwitz
