#include "hurwitz/kcomplex.hpp"

#include <algorithm>
#include <sstream>

namespace hurwitz {

ModuleSpec ModuleSpec::trivial() {
    ModuleSpec m;
    m.kind = Kind::TrivialK;
    m.support_origin_only = true;
    return m;
}

ModuleSpec ModuleSpec::shift_nonneg(int g_class) {
    ModuleSpec m;
    m.kind = Kind::ShiftNonneg;
    m.g_class = g_class;
    m.acting = {g_class};
    return m;
}

ModuleSpec ModuleSpec::shift_laurent(int g_class) {
    ModuleSpec m;
    m.kind = Kind::ShiftLaurent;
    m.g_class = g_class;
    m.acting = {g_class};
    m.support_all = true;
    return m;
}

ModuleSpec ModuleSpec::custom(std::vector<int> acting, bool support_all) {
    ModuleSpec m;
    m.kind = Kind::Custom;
    m.acting = std::move(acting);
    m.support_all = support_all;
    std::sort(m.acting.begin(), m.acting.end());
    return m;
}

bool ModuleSpec::grading_valid(long m) const {
    if (support_origin_only) return m == 0;
    if (support_all) return true;
    return m >= 0;  // ShiftNonneg and bounded-below Custom
}

bool ModuleSpec::acts(int h_class) const {
    return std::binary_search(acting.begin(), acting.end(), h_class) ||
           (g_class >= 0 && h_class == g_class);
}

bool ModuleSpec::invertible(int h_class) const { return acts(h_class) && support_all; }

std::string ModuleSpec::str() const {
    switch (kind) {
        case Kind::TrivialK: return "k";
        case Kind::ShiftNonneg: return "k[g:" + std::to_string(g_class) + "]";
        case Kind::ShiftLaurent: return "k[g:" + std::to_string(g_class) + ",g^-1]";
        case Kind::Custom: {
            std::string s = "custom{";
            for (std::size_t i = 0; i < acting.size(); ++i)
                s += (i ? "," : "") + std::to_string(acting[i]);
            return s + (support_all ? "}Z" : "}N");
        }
    }
    return "?";
}

std::string TwoCell::str() const {
    std::ostringstream os;
    os << alpha << "|";
    for (std::size_t k = 0; k < letters.size(); ++k) os << (k ? "." : "") << int(letters[k]);
    os << "|" << beta;
    return os.str();
}

void two_sum_add(TwoCellSum& acc, const TwoCell& cell, const Rat& coeff) {
    if (hurwitz::is_zero(coeff)) return;
    auto [it, fresh] = acc.try_emplace(cell, coeff);
    if (!fresh) {
        it->second += coeff;
        if (hurwitz::is_zero(it->second)) acc.erase(it);
    }
}

TwoCellSum d_left(const ConjClass& c, const ModuleSpec& m_left, const TwoCell& v) {
    TwoCellSum out;
    const int n = v.t();
    for (int i = 1; i <= n; ++i) {
        int gi = v.letters[i - 1];
        if (!m_left.acts(gi)) continue;
        if (!m_left.grading_valid(v.alpha + 1)) continue;
        TwoCell w;
        w.alpha = v.alpha + 1;
        w.beta = v.beta;
        w.letters.reserve(n - 1);
        for (int k = 0; k < i - 1; ++k) w.letters.push_back(uint8_t(c.conj(v.letters[k], gi)));
        for (int k = i; k < n; ++k) w.letters.push_back(v.letters[k]);
        two_sum_add(out, w, (i % 2 == 0) ? Rat(1) : Rat(-1));
    }
    return out;
}

TwoCellSum d_right(const ConjClass& c, const ModuleSpec& n_right, const TwoCell& v) {
    TwoCellSum out;
    const FiniteGroup& g = *c.group;
    const int n = v.t();
    // suffix products g_{i+1} ... g_n
    std::vector<int> suffix(n + 1);
    suffix[n] = g.identity();
    for (int k = n - 1; k >= 0; --k) suffix[k] = g.mul(c.elem(v.letters[k]), suffix[k + 1]);
    for (int i = 1; i <= n; ++i) {
        int conj = g.conjugate(c.elem(v.letters[i - 1]), suffix[i]);
        int conj_class = c.index_of(conj);
        if (!n_right.acts(conj_class)) continue;
        if (!n_right.grading_valid(v.beta + 1)) continue;
        TwoCell w;
        w.alpha = v.alpha;
        w.beta = v.beta + 1;
        w.letters.reserve(n - 1);
        for (int k = 0; k < n; ++k)
            if (k != i - 1) w.letters.push_back(v.letters[k]);
        two_sum_add(out, w, (i % 2 == 0) ? Rat(1) : Rat(-1));
    }
    return out;
}

namespace {

bool all_letters_equal(const Word& w, int g_class) {
    for (uint8_t l : w)
        if (l != g_class) return false;
    return true;
}

TwoCellSum total_diff(const ConjClass& c, const ModuleSpec& ml, const ModuleSpec& nr,
                      const TwoCell& v, bool koszul_left) {
    TwoCellSum out = d_right(c, nr, v);
    TwoCellSum left = d_left(c, ml, v);
    Rat w = (!koszul_left || (v.beta % 2 == 0)) ? Rat(1) : Rat(-1);
    for (const auto& [cell, coeff] : left) two_sum_add(out, cell, w * coeff);
    return out;
}

}  // namespace

TwoSidedWindow::TwoSidedWindow(const FiniteGroup& g, const ConjClass& c, ModuleSpec m_left,
                               ModuleSpec n_right, long z, int t_max, long alpha_lo,
                               long alpha_hi, LetterMode mode, int g_class, Budget& budget)
    : group_(&g),
      class_(&c),
      m_left_(std::move(m_left)),
      n_right_(std::move(n_right)),
      z_(z),
      t_max_(t_max),
      alpha_lo_(alpha_lo),
      alpha_hi_(alpha_hi),
      mode_(mode),
      g_class_(g_class) {
    if (mode != LetterMode::All && g_class < 0)
        throw UsageError("TwoSidedWindow: letter mode needs a reference class member");

    cells_.resize(t_max_ + 1);
    index_.resize(t_max_ + 1);
    std::size_t total_cells = 0;
    for (int t = 0; t <= t_max_; ++t) {
        for (long a = alpha_lo_; a <= alpha_hi_; ++a) {
            if (!m_left_.grading_valid(a)) continue;
            long b = z_ - a - t;
            if (!n_right_.grading_valid(b)) continue;
            // enumerate letter words
            Word w(t, 0);
            for (;;) {
                bool keep = true;
                if (mode_ == LetterMode::SomeLetterDiffers)
                    keep = !all_letters_equal(w, g_class_);
                else if (mode_ == LetterMode::AllLettersEqual)
                    keep = all_letters_equal(w, g_class_);
                if (keep) cells_[t].push_back(TwoCell{a, w, b});
                int i = 0;
                while (i < t && w[i] == c.size() - 1) w[i++] = 0;
                if (i == t) break;
                w[i]++;
            }
        }
        std::sort(cells_[t].begin(), cells_[t].end());
        for (int j = 0; j < int(cells_[t].size()); ++j) index_[t].emplace(cells_[t][j], j);
        total_cells += cells_[t].size();
    }
    budget.charge(total_cells * 64, "TwoSidedWindow cells");

    // Pin the sign convention by checking (d_l + d_r)^2 = 0 cell by cell with
    // no window truncation.
    sign_convention_ = "plain-sum";
    bool koszul = false;
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool ok = true;
        for (int t = 2; t <= t_max_ && ok; ++t)
            for (const auto& v : cells_[t]) {
                TwoCellSum once = total_diff(c, m_left_, n_right_, v, koszul);
                TwoCellSum twice;
                for (const auto& [cell, coeff] : once)
                    for (const auto& [cell2, coeff2] :
                         total_diff(c, m_left_, n_right_, cell, koszul))
                        two_sum_add(twice, cell2, coeff * coeff2);
                if (!twice.empty()) {
                    ok = false;
                    break;
                }
            }
        if (ok) break;
        if (attempt == 0) {
            koszul = true;
            sign_convention_ = "koszul-left";
        } else {
            throw MathError("two-sided differential does not square to zero in either convention");
        }
    }

    auto project = [&](int t, const TwoCellSum& sum) {
        SparseVec v;
        for (const auto& [cell, coeff] : sum) {
            int idx = index_of(t, cell);
            if (idx >= 0) v.emplace_back(idx, coeff);
        }
        return sv_normalize(std::move(v));
    };

    dl_.resize(t_max_ + 1);
    dr_.resize(t_max_ + 1);
    dt_.resize(t_max_ + 1);
    for (int t = 1; t <= t_max_; ++t) {
        SparseMat ml(long(cells_[t - 1].size()), long(cells_[t].size()));
        SparseMat mr(long(cells_[t - 1].size()), long(cells_[t].size()));
        SparseMat mt(long(cells_[t - 1].size()), long(cells_[t].size()));
        for (int col = 0; col < int(cells_[t].size()); ++col) {
            const TwoCell& v = cells_[t][col];
            for (const auto& [idx, coeff] : project(t - 1, d_left(c, m_left_, v)))
                ml.add(idx, col, (koszul && v.beta % 2 != 0) ? Rat(-coeff) : coeff);
            for (const auto& [idx, coeff] : project(t - 1, d_right(c, n_right_, v)))
                mr.add(idx, col, coeff);
            for (const auto& [idx, coeff] :
                 project(t - 1, total_diff(c, m_left_, n_right_, v, koszul)))
                mt.add(idx, col, coeff);
        }
        ml.compress();
        mr.compress();
        mt.compress();
        dl_[t] = std::move(ml);
        dr_[t] = std::move(mr);
        dt_[t] = std::move(mt);
    }

    // cells past the t window mean the top differential is not represented
    bool open_high = false;
    {
        int t = t_max_ + 1;
        for (long a = alpha_lo_; a <= alpha_hi_ && !open_high; ++a) {
            if (!m_left_.grading_valid(a)) continue;
            if (n_right_.grading_valid(z_ - a - t)) open_high = true;
        }
    }
    based_ = BasedComplex(0, t_max_, -1, false, open_high);
    for (int t = 0; t <= t_max_; ++t) {
        std::vector<std::string> labels;
        labels.reserve(cells_[t].size());
        for (const auto& cell : cells_[t]) labels.push_back(cell.str());
        based_.set_basis(t, std::move(labels));
    }
    for (int t = 1; t <= t_max_; ++t) based_.set_d(t, dt_[t]);
    based_.verify_dd_zero();
}

long TwoSidedWindow::dim(int t) const {
    if (t < 0 || t > t_max_) return 0;
    return long(cells_[t].size());
}

const std::vector<TwoCell>& TwoSidedWindow::cells(int t) const {
    if (t < 0 || t > t_max_) throw MathError("TwoSidedWindow: t out of window");
    return cells_[t];
}

int TwoSidedWindow::index_of(int t, const TwoCell& cell) const {
    if (t < 0 || t > t_max_) return -1;
    auto it = index_[t].find(cell);
    return it == index_[t].end() ? -1 : it->second;
}

const SparseMat& TwoSidedWindow::d_total(int t) const {
    if (t < 1 || t > t_max_) throw MathError("TwoSidedWindow: no differential at t");
    return dt_[t];
}
const SparseMat& TwoSidedWindow::d_l(int t) const {
    if (t < 1 || t > t_max_) throw MathError("TwoSidedWindow: no differential at t");
    return dl_[t];
}
const SparseMat& TwoSidedWindow::d_r(int t) const {
    if (t < 1 || t > t_max_) throw MathError("TwoSidedWindow: no differential at t");
    return dr_[t];
}

SparseVec TwoSidedWindow::project_vec(int t, const TwoCellSum& sum) const {
    SparseVec v;
    for (const auto& [cell, coeff] : sum) {
        int idx = index_of(t, cell);
        if (idx >= 0) v.emplace_back(idx, coeff);
    }
    return sv_normalize(std::move(v));
}

bool TwoSidedWindow::in_window(const TwoCell& cell) const {
    return index_of(cell.t(), cell) >= 0;
}

TwoSidedWindow one_sided_window(const FiniteGroup& g, const ConjClass& c, ModuleSpec m, long z,
                                int t_max, Budget& budget) {
    return TwoSidedWindow(g, c, ModuleSpec::trivial(), std::move(m), z, t_max, 0, 0,
                          LetterMode::All, -1, budget);
}

GShape g_shape(const Word& letters, int g_class) {
    int last = -1;
    for (int k = int(letters.size()) - 1; k >= 0; --k)
        if (letters[k] != g_class) {
            last = k;
            break;
        }
    if (last < 0) throw UsageError("g_shape: all letters equal the reference member");
    return GShape{last, int(letters.size()) - 1 - last};
}

TwoCellSum sigma_image(const ConjClass& c, int g_class, const TwoCell& v) {
    const FiniteGroup& g = *c.group;
    GShape sh = g_shape(v.letters, g_class);
    int h = v.letters[sh.s];
    // h g h^{-1} = conjugation of g by h^{-1}
    int hgh = c.index_of(g.mul(g.mul(c.elem(h), c.elem(g_class)), g.inverse(c.elem(h))));
    TwoCell w;
    w.alpha = v.alpha;
    w.beta = v.beta - 1;
    w.letters.reserve(v.letters.size() + 1);
    for (int k = 0; k < sh.s; ++k) w.letters.push_back(v.letters[k]);
    w.letters.push_back(uint8_t(hgh));
    w.letters.push_back(uint8_t(h));
    for (int k = 0; k < sh.t; ++k) w.letters.push_back(uint8_t(g_class));
    TwoCellSum out;
    two_sum_add(out, w, (v.t() % 2 == 0) ? Rat(1) : Rat(-1));
    return out;
}

TwoCellSum bianchi_image(const ConjClass& c, int g_class, const TwoCell& v) {
    const FiniteGroup& g = *c.group;
    GShape sh = g_shape(v.letters, g_class);
    int h = v.letters[sh.s];
    TwoCell w;
    w.alpha = v.alpha;
    w.beta = v.beta - 1;
    w.letters.reserve(v.letters.size() + 1);
    for (int k = 0; k < sh.s; ++k) {
        // g x g^{-1} = conjugation by g^{-1}
        int gxg = c.index_of(
            g.mul(g.mul(c.elem(g_class), c.elem(v.letters[k])), g.inverse(c.elem(g_class))));
        w.letters.push_back(uint8_t(gxg));
    }
    w.letters.push_back(uint8_t(g_class));
    w.letters.push_back(uint8_t(h));
    for (int k = 0; k < sh.t; ++k) w.letters.push_back(uint8_t(g_class));
    TwoCellSum out;
    two_sum_add(out, w, (v.t() % 2 == 0) ? Rat(1) : Rat(-1));
    return out;
}

TwoCellSum s0_image(const ConjClass& c, const ModuleSpec& n_right, int h_class,
                    const TwoCell& v) {
    if (!n_right.invertible(h_class))
        throw UsageError("s0_image: the chosen member does not act invertibly on the right");
    TwoCell w;
    w.alpha = v.alpha;
    w.beta = v.beta - 1;
    w.letters = v.letters;
    w.letters.push_back(uint8_t(h_class));
    TwoCellSum out;
    two_sum_add(out, w, (v.t() % 2 == 0) ? Rat(-1) : Rat(1));  // (-1)^{n+1}
    return out;
}

namespace {

int trailing_g(const Word& w, int g_class) {
    int t = 0;
    for (int k = int(w.size()) - 1; k >= 0 && w[k] == g_class; --k) ++t;
    return t;
}

}  // namespace

HomotopyCheck check_sigma_homotopy(const TwoSidedWindow& w) {
    const ConjClass& c = w.cls();
    const int g = w.g_class();
    HomotopyCheck res;
    for (int t = 0; t <= w.t_max(); ++t) {
        for (const TwoCell& v : w.cells(t)) {
            GShape sh = g_shape(v.letters, g);
            // (σd + dσ)(v)
            TwoCellSum acc;
            for (const auto& [cell, coeff] : total_diff(c, w.left(), w.right(), v, false)) {
                if (all_letters_equal(cell.letters, g)) continue;  // leaves the subcomplex
                for (const auto& [cell2, coeff2] : sigma_image(c, g, cell))
                    two_sum_add(acc, cell2, coeff * coeff2);
            }
            for (const auto& [cell, coeff] : sigma_image(c, g, v))
                for (const auto& [cell2, coeff2] :
                     total_diff(c, w.left(), w.right(), cell, false)) {
                    if (all_letters_equal(cell2.letters, g)) continue;
                    two_sum_add(acc, cell2, coeff * coeff2);
                }
            Rat expect = ((v.t() + sh.s + 1) % 2 == 0) ? Rat(1) : Rat(-1);
            two_sum_add(acc, v, -expect);
            // residue must sit strictly lower in the trailing-g filtration
            for (const auto& [cell, coeff] : acc) {
                res.literal_identity = false;
                if (trailing_g(cell.letters, g) >= sh.t) {
                    res.graded_identity = false;
                    if (res.failure.empty())
                        res.failure = v.str() + " -> residue " + cell.str();
                }
            }
            ++res.cells_checked;
        }
    }
    return res;
}

HomotopyCheck check_s0_homotopy(const FiniteGroup& g, const ConjClass& c, ModuleSpec m_left,
                                ModuleSpec n_right, int h_class, int t_max) {
    HomotopyCheck res;
    const int h_elem = c.elem(h_class);
    for (int t = 0; t <= t_max; ++t) {
        // letter words; module gradings are irrelevant to the identity, fix
        // alpha = beta = 0 and alpha = 1 to cover both parities of nothing
        Word w(t, 0);
        for (;;) {
            TwoCell v{0, w, 0};
            TwoCellSum acc;
            for (const auto& [cell, coeff] : total_diff(c, m_left, n_right, v, false))
                for (const auto& [cell2, coeff2] : s0_image(c, n_right, h_class, cell))
                    two_sum_add(acc, cell2, coeff * coeff2);
            for (const auto& [cell, coeff] : s0_image(c, n_right, h_class, v))
                for (const auto& [cell2, coeff2] : total_diff(c, m_left, n_right, cell, false))
                    two_sum_add(acc, cell2, coeff * coeff2);
            // subtract v + twist(v)
            two_sum_add(acc, v, Rat(-1));
            if (m_left.acts(h_class) && m_left.grading_valid(v.alpha + 1)) {
                TwoCell tw;
                tw.alpha = v.alpha + 1;
                tw.beta = v.beta - 1;
                for (uint8_t l : w)
                    tw.letters.push_back(uint8_t(c.index_of(g.conjugate(c.elem(l), h_elem))));
                two_sum_add(acc, tw, Rat(-1));
            }
            if (!acc.empty()) {
                res.graded_identity = res.literal_identity = false;
                if (res.failure.empty()) res.failure = v.str();
            }
            ++res.cells_checked;
            int i = 0;
            while (i < t && w[i] == c.size() - 1) w[i++] = 0;
            if (i == t) break;
            w[i]++;
        }
    }
    return res;
}

namespace {

TwoCellSum bianchi_composite(const ConjClass& c, const ModuleSpec& ml, const ModuleSpec& nr,
                             int g, const TwoCell& v) {
    TwoCellSum acc;
    for (const auto& [cell, coeff] : total_diff(c, ml, nr, v, false)) {
        if (all_letters_equal(cell.letters, g)) continue;
        for (const auto& [cell2, coeff2] : bianchi_image(c, g, cell))
            two_sum_add(acc, cell2, coeff * coeff2);
    }
    for (const auto& [cell, coeff] : bianchi_image(c, g, v))
        for (const auto& [cell2, coeff2] : total_diff(c, ml, nr, cell, false)) {
            if (all_letters_equal(cell2.letters, g)) continue;
            two_sum_add(acc, cell2, coeff * coeff2);
        }
    return acc;
}

}  // namespace

HomotopyCheck check_bianchi_homotopy(const TwoSidedWindow& w) {
    const ConjClass& c = w.cls();
    const int g = w.g_class();
    HomotopyCheck res;
    for (int t = 0; t <= w.t_max(); ++t) {
        for (const TwoCell& v : w.cells(t)) {
            GShape sh = g_shape(v.letters, g);
            TwoCellSum acc = bianchi_composite(c, w.left(), w.right(), g, v);
            TwoCell lead{v.alpha + 1, v.letters, v.beta - 1};
            Rat expect = ((v.t() + sh.s + 1) % 2 == 0) ? Rat(1) : Rat(-1);
            two_sum_add(acc, lead, -expect);
            for (const auto& [cell, coeff] : acc) {
                res.literal_identity = false;
                if (trailing_g(cell.letters, g) >= sh.t) {
                    res.graded_identity = false;
                    if (res.failure.empty())
                        res.failure = v.str() + " -> residue " + cell.str();
                }
            }
            ++res.cells_checked;
        }
    }
    return res;
}

std::vector<std::pair<long, long>> bianchi_composite_ranks(const TwoSidedWindow& src,
                                                           const TwoSidedWindow& margin) {
    const ConjClass& c = src.cls();
    const int g = src.g_class();
    std::vector<std::pair<long, long>> out;
    for (int t = 1; t + 1 <= src.t_max(); ++t) {
        SparseMat m(margin.dim(t), src.dim(t));
        for (int col = 0; col < int(src.cells(t).size()); ++col) {
            const TwoCell& v = src.cells(t)[col];
            TwoCellSum acc = bianchi_composite(c, src.left(), src.right(), g, v);
            for (const auto& [idx, coeff] : margin.project_vec(t, acc)) m.add(idx, col, coeff);
        }
        m.compress();
        out.emplace_back(m.rank(), src.dim(t));
    }
    return out;
}

TwoSidedWindow truncation_dx(const FiniteGroup& g, const ConjClass& c, int g_class, int x,
                             Budget& budget) {
    if (x > 0) throw UsageError("truncation_dx: x must be <= 0");
    // alpha in [0, -x], beta = -alpha - t >= x; all cells have t <= -x
    return TwoSidedWindow(g, c, ModuleSpec::shift_nonneg(g_class),
                          ModuleSpec::custom({g_class}, /*support_all=*/false), -x, -x, 0, -x,
                          LetterMode::SomeLetterDiffers, g_class, budget);
}

BInclusionReport two_sided_b_inclusion(const FiniteGroup& g, const ConjClass& c, int g_class,
                                       long z, int t_max, long alpha_hi, Budget& budget) {
    BInclusionReport rep;
    TwoSidedWindow full(g, c, ModuleSpec::shift_nonneg(g_class), ModuleSpec::shift_laurent(g_class),
                        z, t_max, 0, alpha_hi, LetterMode::All, g_class, budget);
    TwoSidedWindow sub(g, c, ModuleSpec::shift_nonneg(g_class), ModuleSpec::shift_laurent(g_class),
                       z, t_max, 0, alpha_hi, LetterMode::AllLettersEqual, g_class, budget);
    TwoSidedWindow quot(g, c, ModuleSpec::shift_nonneg(g_class),
                        ModuleSpec::shift_laurent(g_class), z, t_max, 0, alpha_hi,
                        LetterMode::SomeLetterDiffers, g_class, budget);
    rep.full = full.based().homology();
    rep.sub = sub.based().homology();
    rep.quotient = quot.based().homology();
    rep.quotient_exact_on_trusted = rep.quotient.zero_on_trusted();
    rep.dims_match_on_trusted = true;
    for (const auto& row : rep.full.rows) {
        const auto& srow = rep.sub.at(row.degree);
        if (row.trusted && srow.trusted && row.homology != srow.homology)
            rep.dims_match_on_trusted = false;
    }
    return rep;
}

}  // namespace hurwitz
