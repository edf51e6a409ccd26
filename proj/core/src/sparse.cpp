#include "hurwitz/sparse.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "hurwitz/util.hpp"

namespace hurwitz {

SparseVec sv_normalize(SparseVec v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& [i, x] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += x;
        else
            out.emplace_back(i, std::move(x));
        if (!out.empty() && is_zero(out.back().second)) out.pop_back();
    }
    return out;
}

void sv_axpy(SparseVec& r, const Rat& f, const SparseVec& a) {
    if (is_zero(f) || a.empty()) return;
    SparseVec out;
    out.reserve(r.size() + a.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < a.size()) {
        if (j == a.size() || (i < r.size() && r[i].first < a[j].first)) {
            out.push_back(std::move(r[i++]));
        } else if (i == r.size() || a[j].first < r[i].first) {
            out.emplace_back(a[j].first, f * a[j].second);
            ++j;
        } else {
            Rat v = r[i].second + f * a[j].second;
            if (!is_zero(v)) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

Rat sv_dot(const SparseVec& a, const SparseVec& b) {
    Rat acc = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            ++i;
        else if (b[j].first < a[i].first)
            ++j;
        else
            acc += a[i++].second * b[j++].second;
    }
    return acc;
}

SparseVec sv_scale(SparseVec v, const Rat& f) {
    if (is_zero(f)) return {};
    for (auto& [i, x] : v) x *= f;
    return v;
}

long SparseMat::nnz() const {
    long n = 0;
    for (const auto& r : row_) n += long(r.size());
    return n;
}

void SparseMat::add(int r, int c, Rat v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw MathError("SparseMat::add: index out of range");
    if (hurwitz::is_zero(v)) return;
    row_[r].emplace_back(c, std::move(v));
    dirty_ = true;
}

void SparseMat::compress() {
    if (!dirty_) return;
    for (auto& r : row_) r = sv_normalize(std::move(r));
    dirty_ = false;
}

SparseMat SparseMat::transpose() const {
    SparseMat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r]) t.row_[c].emplace_back(r, v);
    // rows scanned in increasing order, so each transposed row is sorted
    return t;
}

SparseMat SparseMat::mul(const SparseMat& rhs) const {
    if (cols_ != rhs.rows_) throw MathError("SparseMat::mul: shape mismatch");
    SparseMat out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r) {
        SparseVec acc;
        for (const auto& [k, v] : row_[r]) sv_axpy(acc, v, rhs.row_[k]);
        out.row_[r] = std::move(acc);
    }
    return out;
}

std::vector<Rat> SparseMat::apply(const std::vector<Rat>& x) const {
    if (int(x.size()) != cols_) throw MathError("SparseMat::apply: shape mismatch");
    std::vector<Rat> y(rows_, Rat(0));
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r]) y[r] += v * x[c];
    return y;
}

SparseVec SparseMat::apply(const SparseVec& x) const {
    SparseVec y;
    for (int r = 0; r < rows_; ++r) {
        Rat v = sv_dot(row_[r], x);
        if (!hurwitz::is_zero(v)) y.emplace_back(r, std::move(v));
    }
    return y;
}

bool SparseMat::operator==(const SparseMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (int r = 0; r < rows_; ++r)
        if (row_[r] != other.row_[r]) return false;
    return true;
}

namespace {

// Shared elimination core. Columns >= limit_col ride along as an augmented
// part and are never pivoted on. Pivot choice: sparsest live column, then the
// structurally shortest row in it, preferring unit pivot values; every tie
// breaks toward the lowest index. col_count[] is maintained as an upper bound
// (fill increments it, cancellation does not decrement) and recount() makes
// it exact before a column can win, so the scan below is both sound and
// deterministic.
struct Elimination {
    std::vector<SparseVec> rows;
    int limit_col;
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order

    Elimination(std::vector<SparseVec> r, int limit) : rows(std::move(r)), limit_col(limit) {}

    static bool row_has(const SparseVec& r, int c, Rat* val = nullptr) {
        auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(c, Rat(0)),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == r.end() || it->first != c) return false;
        if (val) *val = it->second;
        return true;
    }

    int structural_nnz(const SparseVec& r) const {
        int n = 0;
        for (const auto& [c, v] : r)
            if (c < limit_col) ++n;
        return n;
    }

    void run() {
        const int nrows = int(rows.size());
        std::vector<char> row_active(nrows, 1);
        std::vector<int> col_count(limit_col, 0);
        std::vector<std::vector<int>> col_rows(limit_col);  // lazy; may hold stale ids

        for (int r = 0; r < nrows; ++r)
            for (const auto& [c, v] : rows[r])
                if (c < limit_col) {
                    col_count[c]++;
                    col_rows[c].push_back(r);
                }

        auto recount = [&](int c) {
            std::vector<int> fresh;
            fresh.reserve(col_rows[c].size());
            for (int r : col_rows[c])
                if (row_active[r] && row_has(rows[r], c)) fresh.push_back(r);
            std::sort(fresh.begin(), fresh.end());
            fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
            col_rows[c] = std::move(fresh);
            col_count[c] = int(col_rows[c].size());
            return col_count[c];
        };

        for (;;) {
            int best_c = -1, best_n = INT32_MAX;
            for (int c = 0; c < limit_col; ++c) {
                if (col_count[c] == 0 || col_count[c] >= best_n) continue;
                int n = recount(c);
                if (n == 0) continue;
                if (n < best_n) {
                    best_n = n;
                    best_c = c;
                    if (n == 1) break;
                }
            }
            if (best_c < 0) break;

            int best_r = -1, best_len = INT32_MAX;
            bool best_unit = false;
            for (int r : col_rows[best_c]) {
                Rat v;
                if (!row_active[r] || !row_has(rows[r], best_c, &v)) continue;
                int len = structural_nnz(rows[r]);
                bool unit = is_unit(v);
                if (len < best_len || (len == best_len && unit && !best_unit)) {
                    best_len = len;
                    best_r = r;
                    best_unit = unit;
                }
            }

            Rat pval;
            row_has(rows[best_r], best_c, &pval);
            const SparseVec prow = rows[best_r];

            for (int r : std::vector<int>(col_rows[best_c])) {
                if (r == best_r || !row_active[r]) continue;
                Rat v;
                if (!row_has(rows[r], best_c, &v)) continue;
                sv_axpy(rows[r], -v / pval, prow);
                for (const auto& [c, x] : rows[r])
                    if (c < limit_col) {
                        col_count[c]++;
                        col_rows[c].push_back(r);
                    }
            }

            row_active[best_r] = 0;
            col_count[best_c] = 0;
            col_rows[best_c].clear();
            pivots.emplace_back(best_r, best_c);
        }
    }
};

}  // namespace

int SparseMat::rank() const {
    SparseMat m = *this;
    m.compress();
    Elimination e(std::move(m.row_), cols_);
    e.run();
    return int(e.pivots.size());
}

std::vector<SparseVec> SparseMat::nullspace() const {
    SparseMat m = *this;
    m.compress();
    Elimination e(std::move(m.row_), cols_);
    e.run();

    std::vector<char> is_pivot_col(cols_, 0);
    for (const auto& [r, c] : e.pivots) is_pivot_col[c] = 1;

    std::vector<SparseVec> basis;
    for (int cf = 0; cf < cols_; ++cf) {
        if (is_pivot_col[cf]) continue;
        SparseVec x{{cf, Rat(1)}};
        // A pivot row may still contain columns pivoted after its own turn,
        // so substitute in reverse elimination order.
        for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
            const auto& [pr, pc] = *it;
            Rat acc = sv_dot(e.rows[pr], x);
            if (hurwitz::is_zero(acc)) continue;
            Rat pval;
            Elimination::row_has(e.rows[pr], pc, &pval);
            sv_axpy(x, Rat(1), SparseVec{{pc, -acc / pval}});
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::variant<std::vector<Rat>, NoSolution> solve(const SparseMat& m, const std::vector<Rat>& b) {
    if (int(b.size()) != m.rows()) throw MathError("solve: shape mismatch");
    const int n = m.cols();
    SparseMat mm = m;
    mm.compress();
    std::vector<SparseVec> aug(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        aug[r] = mm.row(r);
        if (!is_zero(b[r])) aug[r].emplace_back(n, b[r]);
    }
    Elimination e(std::move(aug), n);
    e.run();

    // inconsistent iff a reduced row is zero on the matrix part, nonzero in b
    bool inconsistent = false;
    for (const auto& r : e.rows)
        if (r.size() == 1 && r[0].first == n) inconsistent = true;
    if (inconsistent) {
        SparseVec bv;
        for (int r = 0; r < m.rows(); ++r)
            if (!is_zero(b[r])) bv.emplace_back(r, b[r]);
        for (auto& y : mm.transpose().nullspace())
            if (!is_zero(sv_dot(y, bv))) return NoSolution{std::move(y)};
        throw MathError("solve: inconsistency detected but no certificate found");
    }

    std::vector<Rat> x(n, Rat(0));
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
        const auto& [pr, pc] = *it;
        Rat acc = 0, pval;
        for (const auto& [c, v] : e.rows[pr]) {
            if (c == pc)
                pval = v;
            else if (c == n)
                acc -= v;
            else
                acc -= v * x[c];
        }
        x[pc] = acc / pval;
    }
    return x;
}

void SparseMat::save_coord(std::ostream& os) const {
    os << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r]) os << r << ' ' << c << ' ' << rat_str(v) << '\n';
}

SparseMat SparseMat::load_coord(std::istream& is) {
    int rows, cols;
    long nnz;
    if (!(is >> rows >> cols >> nnz)) throw UsageError("bad matrix header");
    SparseMat m(rows, cols);
    for (long k = 0; k < nnz; ++k) {
        int r, c;
        std::string v;
        if (!(is >> r >> c >> v)) throw UsageError("truncated matrix file");
        m.add(r, c, rat_parse(v));
    }
    m.compress();
    return m;
}

SparseVec Echelon::reduce(SparseVec v) const {
    for (const auto& row : rows_) {
        if (v.empty()) break;
        int lead = row.front().first;
        auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(lead, Rat(0)),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == v.end() || it->first != lead) continue;
        Rat f = -it->second / row.front().second;
        sv_axpy(v, f, row);
    }
    return v;
}

bool Echelon::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), v,
                                [](const SparseVec& a, const SparseVec& b) {
                                    return a.front().first < b.front().first;
                                });
    rows_.insert(pos, std::move(v));
    return true;
}

}  // namespace hurwitz
