#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "hurwitz/rational.hpp"

namespace hurwitz {

// Sparse vector: entries sorted by index, no zeros, no duplicates.
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec sv_normalize(SparseVec v);  // sort, combine, drop zeros
// r += f * a, keeping the representation canonical.
void sv_axpy(SparseVec& r, const Rat& f, const SparseVec& a);
Rat sv_dot(const SparseVec& a, const SparseVec& b);
SparseVec sv_scale(SparseVec v, const Rat& f);

// Sparse rational matrix in row-major form. Acts on column vectors:
// an m x n matrix maps Q^n -> Q^m.
class SparseMat {
  public:
    SparseMat() = default;
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long nnz() const;
    bool is_zero() const { return nnz() == 0; }

    // Accumulates; call compress() once assembly is done.
    void add(int r, int c, Rat v);
    void compress();

    const SparseVec& row(int r) const { return row_[r]; }
    void set_row(int r, SparseVec v) { row_[r] = std::move(v); }

    SparseMat transpose() const;
    SparseMat mul(const SparseMat& rhs) const;  // this * rhs
    std::vector<Rat> apply(const std::vector<Rat>& x) const;
    SparseVec apply(const SparseVec& x) const;

    // Rank over Q. Sparse elimination with Markowitz-style pivoting:
    // sparsest active column first, then the shortest row in it, preferring
    // unit pivots; all ties break toward the lowest index, so the result and
    // the elimination order are deterministic.
    int rank() const;

    // Basis of { x : Mx = 0 }, deterministic, echelonized over the free
    // columns in increasing order.
    std::vector<SparseVec> nullspace() const;

    // Coordinate text format: "rows cols nnz" then one "r c num/den" per entry.
    void save_coord(std::ostream& os) const;
    static SparseMat load_coord(std::istream& is);

    bool operator==(const SparseMat& other) const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<SparseVec> row_;
    bool dirty_ = false;
};

// Certificate of inconsistency: y with y^T M = 0 and y^T b != 0.
struct NoSolution {
    SparseVec left_certificate;
};

// Any exact solution of M x = b, or a NoSolution certificate.
std::variant<std::vector<Rat>, NoSolution> solve(const SparseMat& m, const std::vector<Rat>& b);

// Incremental row-echelon reducer over Q. Rows are kept with distinct
// leading columns; insert() reduces and stores, reduce() only reduces.
class Echelon {
  public:
    // Residue of v after reduction by the stored rows (empty iff v in span).
    SparseVec reduce(SparseVec v) const;
    // Reduce, then store the residue if nonzero. Returns true if stored.
    bool insert(SparseVec v);
    std::size_t size() const { return rows_.size(); }

  private:
    std::vector<SparseVec> rows_;  // kept sorted by leading column
};

}  // namespace hurwitz
