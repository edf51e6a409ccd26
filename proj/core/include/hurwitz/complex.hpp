#pragma once

#include <string>
#include <vector>

#include "hurwitz/sparse.hpp"

namespace hurwitz {

struct HomologyRow {
    int degree = 0;
    long dim = 0;
    long rank_out = 0;  // rank of the differential leaving this degree
    long rank_in = 0;   // rank of the differential arriving here
    long homology = 0;  // dim - rank_out - rank_in
    bool trusted = true;
};

struct HomologyReport {
    std::vector<HomologyRow> rows;
    int trusted_lo = 0, trusted_hi = -1;  // empty when lo > hi

    const HomologyRow& at(int degree) const;
    bool zero_on_trusted() const;
};

// A finite window of a graded vector space with a sparse differential.
// Degrees run lo..hi; d(k) maps degree k to k+dir with dir = +1 or -1.
// open_low/open_high record whether the underlying complex continues past
// the window; homology at a degree whose incoming or outgoing differential
// is not fully represented is reported but flagged untrusted.
class BasedComplex {
  public:
    BasedComplex() = default;
    BasedComplex(int lo, int hi, int dir, bool open_low, bool open_high);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int dir() const { return dir_; }
    bool open_low() const { return open_low_; }
    bool open_high() const { return open_high_; }

    long dim(int k) const { return dims_[idx(k)]; }
    long total_dim() const;

    void set_basis(int k, std::vector<std::string> labels);
    const std::vector<std::string>& basis(int k) const { return labels_[idx(k)]; }

    // The differential leaving degree k. Present for every k whose target
    // k+dir still lies in the window.
    void set_d(int k, SparseMat m);
    bool has_d(int k) const;
    const SparseMat& d(int k) const;

    // True iff the differential leaving degree k is fully known: either a
    // stored matrix, or the complex is closed past k in that direction.
    bool d_known(int k) const;

    // Exact check that consecutive differentials compose to zero; throws
    // MathError naming a violating basis element otherwise.
    void verify_dd_zero() const;

    HomologyReport homology() const;

  private:
    int idx(int k) const;

    int lo_ = 0, hi_ = -1, dir_ = 1;
    bool open_low_ = false, open_high_ = false;
    std::vector<long> dims_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<SparseMat> d_;
    std::vector<char> d_set_;
};

}  // namespace hurwitz
