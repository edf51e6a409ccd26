#include "hurwitz/complex.hpp"

#include "hurwitz/util.hpp"

namespace hurwitz {

const HomologyRow& HomologyReport::at(int degree) const {
    for (const auto& r : rows)
        if (r.degree == degree) return r;
    throw MathError("HomologyReport: degree " + std::to_string(degree) + " not present");
}

bool HomologyReport::zero_on_trusted() const {
    for (const auto& r : rows)
        if (r.trusted && r.homology != 0) return false;
    return true;
}

BasedComplex::BasedComplex(int lo, int hi, int dir, bool open_low, bool open_high)
    : lo_(lo), hi_(hi), dir_(dir), open_low_(open_low), open_high_(open_high) {
    if (hi < lo) throw MathError("BasedComplex: empty window");
    if (dir != 1 && dir != -1) throw MathError("BasedComplex: dir must be +1 or -1");
    std::size_t n = std::size_t(hi - lo + 1);
    dims_.assign(n, 0);
    labels_.resize(n);
    d_.resize(n);
    d_set_.assign(n, 0);
}

int BasedComplex::idx(int k) const {
    if (k < lo_ || k > hi_) throw MathError("BasedComplex: degree out of window");
    return k - lo_;
}

long BasedComplex::total_dim() const {
    long t = 0;
    for (long d : dims_) t += d;
    return t;
}

void BasedComplex::set_basis(int k, std::vector<std::string> labels) {
    dims_[idx(k)] = long(labels.size());
    labels_[idx(k)] = std::move(labels);
}

void BasedComplex::set_d(int k, SparseMat m) {
    int target = k + dir_;
    if (target < lo_ || target > hi_)
        throw MathError("BasedComplex::set_d: target degree outside window");
    if (m.cols() != dim(k) || m.rows() != dim(target))
        throw MathError("BasedComplex::set_d: shape mismatch at degree " + std::to_string(k));
    m.compress();
    d_[idx(k)] = std::move(m);
    d_set_[idx(k)] = 1;
}

bool BasedComplex::has_d(int k) const {
    if (k < lo_ || k > hi_) return false;
    return d_set_[idx(k)];
}

const SparseMat& BasedComplex::d(int k) const {
    if (!has_d(k)) throw MathError("BasedComplex: no differential at degree " + std::to_string(k));
    return d_[idx(k)];
}

bool BasedComplex::d_known(int k) const {
    if (has_d(k)) return true;
    // leaving the window at the top/bottom of a closed complex means d = 0
    if (dir_ == 1 && k == hi_ && !open_high_) return true;
    if (dir_ == -1 && k == lo_ && !open_low_) return true;
    return false;
}

void BasedComplex::verify_dd_zero() const {
    for (int k = lo_; k <= hi_; ++k) {
        int mid = k + dir_;
        if (!has_d(k) || mid < lo_ || mid > hi_ || !has_d(mid)) continue;
        SparseMat prod = d(mid).mul(d(k));
        prod.compress();
        if (prod.is_zero()) continue;
        for (int r = 0; r < prod.rows(); ++r) {
            if (prod.row(r).empty()) continue;
            int src = prod.row(r).front().first;
            std::string label = src < long(basis(k).size()) && !basis(k).empty()
                                    ? basis(k)[src]
                                    : ("#" + std::to_string(src));
            throw MathError("d∘d != 0 at degree " + std::to_string(k) + ", basis element " + label);
        }
    }
}

HomologyReport BasedComplex::homology() const {
    verify_dd_zero();
    HomologyReport rep;
    std::vector<long> rank_out(hi_ - lo_ + 1, 0);
    std::vector<char> out_known(hi_ - lo_ + 1, 0);
    for (int k = lo_; k <= hi_; ++k) {
        if (has_d(k)) {
            rank_out[idx(k)] = d(k).rank();
            out_known[idx(k)] = 1;
        } else if (d_known(k)) {
            out_known[idx(k)] = 1;  // zero map past a closed end
        }
    }
    rep.trusted_lo = hi_ + 1;
    rep.trusted_hi = lo_ - 1;
    for (int k = lo_; k <= hi_; ++k) {
        HomologyRow row;
        row.degree = k;
        row.dim = dim(k);
        int prev = k - dir_;
        bool in_known;
        if (prev >= lo_ && prev <= hi_) {
            row.rank_in = out_known[idx(prev)] ? rank_out[idx(prev)] : 0;
            in_known = out_known[idx(prev)];
        } else {
            // nothing enters from past a closed end
            in_known = (dir_ == 1) ? !open_low_ : !open_high_;
            row.rank_in = 0;
        }
        row.rank_out = out_known[idx(k)] ? rank_out[idx(k)] : 0;
        row.trusted = in_known && out_known[idx(k)];
        row.homology = row.dim - row.rank_in - row.rank_out;
        if (row.trusted && row.homology < 0)
            throw MathError("negative homology dimension at degree " + std::to_string(k));
        if (row.trusted) {
            rep.trusted_lo = std::min(rep.trusted_lo, k);
            rep.trusted_hi = std::max(rep.trusted_hi, k);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace hurwitz
