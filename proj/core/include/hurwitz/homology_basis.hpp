#pragma once

#include <optional>
#include <vector>

#include "hurwitz/sparse.hpp"

namespace hurwitz {

// Basis of H = ker(d_out) / im(d_in) at one degree, with exact coordinates.
// Representatives are kernel vectors sifted against an echelon basis of the
// boundary space; everything is deterministic.
class HomologyBasis {
  public:
    // d_in may be an empty 0 x 0 matrix when nothing enters the degree.
    HomologyBasis(const SparseMat& d_out, const SparseMat& d_in);

    int dim() const { return int(reps_.size()); }
    int space_dim() const { return space_dim_; }
    const std::vector<SparseVec>& reps() const { return reps_; }

    bool is_cocycle(const SparseVec& v) const;
    // Coordinates of the class of a cocycle in this basis; throws MathError
    // if v is not a cocycle.
    std::vector<Rat> coords(const SparseVec& v) const;

  private:
    int space_dim_;
    const SparseMat* d_out_;
    std::vector<SparseVec> reps_;
    // rows of [boundaries | reps] with marker columns >= space_dim_ tracking
    // rep coefficients
    Echelon tracked_;
};

// Matrix of the map induced on homology by a chain map. chain_matrix sends
// the source degree to the target degree; the caller is responsible for
// having verified the chain-map property.
SparseMat induced_map(const HomologyBasis& source, const HomologyBasis& target,
                      const SparseMat& chain_matrix);

}  // namespace hurwitz
