#include "hurwitz/homology_basis.hpp"

#include "hurwitz/util.hpp"

namespace hurwitz {

HomologyBasis::HomologyBasis(const SparseMat& d_out, const SparseMat& d_in)
    : space_dim_(d_out.cols()), d_out_(&d_out) {
    if (d_in.rows() != 0 && d_in.rows() != space_dim_)
        throw MathError("HomologyBasis: boundary shape mismatch");

    Echelon boundaries;
    if (d_in.rows() == space_dim_) {
        SparseMat cols = d_in.transpose();  // rows of the transpose = columns of d_in
        for (int r = 0; r < cols.rows(); ++r) {
            SparseVec v = cols.row(r);
            if (!v.empty()) boundaries.insert(v);
        }
    }

    // marker trick: row k of the tracked echelon carries e_{space_dim_+k}
    // so that reducing a cocycle leaves its rep coordinates in the markers
    Echelon sifter = boundaries;
    int marker = space_dim_;
    // seed the tracked echelon with the boundary rows (no markers needed)
    tracked_ = Echelon();
    if (d_in.rows() == space_dim_) {
        SparseMat cols = d_in.transpose();
        for (int r = 0; r < cols.rows(); ++r) {
            SparseVec v = cols.row(r);
            if (!v.empty()) tracked_.insert(std::move(v));
        }
    }
    for (auto& k : d_out.nullspace()) {
        SparseVec residue = sifter.reduce(k);
        if (residue.empty()) continue;
        sifter.insert(residue);
        reps_.push_back(k);
        SparseVec tagged = k;
        tagged.emplace_back(marker++, Rat(1));
        tracked_.insert(std::move(tagged));
    }
}

bool HomologyBasis::is_cocycle(const SparseVec& v) const {
    return d_out_->apply(v).empty();
}

std::vector<Rat> HomologyBasis::coords(const SparseVec& v) const {
    if (!is_cocycle(v)) throw MathError("HomologyBasis::coords: not a cocycle");
    SparseVec residue = tracked_.reduce(v);
    std::vector<Rat> out(reps_.size(), Rat(0));
    for (const auto& [idx, coeff] : residue) {
        if (idx < space_dim_)
            throw MathError("HomologyBasis::coords: cocycle not in span of basis + boundaries");
        // the tracked rows subtract marker tags, so negate to recover coords
        out[idx - space_dim_] = -coeff;
    }
    return out;
}

SparseMat induced_map(const HomologyBasis& source, const HomologyBasis& target,
                      const SparseMat& chain_matrix) {
    if (chain_matrix.cols() != source.space_dim() || chain_matrix.rows() != target.space_dim())
        throw MathError("induced_map: shape mismatch");
    SparseMat m(target.dim(), source.dim());
    for (int j = 0; j < source.dim(); ++j) {
        SparseVec image = chain_matrix.apply(source.reps()[j]);
        std::vector<Rat> co = target.coords(image);
        for (int i = 0; i < target.dim(); ++i) m.add(i, j, co[i]);
    }
    m.compress();
    return m;
}

}  // namespace hurwitz
