#pragma once

#include <span>
#include <string>
#include <vector>

#include "hurwitz/util.hpp"

namespace hurwitz {

// Finite group given by its multiplication table. Elements are 0-based
// indices. Immutable after construction; safe to share across threads.
class FiniteGroup {
  public:
    static FiniteGroup dihedral(int ell);
    // H ⋊ Z/2 for H = ⊕ Z/d_i (all d_i odd), the involution acting by
    // inversion. dihedral(ell) coincides with semidirect({ell}).
    static FiniteGroup semidirect(const std::vector<int>& cyclic_factors);
    static FiniteGroup from_table(int order, std::vector<int> mult,
                                  std::vector<std::string> labels = {});
    static FiniteGroup from_table_file(const std::string& path);
    // "dihedral:<l>", "semidirect:<d1>x<d2>x...", "table:<path>"
    static FiniteGroup parse_spec(const std::string& spec);

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mult_[std::size_t(a) * order_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    // h^{-1} x h
    int conjugate(int x, int h) const { return mul(mul(inverse(h), x), h); }
    int power(int x, long e) const;
    int element_order(int x) const;

    const std::string& label(int a) const { return labels_[a]; }
    const std::string& spec() const { return spec_; }

    // Closure of the given elements under multiplication equals the group?
    bool generates(std::span<const int> elements) const;
    std::vector<int> subgroup_closure(std::span<const int> elements) const;

  private:
    FiniteGroup() = default;
    // Checks identity/inverse laws always, associativity exhaustively for
    // order <= 200.
    void validate() const;

    int order_ = 0;
    int identity_ = 0;
    std::vector<int> mult_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
    std::string spec_;
};

// A conjugacy class, its members sorted ascending.
struct ConjClass {
    const FiniteGroup* group = nullptr;
    std::vector<int> members;          // group element indices
    std::vector<int> pos;              // group element -> class position or -1

    int size() const { return int(members.size()); }
    int elem(int class_idx) const { return members[class_idx]; }
    int index_of(int group_elem) const;
    bool contains(int group_elem) const { return pos[group_elem] >= 0; }
    // class position of h^{-1} x h for class members x, h
    int conj(int x_idx, int h_idx) const;
};

// The class of involutions; fails if the involutions of G split into more
// than one conjugacy class or there are none.
ConjClass order_two_class(const FiniteGroup& g);

// True iff every h in c commutes with no other member of c.
bool centralizer_in_class_is_self(const FiniteGroup& g, const ConjClass& c);

// Finite abelian group presented by its cyclic factor orders.
struct AbelianShape {
    std::vector<long> cyclic_factors;
};

// |∧²H| = ∏_{i<j} gcd(d_i, d_j).
long wedge_square_order(const AbelianShape& h);

}  // namespace hurwitz
