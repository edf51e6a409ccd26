#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hurwitz/group.hpp"

namespace hurwitz {

// A branch-monodromy datum: n class-member positions (indices into c).
struct CTuple {
    std::vector<uint8_t> entries;

    int n() const { return int(entries.size()); }
    bool operator==(const CTuple& o) const { return entries == o.entries; }
};

// Elementary braid move on strands i, i+1 (1-based, 1 <= i <= n-1):
// (.., a, b, ..) -> (.., b, b^{-1} a b, ..). inverse=true applies the
// inverse move (.., a, b, ..) -> (.., a b a^{-1}, a, ..).
CTuple braid_generator(const ConjClass& c, int i, const CTuple& t, bool inverse = false);

// Ordered product of the entries, as a group element.
int boundary_monodromy(const ConjClass& c, const CTuple& t);

enum class Restriction { All, Generating };

// Orbits of the braid action on the admissible subset of c^n.
struct OrbitTable {
    int n = 0;
    Restriction restriction = Restriction::All;
    long admissible = 0;                    // number of admissible tuples
    std::vector<int32_t> orbit_of;          // per encoded tuple; -1 = not admissible
    std::vector<long> orbit_size;
    std::vector<int> orbit_monodromy;       // group element per orbit
    std::vector<uint64_t> orbit_rep;        // least encoded tuple per orbit

    int orbit_count() const { return int(orbit_size.size()); }
};

// Canonical little-endian mixed-radix encoding of tuples, fixed so orbit
// identifiers are stable across runs.
uint64_t encode_tuple(const CTuple& t, int radix);
CTuple decode_tuple(uint64_t code, int radix, int n);

// Breadth-first closure of every admissible tuple under all braid moves.
// Admissibility for Restriction::Generating means the entries generate G;
// the braid action preserves the generated subgroup, so this is stable.
OrbitTable enumerate_orbits(const FiniteGroup& g, const ConjClass& c, int n,
                            Restriction restriction, Budget& budget);

// Number of generating orbits with the given boundary monodromy.
long component_count(const FiniteGroup& g, const ConjClass& c, int n, int monodromy,
                     Budget& budget);

// Orbit counts per n together with the first n at which the counts match
// `predicted` and remain constant for two more steps of the same parity.
struct ComponentScan {
    std::vector<std::pair<int, long>> counts;  // (n, count) for matching parity
    long predicted = -1;
    int onset = -1;  // -1 when never stable within the scanned range
};

ComponentScan scan_component_counts(const FiniteGroup& g, const ConjClass& c, int n_max,
                                    int monodromy, long predicted, Budget& budget);

}  // namespace hurwitz
