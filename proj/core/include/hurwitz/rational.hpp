#pragma once

#include <gmpxx.h>

#include <string>

namespace hurwitz {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as they are produced by arithmetic or by
// canonicalize(); the helpers below are the only construction paths we use.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "a/b" or "a". Throws std::invalid_argument on malformed input.
inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }
inline bool is_unit(const Rat& q) { return q == 1 || q == -1; }

}  // namespace hurwitz
