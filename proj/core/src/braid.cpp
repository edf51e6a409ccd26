#include "hurwitz/braid.hpp"

#include <algorithm>
#include <deque>

namespace hurwitz {

CTuple braid_generator(const ConjClass& c, int i, const CTuple& t, bool inverse) {
    const int n = t.n();
    if (i < 1 || i > n - 1) throw UsageError("braid_generator: strand index out of range");
    CTuple out = t;
    int a = t.entries[i - 1], b = t.entries[i];
    if (!inverse) {
        out.entries[i - 1] = uint8_t(b);
        out.entries[i] = uint8_t(c.conj(a, b));
    } else {
        // (a, b) -> (a b a^{-1}, a); the conjugating element is a^{-1}
        const FiniteGroup& g = *c.group;
        int ge = g.mul(g.mul(c.elem(a), c.elem(b)), g.inverse(c.elem(a)));
        out.entries[i - 1] = uint8_t(c.index_of(ge));
        out.entries[i] = uint8_t(a);
    }
    return out;
}

int boundary_monodromy(const ConjClass& c, const CTuple& t) {
    const FiniteGroup& g = *c.group;
    int p = g.identity();
    for (uint8_t e : t.entries) p = g.mul(p, c.elem(e));
    return p;
}

uint64_t encode_tuple(const CTuple& t, int radix) {
    uint64_t code = 0, stride = 1;
    for (uint8_t e : t.entries) {
        code += uint64_t(e) * stride;
        stride *= uint64_t(radix);
    }
    return code;
}

CTuple decode_tuple(uint64_t code, int radix, int n) {
    CTuple t;
    t.entries.resize(n);
    for (int k = 0; k < n; ++k) {
        t.entries[k] = uint8_t(code % uint64_t(radix));
        code /= uint64_t(radix);
    }
    return t;
}

namespace {

// In-place braid move on a decoded buffer; returns the re-encoded code.
uint64_t apply_move(const ConjClass& c, std::vector<uint8_t>& buf, int i, bool inverse,
                    const std::vector<uint64_t>& strides) {
    int a = buf[i - 1], b = buf[i];
    int na, nb;
    if (!inverse) {
        na = b;
        nb = c.conj(a, b);
    } else {
        const FiniteGroup& g = *c.group;
        na = c.index_of(g.mul(g.mul(c.elem(a), c.elem(b)), g.inverse(c.elem(a))));
        nb = a;
    }
    uint64_t delta = (uint64_t(na) - uint64_t(a)) * strides[i - 1] +
                     (uint64_t(nb) - uint64_t(b)) * strides[i];
    buf[i - 1] = uint8_t(na);
    buf[i] = uint8_t(nb);
    return delta;  // caller adds to the current code (mod 2^64 wraps cancel)
}

}  // namespace

OrbitTable enumerate_orbits(const FiniteGroup& g, const ConjClass& c, int n,
                            Restriction restriction, Budget& budget) {
    if (n < 1) throw UsageError("enumerate_orbits: n must be >= 1");
    const int radix = c.size();
    long double est = 1;
    for (int k = 0; k < n; ++k) est *= radix;
    if (est > 1e18) throw ResourceError("enumerate_orbits: state space exceeds 2^60");
    const uint64_t total = [&] {
        uint64_t t = 1;
        for (int k = 0; k < n; ++k) t *= uint64_t(radix);
        return t;
    }();
    budget.charge(std::size_t(total) * sizeof(int32_t) + std::size_t(total) / 8,
                  "enumerate_orbits");

    std::vector<uint64_t> strides(n);
    uint64_t s = 1;
    for (int k = 0; k < n; ++k) {
        strides[k] = s;
        s *= uint64_t(radix);
    }

    OrbitTable tab;
    tab.n = n;
    tab.restriction = restriction;
    tab.orbit_of.assign(total, -1);

    // generation depends only on the set of distinct entries; memoize by
    // class-member bitmask (|c| <= 32 here)
    std::vector<int8_t> gen_memo;
    if (radix <= 32) gen_memo.assign(std::size_t(1) << radix, -1);
    std::vector<int> elems;
    auto admissible = [&](uint64_t code) {
        if (restriction == Restriction::All) return true;
        CTuple t = decode_tuple(code, radix, n);
        uint32_t mask = 0;
        for (uint8_t e : t.entries) mask |= uint32_t(1) << e;
        if (!gen_memo.empty() && gen_memo[mask] >= 0) return gen_memo[mask] != 0;
        elems.clear();
        for (int k = 0; k < radix; ++k)
            if (mask & (uint32_t(1) << k)) elems.push_back(c.elem(k));
        bool ok = g.generates(elems);
        if (!gen_memo.empty()) gen_memo[mask] = ok ? 1 : 0;
        return ok;
    };

    std::deque<uint64_t> queue;
    std::vector<uint8_t> buf;
    for (uint64_t start = 0; start < total; ++start) {
        if (tab.orbit_of[start] >= 0 || !admissible(start)) continue;
        const int32_t id = tab.orbit_count();
        tab.orbit_of[start] = id;
        tab.orbit_rep.push_back(start);
        long size = 0;
        queue.push_back(start);
        while (!queue.empty()) {
            uint64_t code = queue.front();
            queue.pop_front();
            ++size;
            CTuple t = decode_tuple(code, radix, n);
            for (int i = 1; i <= n - 1; ++i) {
                for (bool inverse : {false, true}) {
                    buf = t.entries;
                    uint64_t next = code + apply_move(c, buf, i, inverse, strides);
                    if (tab.orbit_of[next] < 0) {
                        tab.orbit_of[next] = id;
                        queue.push_back(next);
                    }
                }
            }
        }
        tab.orbit_size.push_back(size);
        tab.orbit_monodromy.push_back(
            boundary_monodromy(c, decode_tuple(start, radix, n)));
        tab.admissible += size;
    }
    budget.release(std::size_t(total) * sizeof(int32_t) + std::size_t(total) / 8);
    return tab;
}

long component_count(const FiniteGroup& g, const ConjClass& c, int n, int monodromy,
                     Budget& budget) {
    OrbitTable tab = enumerate_orbits(g, c, n, Restriction::Generating, budget);
    long count = 0;
    for (int k = 0; k < tab.orbit_count(); ++k)
        if (tab.orbit_monodromy[k] == monodromy) ++count;
    return count;
}

ComponentScan scan_component_counts(const FiniteGroup& g, const ConjClass& c, int n_max,
                                    int monodromy, long predicted, Budget& budget) {
    ComponentScan scan;
    scan.predicted = predicted;
    // parity of the monodromy: does it lie in the index-2 subgroup generated
    // by products of pairs of class members?
    std::vector<int> pair_products;
    for (int x : c.members)
        for (int y : c.members) pair_products.push_back(g.mul(x, y));
    auto even_part = g.subgroup_closure(pair_products);
    bool mono_even = std::binary_search(even_part.begin(), even_part.end(), monodromy);
    int start = mono_even ? 2 : 1;
    for (int n = start; n <= n_max; n += 2)
        scan.counts.emplace_back(n, component_count(g, c, n, monodromy, budget));
    for (std::size_t i = 0; i + 2 < scan.counts.size(); ++i) {
        if (scan.counts[i].second == predicted && scan.counts[i + 1].second == predicted &&
            scan.counts[i + 2].second == predicted) {
            scan.onset = scan.counts[i].first;
            break;
        }
    }
    return scan;
}

}  // namespace hurwitz
