#include "hurwitz/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hurwitz {

void FiniteGroup::validate() const {
    if (order_ <= 0) throw MathError("group of nonpositive order");
    for (int a = 0; a < order_; ++a) {
        if (mul(identity_, a) != a || mul(a, identity_) != a)
            throw MathError("identity law fails");
        if (mul(a, inv_[a]) != identity_ || mul(inv_[a], a) != identity_)
            throw MathError("inverse law fails");
    }
    if (order_ <= 200) {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw MathError("multiplication table is not associative");
    }
}

FiniteGroup FiniteGroup::dihedral(int ell) {
    if (ell < 3 || ell % 2 == 0)
        throw UsageError("dihedral: parameter must be odd and >= 3, got " + std::to_string(ell));
    FiniteGroup g = semidirect({ell});
    g.spec_ = "dihedral:" + std::to_string(ell);
    g.labels_.clear();
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < ell; ++a) {
            std::string s;
            if (a == 0 && b == 0) s = "e";
            if (a > 0) s = a == 1 ? "r" : "r^" + std::to_string(a);
            if (b == 1) s += "s";
            g.labels_.push_back(s);
        }
    return g;
}

FiniteGroup FiniteGroup::semidirect(const std::vector<int>& cyclic_factors) {
    long h_order = 1;
    for (int d : cyclic_factors) {
        if (d < 1 || d % 2 == 0)
            throw UsageError("semidirect: cyclic factors must be odd and >= 1");
        h_order *= d;
    }
    if (h_order > 100000) throw UsageError("semidirect: group too large");
    const int m = int(h_order);
    const int n = 2 * m;

    // H-part index is little-endian mixed radix over the factors; the full
    // index is h + m*b for reflection bit b.
    auto h_add = [&](int x, int y, int sign) {
        int out = 0, stride = 1;
        for (int d : cyclic_factors) {
            int xd = (x / stride) % d, yd = (y / stride) % d;
            int s = ((xd + sign * yd) % d + d) % d;
            out += s * stride;
            stride *= d;
        }
        return out;
    };

    FiniteGroup g;
    g.order_ = n;
    g.identity_ = 0;
    g.mult_.assign(std::size_t(n) * n, 0);
    for (int b1 = 0; b1 < 2; ++b1)
        for (int a1 = 0; a1 < m; ++a1)
            for (int b2 = 0; b2 < 2; ++b2)
                for (int a2 = 0; a2 < m; ++a2) {
                    // (a1,b1)(a2,b2) = (a1 + (-1)^{b1} a2, b1 xor b2)
                    int a = h_add(a1, a2, b1 ? -1 : 1);
                    int b = b1 ^ b2;
                    g.mult_[std::size_t(a1 + m * b1) * n + (a2 + m * b2)] = a + m * b;
                }
    g.inv_.assign(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (g.mul(x, y) == 0) g.inv_[x] = y;
    g.labels_.resize(n);
    for (int x = 0; x < n; ++x) g.labels_[x] = "g" + std::to_string(x);
    std::string spec = "semidirect:";
    for (std::size_t i = 0; i < cyclic_factors.size(); ++i)
        spec += (i ? "x" : "") + std::to_string(cyclic_factors[i]);
    g.spec_ = spec;
    g.validate();
    return g;
}

FiniteGroup FiniteGroup::from_table(int order, std::vector<int> mult,
                                    std::vector<std::string> labels) {
    if (int(mult.size()) != order * order) throw UsageError("table size != order^2");
    for (int v : mult)
        if (v < 0 || v >= order) throw UsageError("table entry out of range");
    FiniteGroup g;
    g.order_ = order;
    g.mult_ = std::move(mult);
    // locate the two-sided identity
    g.identity_ = -1;
    for (int e = 0; e < order; ++e) {
        bool ok = true;
        for (int a = 0; a < order && ok; ++a)
            ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) {
            g.identity_ = e;
            break;
        }
    }
    if (g.identity_ < 0) throw UsageError("table has no identity element");
    g.inv_.assign(order, -1);
    for (int x = 0; x < order; ++x) {
        for (int y = 0; y < order; ++y)
            if (g.mul(x, y) == g.identity_ && g.mul(y, x) == g.identity_) g.inv_[x] = y;
        if (g.inv_[x] < 0) throw UsageError("element without two-sided inverse");
    }
    if (labels.empty()) {
        labels.resize(order);
        for (int x = 0; x < order; ++x) labels[x] = "g" + std::to_string(x);
    }
    g.labels_ = std::move(labels);
    g.spec_ = "table:order" + std::to_string(order);
    g.validate();
    return g;
}

FiniteGroup FiniteGroup::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open group table file: " + path);
    int order;
    if (!(in >> order) || order <= 0) throw UsageError("bad order line in " + path);
    std::vector<int> mult(std::size_t(order) * order);
    for (auto& v : mult)
        if (!(in >> v)) throw UsageError("truncated group table in " + path);
    FiniteGroup g = from_table(order, std::move(mult));
    g.spec_ = "table:" + path;
    return g;
}

FiniteGroup FiniteGroup::parse_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("bad group spec: " + spec);
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "dihedral") return dihedral(std::stoi(rest));
    if (kind == "table") return from_table_file(rest);
    if (kind == "semidirect") {
        std::vector<int> factors;
        std::stringstream ss(rest);
        std::string part;
        while (std::getline(ss, part, 'x')) factors.push_back(std::stoi(part));
        if (factors.empty()) throw UsageError("bad group spec: " + spec);
        return semidirect(factors);
    }
    throw UsageError("unknown group spec kind: " + kind);
}

int FiniteGroup::power(int x, long e) const {
    int acc = identity_;
    long k = ((e % order_) + order_) % order_;  // element order divides |G|
    for (long i = 0; i < k; ++i) acc = mul(acc, x);
    return acc;
}

int FiniteGroup::element_order(int x) const {
    int acc = x, n = 1;
    while (acc != identity_) {
        acc = mul(acc, x);
        ++n;
    }
    return n;
}

std::vector<int> FiniteGroup::subgroup_closure(std::span<const int> elements) const {
    std::vector<char> seen(order_, 0);
    std::vector<int> frontier{identity_};
    seen[identity_] = 1;
    for (int e : elements)
        if (!seen[e]) {
            seen[e] = 1;
            frontier.push_back(e);
        }
    for (std::size_t i = 0; i < frontier.size(); ++i)
        for (std::size_t j = 0; j < frontier.size(); ++j) {
            int p = mul(frontier[i], frontier[j]);
            if (!seen[p]) {
                seen[p] = 1;
                frontier.push_back(p);
            }
        }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

bool FiniteGroup::generates(std::span<const int> elements) const {
    return int(subgroup_closure(elements).size()) == order_;
}

int ConjClass::index_of(int group_elem) const {
    int p = pos[group_elem];
    if (p < 0) throw UsageError("element is not in the conjugacy class");
    return p;
}

int ConjClass::conj(int x_idx, int h_idx) const {
    return index_of(group->conjugate(members[x_idx], members[h_idx]));
}

ConjClass order_two_class(const FiniteGroup& g) {
    std::vector<int> invs;
    for (int x = 0; x < g.order(); ++x)
        if (x != g.identity() && g.mul(x, x) == g.identity()) invs.push_back(x);
    if (invs.empty()) throw UsageError("group has no involutions");
    // conjugation closure of the first involution must exhaust all of them
    std::vector<char> seen(g.order(), 0);
    std::vector<int> cls{invs[0]};
    seen[invs[0]] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
        for (int h = 0; h < g.order(); ++h) {
            int y = g.conjugate(cls[i], h);
            if (!seen[y]) {
                seen[y] = 1;
                cls.push_back(y);
            }
        }
    if (cls.size() != invs.size())
        throw UsageError("involutions split into multiple conjugacy classes");
    std::sort(cls.begin(), cls.end());
    ConjClass c;
    c.group = &g;
    c.members = std::move(cls);
    c.pos.assign(g.order(), -1);
    for (int i = 0; i < c.size(); ++i) c.pos[c.members[i]] = i;
    return c;
}

bool centralizer_in_class_is_self(const FiniteGroup& g, const ConjClass& c) {
    for (int x : c.members)
        for (int y : c.members)
            if (x != y && g.mul(x, y) == g.mul(y, x)) return false;
    return true;
}

long wedge_square_order(const AbelianShape& h) {
    long prod = 1;
    const auto& d = h.cyclic_factors;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 1) throw UsageError("cyclic factor must be positive");
        for (std::size_t j = i + 1; j < d.size(); ++j) prod *= std::gcd(d[i], d[j]);
    }
    return prod;
}

}  // namespace hurwitz
