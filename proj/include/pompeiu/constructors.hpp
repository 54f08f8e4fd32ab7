#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pompeiu/finite_group.hpp"

namespace pompeiu {

namespace detail {

inline FiniteGroup finish(FiniteGroup g, const GroupCheckOptions& opt = {}) {
    g.inv = inverses_from_table(g);
    validate_group(g, opt);
    return g;
}

} // namespace detail

inline FiniteGroup cyclic_group(int n) {
    if (n < 1) throw PreconditionError("cyclic(n) needs n >= 1");
    if (n > max_group_order())
        throw PreconditionError("order bound exceeded in cyclic(" + std::to_string(n) + ")");
    FiniteGroup g;
    g.order = n;
    g.label = "Z" + std::to_string(n);
    g.abelian_factors = {n};
    g.mul.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.mul[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>((a + b) % n);
    return detail::finish(std::move(g));
}

// Order 2n. Indices 0..n-1 are the rotations r^a, indices n..2n-1 the
// reflections r^a s, with s r = r^-1 s.
inline FiniteGroup dihedral_group(int n) {
    if (n < 1) throw PreconditionError("dihedral(n) needs n >= 1");
    if (2 * n > max_group_order())
        throw PreconditionError("order bound exceeded in dihedral(" + std::to_string(n) + ")");
    const int ord = 2 * n;
    FiniteGroup g;
    g.order = ord;
    g.label = "D" + std::to_string(n);
    g.mul.resize(static_cast<std::size_t>(ord) * ord);
    auto enc = [&](int a, int b) { return b * n + ((a % n) + n) % n; };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < 2; ++d) {
                    // (r^a s^b)(r^c s^d) = r^(a + c*(-1)^b) s^(b+d)
                    int e = b ? a - c : a + c;
                    g.mul[static_cast<std::size_t>(enc(a, b)) * ord + enc(c, d)] =
                        static_cast<std::uint16_t>(enc(e, (b + d) % 2));
                }
    return detail::finish(std::move(g));
}

namespace detail {

inline std::vector<int> compose(const std::vector<int>& s, const std::vector<int>& t) {
    std::vector<int> r(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) r[x] = s[t[x]];  // apply t first
    return r;
}

} // namespace detail

// Elements are the permutations of {0..n-1} in lexicographic order of their
// one-line words, so the identity word 0 1 .. n-1 gets index 0.
inline FiniteGroup symmetric_group(int n) {
    if (n < 1) throw PreconditionError("symmetric(n) needs n >= 1");
    long ord = 1;
    for (int k = 2; k <= n; ++k) ord *= k;
    if (ord > max_group_order())
        throw PreconditionError("order bound exceeded in symmetric(" + std::to_string(n) + ")");
    std::vector<std::vector<int>> perms;
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    do {
        perms.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

    FiniteGroup g;
    g.order = static_cast<int>(ord);
    g.label = "S" + std::to_string(n);
    g.mul.resize(static_cast<std::size_t>(ord) * ord);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            g.mul[static_cast<std::size_t>(a) * ord + b] =
                static_cast<std::uint16_t>(index.at(detail::compose(perms[a], perms[b])));
    return detail::finish(std::move(g));
}

// {1, -1, i, -i, j, -j, k, -k} in that order.
inline FiniteGroup quaternion8() {
    // Encode q = (s, u): sign s in {0,1} and unit u in {1, i, j, k} = {0..3};
    // index = 2u + s.
    auto idx = [](int sign, int unit) { return 2 * unit + sign; };
    // unit multiplication with result sign: i*j = k, j*i = -k, cyclic.
    static const int utab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int stab[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // stab[a][b]: extra sign of unit_a * unit_b (0 -> +, 1 -> -), e.g.
    // i*i = -1, i*j = +k, j*i = -k, k*k = -1.
    FiniteGroup g;
    g.order = 8;
    g.label = "Q8";
    g.mul.resize(64);
    for (int ua = 0; ua < 4; ++ua)
        for (int sa = 0; sa < 2; ++sa)
            for (int ub = 0; ub < 4; ++ub)
                for (int sb = 0; sb < 2; ++sb) {
                    int u = utab[ua][ub];
                    int s = (sa + sb + stab[ua][ub]) % 2;
                    g.mul[static_cast<std::size_t>(idx(sa, ua)) * 8 + idx(sb, ub)] =
                        static_cast<std::uint16_t>(idx(s, u));
                }
    return detail::finish(std::move(g));
}

// Renumbers pairs (a, b) -> a*|H| + b. Abelian factor lists concatenate when
// both operands carry one.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    long ord = static_cast<long>(a.order) * b.order;
    if (ord > max_group_order())
        throw PreconditionError("order bound exceeded in direct_product");
    FiniteGroup g;
    g.order = static_cast<int>(ord);
    g.label = a.label + "x" + b.label;
    if (!a.abelian_factors.empty() && !b.abelian_factors.empty()) {
        g.abelian_factors = a.abelian_factors;
        g.abelian_factors.insert(g.abelian_factors.end(), b.abelian_factors.begin(),
                                 b.abelian_factors.end());
    }
    g.mul.resize(static_cast<std::size_t>(ord) * ord);
    for (int a1 = 0; a1 < a.order; ++a1)
        for (int b1 = 0; b1 < b.order; ++b1)
            for (int a2 = 0; a2 < a.order; ++a2)
                for (int b2 = 0; b2 < b.order; ++b2) {
                    int x = a1 * b.order + b1;
                    int y = a2 * b.order + b2;
                    g.mul[static_cast<std::size_t>(x) * ord + y] =
                        static_cast<std::uint16_t>(a.op(a1, a2) * b.order + b.op(b1, b2));
                }
    return detail::finish(std::move(g));
}

// Validates the table and renumbers so the identity lands at index 0 (other
// elements keep their relative order). Declared abelian factors, if any, are
// checked against the renumbered table.
inline FiniteGroup from_cayley_table(int order, const std::vector<std::uint16_t>& table,
                                     std::string label = "custom",
                                     std::vector<int> abelian_factors = {},
                                     const GroupCheckOptions& opt = {}) {
    if (order < 1) throw PreconditionError("group order must be >= 1");
    if (table.size() != static_cast<std::size_t>(order) * order)
        throw PreconditionError("table size does not match order");
    for (auto v : table)
        if (v >= order) throw PreconditionError("table entry out of range");

    int id = -1;
    for (int e = 0; e < order && id < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < order && ok; ++x)
            ok = table[static_cast<std::size_t>(e) * order + x] == x &&
                 table[static_cast<std::size_t>(x) * order + e] == x;
        if (ok) id = e;
    }
    if (id < 0) throw PreconditionError("not a group table: no two-sided identity");

    // old index -> new index: identity to 0, rest shifted up by one slot
    std::vector<int> newidx(order);
    int next = 1;
    for (int x = 0; x < order; ++x) newidx[x] = (x == id) ? 0 : next++;
    std::vector<int> oldidx(order);
    for (int x = 0; x < order; ++x) oldidx[newidx[x]] = x;

    FiniteGroup g;
    g.order = order;
    g.label = std::move(label);
    g.abelian_factors = std::move(abelian_factors);
    g.mul.resize(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            g.mul[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(
                newidx[table[static_cast<std::size_t>(oldidx[a]) * order + oldidx[b]]]);
    return detail::finish(std::move(g), opt);
}

// Closes the generated set by breadth-first products, then numbers the found
// permutations lexicographically (identity first). Each generator is given in
// one-line form over the same number of points.
inline FiniteGroup from_permutation_generators(const std::vector<std::vector<int>>& gens,
                                               std::string label = "perm-group") {
    if (gens.empty()) throw PreconditionError("need at least one generator");
    const std::size_t deg = gens[0].size();
    for (const auto& p : gens) {
        if (p.size() != deg)
            throw PreconditionError("generators act on different numbers of points");
        std::vector<char> seen(deg, 0);
        for (int v : p) {
            if (v < 0 || static_cast<std::size_t>(v) >= deg || seen[v])
                throw PreconditionError("generator is not a permutation");
            seen[v] = 1;
        }
    }

    std::vector<int> id(deg);
    for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);

    std::map<std::vector<int>, int> found;
    std::vector<std::vector<int>> queue{id};
    found[id] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto cur = queue[head];
        for (const auto& gen : gens) {
            auto nxt = detail::compose(cur, gen);
            if (found.emplace(nxt, 0).second) {
                if (queue.size() >= static_cast<std::size_t>(max_group_order()))
                    throw PreconditionError("generated group exceeds the order bound");
                queue.push_back(std::move(nxt));
            }
        }
    }

    // std::map iterates words in lexicographic order; identity is lex-least.
    std::vector<std::vector<int>> elems;
    elems.reserve(found.size());
    for (auto& [w, unused] : found) elems.push_back(w);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);

    const int ord = static_cast<int>(elems.size());
    FiniteGroup g;
    g.order = ord;
    g.label = std::move(label);
    g.mul.resize(static_cast<std::size_t>(ord) * ord);
    for (int a = 0; a < ord; ++a)
        for (int b = 0; b < ord; ++b) {
            auto it = index.find(detail::compose(elems[a], elems[b]));
            if (it == index.end())
                throw ConsistencyError("BFS closure missed a product");  // unreachable
            g.mul[static_cast<std::size_t>(a) * ord + b] = static_cast<std::uint16_t>(it->second);
        }
    return detail::finish(std::move(g));
}

} // namespace pompeiu
