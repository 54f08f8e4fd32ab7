#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pompeiu/errors.hpp"

namespace pompeiu {

// Groups above this order are refused by the constructors unless the
// POMPEIU_MAX_ORDER environment variable raises the bound.
inline int max_group_order() {
    if (const char* env = std::getenv("POMPEIU_MAX_ORDER")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return 360;
}

struct GroupCheckOptions {
    // Full associativity is O(n^3); above this order only 10*n^2 random
    // triples are checked unless force_full is set.
    int full_assoc_limit = 64;
    bool force_full = false;
};

// A fully materialized finite group: multiplication table, inverse table,
// identity at index 0. Immutable after construction; safe to share across
// threads.
struct FiniteGroup {
    int order = 0;
    std::vector<std::uint16_t> mul;  // order*order, row-major
    std::vector<std::uint16_t> inv;
    std::string label;
    // Nonempty iff the group was built with a known cyclic decomposition
    // Z_{m1} x ... x Z_{mr}; element i then has mixed-radix digits of i as
    // its coordinates (last factor fastest).
    std::vector<int> abelian_factors;

    static constexpr int identity = 0;

    int op(int a, int b) const { return mul[static_cast<std::size_t>(a) * order + b]; }
    int inverse(int a) const { return inv[a]; }
    int conjugate(int g, int x) const { return op(op(inverse(g), x), g); }  // g^-1 x g

    bool is_abelian() const {
        for (int a = 0; a < order; ++a)
            for (int b = a + 1; b < order; ++b)
                if (op(a, b) != op(b, a)) return false;
        return true;
    }

    // Smallest m with g^m = 1 for every g; the lcm of element orders.
    int exponent() const {
        long e = 1;
        for (int g = 0; g < order; ++g) {
            int x = g, ord = 1;
            while (x != identity) {
                x = op(x, g);
                ++ord;
            }
            e = std::lcm(e, static_cast<long>(ord));
        }
        return static_cast<int>(e);
    }

    std::vector<int> digits(int x) const {
        std::vector<int> d(abelian_factors.size());
        for (int i = static_cast<int>(abelian_factors.size()) - 1; i >= 0; --i) {
            d[i] = x % abelian_factors[i];
            x /= abelian_factors[i];
        }
        return d;
    }
};

namespace detail {

inline void check_identity_and_inverses(const FiniteGroup& g) {
    const int n = g.order;
    for (int a = 0; a < n; ++a) {
        if (g.op(FiniteGroup::identity, a) != a || g.op(a, FiniteGroup::identity) != a)
            throw PreconditionError("not a group table: index 0 is not a two-sided identity");
        if (g.op(a, g.inv[a]) != FiniteGroup::identity ||
            g.op(g.inv[a], a) != FiniteGroup::identity)
            throw PreconditionError("not a group table: inverse table is wrong at element " +
                                    std::to_string(a));
    }
}

inline void check_latin_square(const FiniteGroup& g) {
    const int n = g.order;
    std::vector<char> seen(n);
    for (int a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            int p = g.op(a, b);
            if (p < 0 || p >= n || seen[p])
                throw PreconditionError("not a group table: row " + std::to_string(a) +
                                        " is not a permutation");
            seen[p] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < n; ++b) {
            int p = g.op(b, a);
            if (seen[p])
                throw PreconditionError("not a group table: column " + std::to_string(a) +
                                        " is not a permutation");
            seen[p] = 1;
        }
    }
}

inline void check_associativity(const FiniteGroup& g, const GroupCheckOptions& opt) {
    const int n = g.order;
    auto check = [&](int a, int b, int c) {
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
            throw PreconditionError("not a group table: associativity fails at (" +
                                    std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ")");
    };
    if (opt.force_full || n <= opt.full_assoc_limit) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check(a, b, c);
    } else {
        std::mt19937_64 rng(0x706f6d70u);  // fixed seed: deterministic sampling
        std::uniform_int_distribution<int> d(0, n - 1);
        long samples = 10L * n * n;
        for (long s = 0; s < samples; ++s) check(d(rng), d(rng), d(rng));
    }
}

inline void check_abelian_factors(const FiniteGroup& g) {
    if (g.abelian_factors.empty()) return;
    long prod = 1;
    for (int m : g.abelian_factors) {
        if (m < 1) throw PreconditionError("abelian factor must be >= 1");
        prod *= m;
    }
    if (prod != g.order)
        throw PreconditionError("declared abelian factors do not multiply to the group order");
    for (int a = 0; a < g.order; ++a) {
        auto da = g.digits(a);
        for (int b = 0; b < g.order; ++b) {
            auto db = g.digits(b);
            int enc = 0;
            for (std::size_t i = 0; i < da.size(); ++i)
                enc = enc * g.abelian_factors[i] + (da[i] + db[i]) % g.abelian_factors[i];
            if (g.op(a, b) != enc)
                throw PreconditionError(
                    "declared abelian factors do not match the multiplication table");
        }
    }
}

} // namespace detail

// Verifies every FiniteGroup invariant. Constructors call this before
// returning; from_cayley_table relies on it to reject non-groups.
inline void validate_group(const FiniteGroup& g, const GroupCheckOptions& opt = {}) {
    if (g.order < 1) throw PreconditionError("group order must be >= 1");
    if (g.order > max_group_order())
        throw PreconditionError("group order " + std::to_string(g.order) +
                                " exceeds the bound " + std::to_string(max_group_order()) +
                                " (set POMPEIU_MAX_ORDER to raise it)");
    if (g.mul.size() != static_cast<std::size_t>(g.order) * g.order ||
        g.inv.size() != static_cast<std::size_t>(g.order))
        throw PreconditionError("group table has wrong dimensions");
    detail::check_latin_square(g);
    detail::check_identity_and_inverses(g);
    detail::check_associativity(g, opt);
    detail::check_abelian_factors(g);
}

// Builds the inverse table from mul; throws if some element has no inverse.
inline std::vector<std::uint16_t> inverses_from_table(const FiniteGroup& g) {
    std::vector<std::uint16_t> inv(g.order, 0);
    std::vector<char> found(g.order, 0);
    for (int a = 0; a < g.order; ++a) {
        for (int b = 0; b < g.order; ++b) {
            if (g.op(a, b) == FiniteGroup::identity && g.op(b, a) == FiniteGroup::identity) {
                inv[a] = static_cast<std::uint16_t>(b);
                found[a] = 1;
                break;
            }
        }
        if (!found[a])
            throw PreconditionError("not a group table: element " + std::to_string(a) +
                                    " has no two-sided inverse");
    }
    return inv;
}

} // namespace pompeiu
