#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pompeiu/group_ring.hpp"

namespace pompeiu {

struct ConjugacyClassDecomposition {
    std::vector<Subset> classes;  // partition of 0..n-1
    std::vector<int> class_of;    // element -> class index
};

// Classes ordered by their smallest member, so the identity class {0} is
// always first.
inline ConjugacyClassDecomposition conjugacy_classes(const FiniteGroup& G) {
    ConjugacyClassDecomposition d;
    d.class_of.assign(G.order, -1);
    for (int x = 0; x < G.order; ++x) {
        if (d.class_of[x] >= 0) continue;
        std::vector<int> cls;
        int ci = static_cast<int>(d.classes.size());
        for (int g = 0; g < G.order; ++g) {
            int y = G.conjugate(g, x);
            if (d.class_of[y] < 0) {
                d.class_of[y] = ci;
                cls.push_back(y);
            }
        }
        d.classes.emplace_back(G, std::move(cls));
    }
    return d;
}

inline std::vector<GroupRingElement> class_sums(const FiniteGroup& G) {
    std::vector<GroupRingElement> sums;
    for (const auto& cls : conjugacy_classes(G).classes) sums.push_back(char_fn(cls));
    return sums;
}

// f is central iff conjugation fixes it; checked both as chi_{g^-1}*f*chi_g = f
// for every g and as constancy on conjugacy classes. The two characterizations
// must agree.
inline bool is_central(const GroupRingElement& f) {
    const FiniteGroup& G = f.group();
    bool by_conj = true;
    for (int g = 0; g < G.order && by_conj; ++g) {
        GroupRingElement lhs =
            convolve(convolve(GroupRingElement::point_mass(G, G.inverse(g)), f),
                     GroupRingElement::point_mass(G, g));
        by_conj = lhs == f;
    }
    auto d = conjugacy_classes(G);
    bool by_classes = true;
    for (const auto& cls : d.classes) {
        Scalar c0 = f.coeff(cls.elements.front());
        for (auto x : cls.elements)
            if (f.coeff(x) != c0) {
                by_classes = false;
                break;
            }
        if (!by_classes) break;
    }
    if (by_conj != by_classes)
        throw ConsistencyError("centrality characterizations disagree");
    return by_conj;
}

inline int center_dimension(const FiniteGroup& G) {
    return static_cast<int>(conjugacy_classes(G).classes.size());
}

inline bool is_subgroup(const Subset& K) {
    if (!K.group || K.empty()) return false;
    const FiniteGroup& G = *K.group;
    if (!K.contains(FiniteGroup::identity)) return false;
    for (auto a : K.elements) {
        if (!K.contains(G.inverse(a))) return false;
        for (auto b : K.elements)
            if (!K.contains(G.op(a, b))) return false;
    }
    return true;
}

inline bool is_normal_subgroup(const Subset& K) {
    if (!is_subgroup(K)) return false;
    const FiniteGroup& G = *K.group;
    for (int g = 0; g < G.order; ++g)
        for (auto x : K.elements)
            if (!K.contains(G.conjugate(g, x))) return false;
    return true;
}

struct NormalSubgroupList {
    std::vector<Subset> subgroups;  // sorted by size, then lexicographically
};

// Normal subgroups are exactly the class-closed subgroups, so it suffices to
// test unions of conjugacy classes that include the identity class. The search
// is exponential in the class count only; the bound makes the refusal
// explicit rather than silently truncating.
inline NormalSubgroupList normal_subgroups(const FiniteGroup& G, int max_classes = 22) {
    auto d = conjugacy_classes(G);
    const int c = static_cast<int>(d.classes.size());
    if (c > max_classes)
        throw PreconditionError("normal subgroup enumeration refused: " + std::to_string(c) +
                                " conjugacy classes exceed the bound " +
                                std::to_string(max_classes));

    NormalSubgroupList out;
    const int nonid = c - 1;  // class 0 is {identity}
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nonid); ++mask) {
        std::size_t size = 1;
        for (int i = 0; i < nonid; ++i)
            if (mask >> i & 1) size += d.classes[i + 1].size();
        if (G.order % size != 0) continue;  // Lagrange

        std::vector<int> elems{FiniteGroup::identity};
        for (int i = 0; i < nonid; ++i)
            if (mask >> i & 1)
                for (auto x : d.classes[i + 1].elements) elems.push_back(x);
        Subset K(G, std::move(elems));
        if (is_subgroup(K)) out.subgroups.push_back(std::move(K));
    }
    std::sort(out.subgroups.begin(), out.subgroups.end(), [](const Subset& a, const Subset& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elements < b.elements;
    });
    return out;
}

// The finite conjugate subgroup: elements with finitely many conjugates. For
// a finite group that is all of G; the operation exists so the class-sum
// results have their stated home.
inline Subset delta_subgroup(const FiniteGroup& G) {
    std::vector<int> all(G.order);
    for (int i = 0; i < G.order; ++i) all[i] = i;
    return Subset(G, std::move(all));
}

} // namespace pompeiu
