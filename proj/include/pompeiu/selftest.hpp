#pragma once

#include <random>
#include <string>
#include <vector>

#include "pompeiu/constructors.hpp"
#include "pompeiu/engine.hpp"
#include "pompeiu/lattice.hpp"
#include "pompeiu/structure.hpp"

namespace pompeiu {

// The built-in fleet used by `selftest` and the property checks: cyclic
// groups through order 12, dihedral 3..6, symmetric 3..4, the quaternion
// group, and two abelian products.
inline std::vector<FiniteGroup> selftest_fleet() {
    std::vector<FiniteGroup> fleet;
    for (int n = 1; n <= 12; ++n) fleet.push_back(cyclic_group(n));
    for (int n = 3; n <= 6; ++n) fleet.push_back(dihedral_group(n));
    for (int n = 3; n <= 4; ++n) fleet.push_back(symmetric_group(n));
    fleet.push_back(quaternion8());
    fleet.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
    fleet.push_back(direct_product(cyclic_group(2), cyclic_group(4)));
    return fleet;
}

struct SelftestGroupResult {
    std::string label;
    int order = 0;
    int checks = 0;
};

struct SelftestReport {
    std::vector<SelftestGroupResult> groups;
    int lattice_checks = 0;
    int total_checks = 0;
};

namespace selftest_detail {

struct Checker {
    std::string context;
    int count = 0;
    void operator()(bool ok, const std::string& what) {
        if (!ok) throw ConsistencyError("selftest " + context + ": " + what);
        ++count;
    }
};

inline GroupRingElement random_function(std::mt19937& rng, const FiniteGroup& G) {
    std::uniform_int_distribution<int> elem(0, G.order - 1);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    auto f = GroupRingElement::zero(G);
    for (int t = 0; t < 5; ++t)
        f.add_coeff(elem(rng), Scalar(make_rational(num(rng), den(rng)),
                                      make_rational(num(rng), den(rng))));
    return f;
}

inline Subset random_subset(std::mt19937& rng, const FiniteGroup& G) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<int> elems;
    while (elems.empty())
        for (int x = 0; x < G.order; ++x)
            if (coin(rng)) elems.push_back(x);
    return Subset(G, elems);
}

inline SelftestGroupResult check_group(const FiniteGroup& G) {
    Checker ensure{G.label};
    std::mt19937 rng(20260822u + static_cast<unsigned>(G.order));
    std::uniform_int_distribution<int> elem(0, G.order - 1);

    validate_group(G);
    ensure(true, "group axioms");

    // conjugacy classes partition the group and are closed under conjugation
    auto dec = conjugacy_classes(G);
    std::size_t covered = 0;
    for (const auto& cls : dec.classes) covered += cls.size();
    ensure(covered == static_cast<std::size_t>(G.order), "classes partition the group");
    bool closed = true, labeled = true;
    for (int x = 0; x < G.order; ++x) {
        labeled &= dec.classes[dec.class_of[x]].contains(x);
        for (int g = 0; g < G.order; ++g)
            closed &= dec.class_of[G.conjugate(g, x)] == dec.class_of[x];
    }
    ensure(labeled, "class_of is consistent");
    ensure(closed, "classes closed under conjugation");

    // the center of the group algebra is spanned by the class sums
    ensure(center_dimension(G) == static_cast<int>(dec.classes.size()),
           "center dimension equals the class count");
    bool sums_central = true;
    for (const auto& s : class_sums(G)) sums_central &= is_central(s);
    ensure(sums_central, "class sums are central");

    // every nontrivial normal subgroup defeats the Pompeiu property and
    // carries the standard witness and central idempotent
    for (const auto& N : normal_subgroups(G).subgroups) {
        ensure(is_normal_subgroup(N), "enumerated subgroup is normal");
        if (N.size() == 1) continue;
        auto w = normal_subgroup_witness(N);
        ensure(!w.is_zero(), "subgroup witness is nonzero");
        auto e = central_idempotent(N);
        ensure(is_central(e), "subgroup idempotent is central");
        auto verdict = is_pompeiu_set(N);
        ensure(!verdict.is_pompeiu, "nontrivial normal subgroup is not Pompeiu");
        ensure(verdict.ideal_rank + static_cast<int>(verdict.witness_basis.size()) ==
                   G.order,
               "rank and witness dimension add to the order");
    }

    // the three readings of a translate sum agree, and match a direct loop
    for (int t = 0; t < 50; ++t) {
        auto f = random_function(rng, G);
        auto K = random_subset(rng, G);
        int g = elem(rng), h = elem(rng);
        Scalar direct(0);
        for (auto k : K.elements) direct = direct + f.coeff(G.op(G.op(g, k), h));
        ensure(translate_sum(f, g, K, h) == direct, "translate sum identity");
    }

    // random subsets obey the duality between rank and solution dimension
    for (int t = 0; t < 10; ++t) {
        auto K = random_subset(rng, G);
        auto verdict = is_pompeiu_set(K);
        ensure(verdict.ideal_rank + static_cast<int>(verdict.witness_basis.size()) ==
                   G.order,
               "rank and witness dimension add to the order");
        ensure(verdict.oracle_agreement.has_value() == !G.abelian_factors.empty(),
               "character oracle runs exactly on recorded abelian groups");
    }

    // singletons always pass; only the trivial group passes in the
    // square-summable class
    ensure(is_pompeiu_set(Subset(G, {0})).is_pompeiu, "singleton is Pompeiu");
    auto l2 = is_l2_pompeiu_group(G);
    ensure(l2.is_pompeiu_group == (G.order == 1),
           "square-summable verdict is trivial-group-only");
    if (!l2.is_pompeiu_group) {
        ensure(l2.witness.has_value() && !l2.witness->is_zero(),
               "square-summable refusal carries a witness");
    }

    return {G.label, G.order, ensure.count};
}

inline int check_lattice() {
    Checker ensure{"lattice"};

    ensure(is_pompeiu_subset_Z({5}), "singleton in Z is Pompeiu");
    ensure(!is_pompeiu_subset_Z({0, 1}), "pair in Z is not Pompeiu");

    auto w = recurrence_witness({0, 1}, 60);
    ensure(w.exact && w.period == 2 && w.residual == 0.0, "alternating witness is exact");
    auto E = energy_profile(w);
    ensure(E[60] > E[30], "energy keeps growing");

    auto wn = recurrence_witness({0, 1, 3}, 60);
    ensure(!wn.exact && wn.residual < 1e-9, "numerical witness meets tolerance");
    auto En = energy_profile(wn);
    ensure(En[60] > En[30], "numerical energy keeps growing");

    int total = 0;
    for (const auto& [z, mult] : recurrence_witness({0, 2, 3, 4, 5}, 40).roots)
        total += mult;
    ensure(total == 5, "root multiplicities cover the degree");

    return ensure.count;
}

} // namespace selftest_detail

// Runs the embedded invariant suite over the fleet. Throws ConsistencyError
// on the first failed check; a returned report means everything passed.
inline SelftestReport run_selftest() {
    SelftestReport report;
    for (const auto& G : selftest_fleet()) {
        report.groups.push_back(selftest_detail::check_group(G));
        report.total_checks += report.groups.back().checks;
    }
    report.lattice_checks = selftest_detail::check_lattice();
    report.total_checks += report.lattice_checks;
    return report;
}

} // namespace pompeiu
