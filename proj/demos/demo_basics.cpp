// Tour of the finite-group side: verdicts, witnesses, and group structure.
#include <pompeiu/pompeiu.hpp>

#include <cstdio>

using namespace pompeiu;

static void inspect(const FiniteGroup& G, const std::vector<int>& elems) {
    Subset K(G, elems);
    auto v = is_pompeiu_set(K);
    std::printf("%s, K = {%s}: %s (rank %d/%d)\n", G.label.c_str(), K.to_string().c_str(),
                v.is_pompeiu ? "Pompeiu" : "NOT Pompeiu", v.ideal_rank, G.order);
    for (const auto& w : v.witness_basis)
        std::printf("  witness: %s\n", w.to_string().c_str());
}

int main() {
    // On Z6 the verdict is controlled by character sums: {0,3} kills the
    // three odd characters, {0,1,3} kills none.
    auto z6 = cyclic_group(6);
    inspect(z6, {0, 3});
    inspect(z6, {0, 1, 3});

    // A subgroup that is not normal can still fail the subset test, but
    // normal ones always do, with an explicit witness.
    auto s3 = symmetric_group(3);
    for (const auto& N : normal_subgroups(s3).subgroups) {
        if (N.size() == 1) continue;
        auto w = normal_subgroup_witness(N);
        std::printf("S3 normal subgroup {%s}: witness %s\n", N.to_string().c_str(),
                    w.to_string().c_str());
    }

    // The center of the group algebra is spanned by class sums.
    std::printf("S3 center dimension: %d\n", center_dimension(s3));
    for (const auto& s : class_sums(s3))
        std::printf("  class sum: %s\n", s.to_string().c_str());

    // Classification of every nonempty subset at once.
    auto rep = classify_subsets(s3);
    std::printf("S3: %zu subsets, %zu Pompeiu, %zu not; Pompeiu group: %s\n",
                rep.subsets_covered, rep.pompeiu_count, rep.non_pompeiu_count,
                rep.group_is_pompeiu ? "yes" : "no");

    // No nontrivial finite group determines every square-summable function.
    auto l2 = is_l2_pompeiu_group(s3);
    std::printf("S3 square-summable class: %s\n", l2.explanation.c_str());
    return 0;
}
