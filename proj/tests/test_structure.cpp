#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "pompeiu/constructors.hpp"
#include "pompeiu/structure.hpp"
#include "test_util.hpp"

using namespace pompeiu;

namespace {

// Oracle: partition by scanning all conjugation pairs, no orbit logic shared
// with the library.
std::vector<std::set<int>> classes_by_pair_scan(const FiniteGroup& G) {
    std::vector<int> cls(G.order, -1);
    int next = 0;
    for (int x = 0; x < G.order; ++x) {
        if (cls[x] >= 0) continue;
        cls[x] = next;
        for (int y = x + 1; y < G.order; ++y) {
            if (cls[y] >= 0) continue;
            for (int g = 0; g < G.order; ++g)
                if (G.conjugate(g, x) == y) {
                    cls[y] = next;
                    break;
                }
        }
        ++next;
    }
    std::vector<std::set<int>> out(next);
    for (int x = 0; x < G.order; ++x) out[cls[x]].insert(x);
    return out;
}

std::vector<std::size_t> class_sizes(const FiniteGroup& G) {
    std::vector<std::size_t> s;
    for (const auto& c : conjugacy_classes(G).classes) s.push_back(c.size());
    return s;
}

} // namespace

TEST_CASE("conjugacy classes partition the group") {
    CHECK(class_sizes(cyclic_group(7)) == std::vector<std::size_t>(7, 1));
    CHECK(class_sizes(symmetric_group(3)) == std::vector<std::size_t>{1, 3, 2});
    CHECK(class_sizes(quaternion8()) == std::vector<std::size_t>{1, 1, 2, 2, 2});

    for (const auto& G : {symmetric_group(4), dihedral_group(5), quaternion8()}) {
        auto d = conjugacy_classes(G);
        auto oracle = classes_by_pair_scan(G);
        REQUIRE(d.classes.size() == oracle.size());
        for (const auto& cls : d.classes) {
            std::set<int> got(cls.elements.begin(), cls.elements.end());
            CHECK(std::find(oracle.begin(), oracle.end(), got) != oracle.end());
        }
        // class_of is consistent and the identity class comes first
        CHECK(d.classes[0].elements == std::vector<std::uint16_t>{0});
        for (int x = 0; x < G.order; ++x) CHECK(d.classes[d.class_of[x]].contains(x));
        // sizes sum to |G| and divide |G|
        std::size_t total = 0;
        for (const auto& cls : d.classes) {
            total += cls.size();
            CHECK(G.order % cls.size() == 0);
        }
        CHECK(total == static_cast<std::size_t>(G.order));
        // each class is closed under conjugation
        for (const auto& cls : d.classes)
            for (auto x : cls.elements)
                for (int g = 0; g < G.order; ++g) CHECK(cls.contains(G.conjugate(g, x)));
    }
}

TEST_CASE("class sums commute with every point mass") {
    for (const auto& G : {symmetric_group(3), quaternion8(), dihedral_group(4)}) {
        auto sums = class_sums(G);
        CHECK(sums[0] == GroupRingElement::point_mass(G, FiniteGroup::identity));
        for (const auto& c : sums)
            for (int g = 0; g < G.order; ++g) {
                auto pg = GroupRingElement::point_mass(G, g);
                CHECK(convolve(c, pg) == convolve(pg, c));
            }
        // pairwise commuting, and products stay central (the span is a subalgebra)
        for (const auto& a : sums)
            for (const auto& b : sums) {
                CHECK(convolve(a, b) == convolve(b, a));
                CHECK(is_central(convolve(a, b)));
            }
    }
    auto z5 = cyclic_group(5);
    auto sums = class_sums(z5);
    REQUIRE(sums.size() == 5);
    for (int g = 0; g < 5; ++g) CHECK(sums[g] == GroupRingElement::point_mass(z5, g));
}

TEST_CASE("centrality equals class constancy") {
    CHECK(center_dimension(symmetric_group(3)) == 3);
    CHECK(center_dimension(cyclic_group(9)) == 9);
    CHECK(center_dimension(quaternion8()) == 5);

    auto G = symmetric_group(3);
    auto d = conjugacy_classes(G);
    std::mt19937_64 rng(21);
    int central_seen = 0;
    for (int rep = 0; rep < 100; ++rep) {
        GroupRingElement f(G);
        if (rep % 2 == 0) {
            // random element, almost surely not central
            f = testutil::random_element(rng, G);
        } else {
            // random class-constant element, central by construction
            std::uniform_int_distribution<int> num(-2, 2);
            for (const auto& cls : d.classes) {
                Scalar c(num(rng));
                for (auto x : cls.elements) f.set_coeff(x, c);
            }
        }
        // is_central itself cross-checks the conjugation route against class
        // constancy and throws on disagreement
        bool central = is_central(f);
        if (rep % 2 == 1) CHECK(central);
        central_seen += central;
    }
    CHECK(central_seen >= 50);

    // chi_K / |K| is central for a normal subgroup K
    Subset a3(G, {0, 3, 4});  // identity + the two 3-cycles (checked below)
    REQUIRE(is_normal_subgroup(a3));
    CHECK(is_central(char_fn(a3) * Scalar(make_rational(1, 3))));
}

TEST_CASE("normal subgroup enumeration matches brute force") {
    auto s3 = symmetric_group(3);
    auto list = normal_subgroups(s3);
    REQUIRE(list.subgroups.size() == 3);
    CHECK(list.subgroups[0].size() == 1);
    CHECK(list.subgroups[1].size() == 3);
    CHECK(list.subgroups[2].size() == 6);

    auto z7 = cyclic_group(7);
    auto primes = normal_subgroups(z7);
    REQUIRE(primes.subgroups.size() == 2);
    CHECK(primes.subgroups[0].size() == 1);
    CHECK(primes.subgroups[1].size() == 7);

    auto q8 = quaternion8();
    auto ql = normal_subgroups(q8);
    std::vector<std::size_t> sizes;
    for (const auto& s : ql.subgroups) sizes.push_back(s.size());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 4, 4, 4, 8});

    // brute force over all subsets containing the identity, |G| <= 16
    for (const auto& G : {symmetric_group(3), quaternion8(), dihedral_group(4),
                          direct_product(cyclic_group(2), cyclic_group(4)),
                          cyclic_group(12)}) {
        auto found = normal_subgroups(G);
        std::set<std::vector<std::uint16_t>> listed;
        for (const auto& s : found.subgroups) {
            listed.insert(s.elements);
            CHECK(s.contains(FiniteGroup::identity));
            CHECK(is_normal_subgroup(s));
        }
        REQUIRE(G.order <= 16);
        int n = G.order;
        for (std::uint32_t mask = 1; mask < (1u << n); mask += 2) {  // bit 0: identity
            std::vector<int> elems;
            for (int x = 0; x < n; ++x)
                if (mask >> x & 1) elems.push_back(x);
            Subset K(G, std::move(elems));
            if (is_normal_subgroup(K)) CHECK(listed.count(K.elements) == 1);
        }
        // the trivial subgroup and G itself are present
        CHECK(found.subgroups.front().size() == 1);
        CHECK(found.subgroups.back().size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("normal subgroup enumeration refuses above the class bound") {
    auto z12 = cyclic_group(12);  // 12 classes
    CHECK_THROWS_AS(normal_subgroups(z12, 11), PreconditionError);
    CHECK_NOTHROW(normal_subgroups(z12, 12));
}

TEST_CASE("delta subgroup of a finite group is everything") {
    auto q8 = quaternion8();
    CHECK(delta_subgroup(q8).size() == 8);
    auto z1 = cyclic_group(1);
    CHECK(delta_subgroup(z1).elements == std::vector<std::uint16_t>{0});
    for (const auto& G : {cyclic_group(6), symmetric_group(4)})
        CHECK(delta_subgroup(G).size() == static_cast<std::size_t>(G.order));
}
