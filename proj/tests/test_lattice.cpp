#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "pompeiu/constructors.hpp"
#include "pompeiu/engine.hpp"
#include "pompeiu/lattice.hpp"

using namespace pompeiu;

namespace {

LaurentPoly from_ints(std::vector<std::pair<std::int64_t, long>> terms) {
    LaurentPoly p;
    for (auto& [e, c] : terms) p.set_coeff(e, Scalar(c));
    return p;
}

} // namespace

TEST_CASE("laurent products") {
    auto p = from_ints({{-1, 2}, {0, 1}, {3, -5}});
    CHECK(laurent_multiply(LaurentPoly::monomial(0), p) == p);

    auto onepx = from_ints({{0, 1}, {1, 1}});
    auto onemx = from_ints({{0, 1}, {1, -1}});
    CHECK(laurent_multiply(onepx, onemx) == from_ints({{0, 1}, {2, -1}}));

    auto k012 = LaurentPoly::from_set({0, 1, 2});
    CHECK(laurent_multiply(k012, k012) ==
          from_ints({{0, 1}, {1, 2}, {2, 3}, {3, 2}, {4, 1}}));

    CHECK(laurent_multiply(LaurentPoly::monomial(-1), LaurentPoly::monomial(1)) ==
          LaurentPoly::monomial(0));

    // commutative, associative, and exponent shifts are ring maps
    auto q = from_ints({{-2, 1}, {1, 3}});
    auto r = from_ints({{0, 4}, {2, -1}});
    CHECK(laurent_multiply(p, q) == laurent_multiply(q, p));
    CHECK(laurent_multiply(laurent_multiply(p, q), r) ==
          laurent_multiply(p, laurent_multiply(q, r)));
    auto shift = LaurentPoly::monomial(7);
    CHECK(laurent_multiply(shift, laurent_multiply(p, q)) ==
          laurent_multiply(laurent_multiply(shift, p), q));

    CHECK(from_ints({{0, 1}, {2, -1}}).to_string() == "1 - x^2");
    CHECK(from_ints({{-1, 2}, {0, 1}}).to_string() == "2*x^-1 + 1");
    CHECK(LaurentPoly().to_string() == "0");
    CHECK(LaurentPoly().is_zero());
    CHECK(LaurentPoly::monomial(5).is_monomial_unit());
    CHECK_FALSE(onepx.is_monomial_unit());
}

TEST_CASE("several variables multiply but only monomials decide") {
    MultiLaurentPoly a(2), b(2);
    a.add_coeff({0, 0}, Scalar(1));
    a.add_coeff({1, 1}, Scalar(1));
    b.add_coeff({0, 0}, Scalar(1));
    b.add_coeff({1, 1}, Scalar(-1));
    auto prod = multi_multiply(a, b);
    REQUIRE(prod.terms().size() == 2);
    CHECK(prod.terms().at({0, 0}) == Scalar(1));
    CHECK(prod.terms().at({2, 2}) == Scalar(-1));
    CHECK_FALSE(prod.is_monomial_unit());

    MultiLaurentPoly m(3);
    m.add_coeff({1, -2, 5}, Scalar(make_rational(2, 3)));
    CHECK(m.is_monomial_unit());

    CHECK_THROWS_AS(multi_multiply(a, MultiLaurentPoly(3)), PreconditionError);

    CHECK(is_pompeiu_subset_Zd({{3, 4}}));
    CHECK(is_pompeiu_subset_Zd({{3, 4}, {3, 4}}));
    CHECK_THROWS_AS(is_pompeiu_subset_Zd({{0, 0}, {1, 0}}), PreconditionError);
    CHECK(is_pompeiu_subset_Zd({{5}}));
    CHECK_FALSE(is_pompeiu_subset_Zd({{0}, {1}}));
}

TEST_CASE("pompeiu decision on the integers") {
    CHECK(is_pompeiu_subset_Z({5}));
    CHECK(is_pompeiu_subset_Z({-3, -3}));
    CHECK_FALSE(is_pompeiu_subset_Z({0, 1}));
    CHECK_FALSE(is_pompeiu_subset_Z({0, 1, 2}));
    CHECK_THROWS_AS(is_pompeiu_subset_Z({}), PreconditionError);
}

TEST_CASE("periodic witnesses from cyclotomic factors") {
    auto w = recurrence_witness({0, 1}, 100);
    CHECK(w.exact);
    CHECK(w.period == 2);
    CHECK(w.residual == 0.0);
    REQUIRE(w.roots.size() == 1);
    CHECK(w.roots[0].first.real() == Catch::Approx(-1.0));
    CHECK(w.roots[0].second == 1);
    REQUIRE(w.exact_samples.size() == 201);
    for (int n = -100; n <= 100; ++n)
        CHECK(w.exact_samples[n + 100] == Scalar(n % 2 == 0 ? 1 : -1));
    CHECK(w.sample(0) == std::complex<double>(1.0, 0.0));
    CHECK(w.sample(7) == std::complex<double>(-1.0, 0.0));

    auto w3 = recurrence_witness({0, 1, 2}, 100);
    CHECK(w3.exact);
    CHECK(w3.period == 3);
    CHECK(w3.residual == 0.0);
    CHECK(w3.roots.size() == 2);  // both primitive cube roots
    CHECK(w3.exact_samples[100] == Scalar(1));
    CHECK(w3.exact_samples[101] == Scalar(-1));
    CHECK(w3.exact_samples[102] == Scalar(0));
    CHECK(w3.exact_samples[99] == Scalar(0));
    CHECK(w3.exact_samples[98] == Scalar(-1));

    // shifting K changes nothing: the characteristic polynomial is shifted
    auto ws = recurrence_witness({10, 11, 12}, 100);
    CHECK(ws.period == 3);

    // a repeated cyclotomic factor is reported with its multiplicity
    auto w2 = recurrence_witness({0, 1, 3, 4}, 50);
    CHECK(w2.exact);
    CHECK(w2.period == 2);
    REQUIRE(w2.roots.size() == 1);
    CHECK(w2.roots[0].second == 2);

    auto w4 = recurrence_witness({0, 2}, 60);
    CHECK(w4.period == 4);
    CHECK(w4.exact_samples[60 + 0] == Scalar(1));
    CHECK(w4.exact_samples[60 + 4] == Scalar(1));
    CHECK(w4.exact_samples[60 + 2] == Scalar(-1));
    CHECK(w4.exact_samples[60 + 1] == Scalar(0));

    CHECK_THROWS_AS(recurrence_witness({7}, 100), PreconditionError);
    CHECK_THROWS_AS(recurrence_witness({0, 5}, 3), PreconditionError);
    CHECK_THROWS_AS(recurrence_witness({0, 1}, 1001), PreconditionError);
}

TEST_CASE("numerical witnesses when no cyclotomic factor exists") {
    auto w = recurrence_witness({0, 1, 3}, 100);
    CHECK_FALSE(w.exact);
    CHECK(w.period == 0);
    CHECK(w.exact_samples.empty());
    CHECK(w.residual < 1e-9);
    REQUIRE(w.roots.size() == 3);
    for (const auto& [z, mult] : w.roots) {
        CHECK(mult == 1);
        std::complex<double> val = 1.0 + z + z * z * z;
        CHECK(std::abs(val) < 1e-6);
    }
    CHECK(std::abs(w.sample(0) - std::complex<double>(1.0, 0.0)) < 1e-12);

    // the chosen root hugs the unit circle, so samples grow but stay finite
    CHECK(std::abs(w.sample(100)) > 1.0);
    CHECK(std::isfinite(w.sample(100).real()));
    CHECK(std::abs(w.sample(-100)) < 1.0);

    // double-precision re-evaluation agrees to the accuracy doubles allow
    double worst = 0.0;
    for (int g = -100; g + 3 <= 100; ++g) {
        std::complex<double> s = w.sample(g) + w.sample(g + 1) + w.sample(g + 3);
        worst = std::max(worst, std::abs(s));
    }
    CHECK(worst < 1e-6);

    auto wlong = recurrence_witness({0, 1, 3}, 500);
    CHECK(wlong.residual < 1e-9);
    CHECK(std::isfinite(wlong.sample(500).real()));

    auto w5 = recurrence_witness({0, 2, 3, 4, 5}, 80);
    CHECK(w5.residual < 1e-9);
    int total = 0;
    for (const auto& [z, mult] : w5.roots) total += mult;
    CHECK(total == 5);
}

TEST_CASE("three way agreement on bounded subsets") {
    std::vector<int> universe{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::vector<std::int64_t> cur;
    int checked = 0;
    auto visit = [&](const auto& self, std::size_t start) -> void {
        if (!cur.empty()) {
            ++checked;
            bool unit = cur.size() == 1;
            CHECK(is_pompeiu_subset_Z(cur) == unit);
            int span = static_cast<int>(cur.back() - cur.front());
            if (unit) {
                CHECK_THROWS_AS(recurrence_witness(cur, std::max(span, 1) + 10),
                                PreconditionError);
            } else {
                auto w = recurrence_witness(cur, span + 10);
                CHECK(w.residual < 1e-9);
                bool nonzero = false;
                for (auto a : w.sample_abs2) nonzero |= a > 0.0L;
                CHECK(nonzero);
            }
        }
        if (cur.size() == 6) return;
        for (std::size_t i = start; i < universe.size(); ++i) {
            cur.push_back(universe[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    visit(visit, 0);
    CHECK(checked == 13 + 78 + 286 + 715 + 1287 + 1716);
}

TEST_CASE("energies climb without bound") {
    auto w = recurrence_witness({0, 1}, 800);
    auto E = energy_profile(w);
    REQUIRE(E.size() == 801);
    for (int j = 0; j <= 800; ++j) CHECK(E[j] == static_cast<long double>(2 * j + 1));

    auto w3 = recurrence_witness({0, 1, 2}, 800);
    auto E3 = energy_profile(w3);
    for (int j = 0; j <= 800; ++j) {
        CHECK(std::fabs(static_cast<double>(E3[j]) - 4.0 / 3.0 * j) <= 2.0);
        if (j) CHECK(E3[j] >= E3[j - 1]);
    }

    auto wn = recurrence_witness({0, 1, 3}, 800);
    auto En = energy_profile(wn);
    for (int N : {50, 100, 200, 400}) {
        CHECK(E[2 * N] >= E[N] + 1.0L);
        CHECK(E3[2 * N] >= E3[N] + 1.0L);
        CHECK(En[2 * N] > En[N] + 1.0L);
    }

    RecurrenceWitness zero;
    zero.window = 5;
    zero.sample_abs2.assign(11, 0.0L);
    zero.samples.assign(11, {0.0, 0.0});
    CHECK_THROWS_AS(energy_profile(zero), PreconditionError);
}

TEST_CASE("oracle zeros on a quotient match cyclotomic factors") {
    for (int n : {6, 8}) {
        auto G = cyclic_group(n);
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> elems;
            for (int x = 0; x < n; ++x)
                if (mask >> x & 1) elems.push_back(x);
            Subset K(G, elems);
            auto rec = dft_oracle(K);

            zpoly::Poly p(elems.back() - elems.front() + 1, mpz_class(0));
            for (int e : elems) p[e - elems.front()] = 1;
            for (int j = 0; j < n; ++j) {
                int m = j == 0 ? 1 : n / std::gcd(n, j);
                bool divides =
                    m > 1 && lattice_detail::monic_divides(cyclotomic_polynomial(m), p);
                CHECK((rec.values[j] == "0") == divides);
            }
        }
    }
}
