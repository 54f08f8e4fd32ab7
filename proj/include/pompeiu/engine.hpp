#pragma once

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pompeiu/cyclotomic.hpp"
#include "pompeiu/linalg.hpp"
#include "pompeiu/structure.hpp"

namespace pompeiu {

namespace detail {

inline Vec to_vector(const GroupRingElement& f) {
    Vec v(f.group().order, Scalar(0));
    for (const auto& [g, c] : f.terms()) v[g] = c;
    return v;
}

inline GroupRingElement from_vector(const FiniteGroup& G, const Vec& v) {
    GroupRingElement f(G);
    for (int g = 0; g < G.order; ++g) f.set_coeff(g, v[g]);
    return f;
}

inline std::vector<std::uint16_t> translate_set(const Subset& K, int g, int h) {
    const FiniteGroup& G = *K.group;
    std::vector<std::uint16_t> s;
    s.reserve(K.size());
    for (auto k : K.elements) s.push_back(static_cast<std::uint16_t>(G.op(G.op(g, k), h)));
    std::sort(s.begin(), s.end());
    return s;
}

// The distinct sets gKh over all (g, h), in lexicographic order. Rows of the
// translate-sum system and spanning vectors of the ideal at once: the
// convolution chi_g * chi_K * chi_h is exactly the indicator of gKh.
inline std::set<std::vector<std::uint16_t>> distinct_two_sided_translates(const Subset& K) {
    const FiniteGroup& G = *K.group;
    std::set<std::vector<std::uint16_t>> sets;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) sets.insert(translate_set(K, g, h));
    return sets;
}

inline Vec indicator_row(int order, const std::vector<std::uint16_t>& s) {
    Vec row(order, Scalar(0));
    for (auto x : s) row[x] = Scalar(1);
    return row;
}

inline Mat two_sided_rows(const Subset& K) {
    Mat rows;
    for (const auto& s : distinct_two_sided_translates(K))
        rows.push_back(indicator_row(K.group->order, s));
    return rows;
}

inline void require_nonempty(const Subset& K, const char* op) {
    if (!K.group) throw PreconditionError(std::string(op) + ": subset has no group");
    if (K.empty()) throw PreconditionError(std::string(op) + ": empty subset");
}

} // namespace detail

// Sum of f over the two-sided translate gKh, evaluated by three routes that
// must agree: the direct sum, (tilde(chi_K) * L_g f)(h), and
// (R_{h^-1} f * tilde(chi_K))(g).
inline Scalar translate_sum(const GroupRingElement& f, int g, const Subset& K, int h) {
    detail::require_nonempty(K, "translate_sum");
    const FiniteGroup& G = f.group();
    if (K.group != &G) throw PreconditionError("translate_sum: subset group mismatch");

    Scalar direct(0);
    for (auto k : K.elements) direct += f.coeff(G.op(G.op(g, k), h));

    GroupRingElement kt = tilde(char_fn(K));
    Scalar via_left = convolve(kt, translate_left(g, f)).coeff(h);
    Scalar via_right = convolve(translate_right(G.inverse(h), f), kt).coeff(g);
    if (direct != via_left || direct != via_right)
        throw ConsistencyError("translate_sum: evaluation routes disagree");
    return direct;
}

// Dimension of the two-sided ideal generated by chi_K, as the exact rank of
// the family chi_g * chi_K * chi_h with duplicate sets removed first.
inline int ideal_span_rank(const Subset& K) {
    detail::require_nonempty(K, "ideal_span_rank");
    return rank_bareiss(detail::two_sided_rows(K));
}

struct OracleRecord {
    int modulus = 1;                  // character values live in Q(zeta_modulus)
    std::vector<std::string> values;  // residue per character, character index order
    int zero_count = 0;
    bool all_nonzero = false;
};

namespace detail {

inline OracleRecord dft_record(const Subset& K) {
    const FiniteGroup& G = *K.group;
    const int L = G.exponent();
    CyclotomicField F(L);
    OracleRecord rec;
    rec.modulus = L;
    const auto& factors = G.abelian_factors;
    for (int j = 0; j < G.order; ++j) {
        auto jd = G.digits(j);
        std::vector<mpz_class> dense(L, mpz_class(0));
        for (auto k : K.elements) {
            auto kd = G.digits(k);
            long e = 0;
            for (std::size_t t = 0; t < factors.size(); ++t)
                e = (e + static_cast<long>(L / factors[t]) * jd[t] % L * kd[t]) % L;
            dense[e] += 1;
        }
        auto residue = F.reduce(std::move(dense));
        rec.zero_count += F.is_zero(residue);
        rec.values.push_back(CyclotomicField::to_string(residue));
    }
    rec.all_nonzero = rec.zero_count == 0;
    return rec;
}

} // namespace detail

// Exact character sums for an abelian group with recorded cyclic factors.
// The ideal's dimension equals the number of nonvanishing sums; the rank
// must match, and the all-nonzero verdict decides the Pompeiu property.
inline OracleRecord dft_oracle(const Subset& K) {
    detail::require_nonempty(K, "dft_oracle");
    const FiniteGroup& G = *K.group;
    if (G.abelian_factors.empty())
        throw PreconditionError(
            "dft_oracle: no recorded cyclic factor decomposition; the rank criterion remains "
            "authoritative");

    auto rec = detail::dft_record(K);
    if (ideal_span_rank(K) != G.order - rec.zero_count)
        throw ConsistencyError("dft_oracle: rank disagrees with the count of nonvanishing sums");
    return rec;
}

struct PompeiuVerdict {
    Subset subset;
    bool is_pompeiu = false;
    int ideal_rank = 0;
    std::vector<GroupRingElement> witness_basis;  // empty iff is_pompeiu
    std::optional<OracleRecord> oracle_agreement;
};

struct SolutionSpace {
    enum class Side { two_sided, one_sided };
    std::vector<GroupRingElement> basis;
    Side side = Side::two_sided;
};

namespace detail {

// Independent span of the ideal: close {chi_K} under coordinate permutations
// f(x) -> f(g^-1 x) and f(x) -> f(x g^-1), growing a reduced row basis until
// nothing new appears. Shares no code path with the translate enumeration.
inline Mat ideal_closure_basis(const Subset& K) {
    const FiniteGroup& G = *K.group;
    IncrementalRowSpace space;
    std::vector<Vec> frontier{indicator_row(G.order, K.elements)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (auto& v : frontier) {
            if (!space.add(v)) continue;
            for (int g = 1; g < G.order; ++g) {
                Vec left(G.order, Scalar(0)), right(G.order, Scalar(0));
                for (int x = 0; x < G.order; ++x) {
                    left[G.op(g, x)] = v[x];
                    right[G.op(x, g)] = v[x];
                }
                next.push_back(std::move(left));
                next.push_back(std::move(right));
            }
        }
        frontier = std::move(next);
    }
    return space.rows();
}

} // namespace detail

// Decides whether K determines every function from its two-sided translate
// sums. Witnesses are the exact nullspace of the translate-sum system; for
// small groups the ideal is rebuilt by an independent closure and the two
// routes must span the same spaces.
inline PompeiuVerdict is_pompeiu_set(const Subset& K) {
    detail::require_nonempty(K, "is_pompeiu_set");
    const FiniteGroup& G = *K.group;

    auto sets = detail::distinct_two_sided_translates(K);
    Mat rows;
    for (const auto& s : sets) rows.push_back(detail::indicator_row(G.order, s));

    PompeiuVerdict v;
    v.subset = K;
    v.ideal_rank = rank_bareiss(rows);
    auto kernel = nullspace(rows);
    if (v.ideal_rank + static_cast<int>(kernel.size()) != G.order)
        throw ConsistencyError("is_pompeiu_set: rank and witness dimension do not add up");
    v.is_pompeiu = v.ideal_rank == G.order;
    if (v.is_pompeiu != kernel.empty())
        throw ConsistencyError("is_pompeiu_set: verdict disagrees with witness basis");

    // every witness kills every translate sum, checked over the distinct sets
    // (the sum only depends on the set gKh)
    for (const auto& w : kernel) {
        for (const auto& s : sets) {
            Scalar sum(0);
            for (auto x : s) sum += w[x];
            if (!sum.is_zero())
                throw ConsistencyError("is_pompeiu_set: witness fails a translate sum");
        }
        v.witness_basis.push_back(detail::from_vector(G, w));
    }

    if (G.order <= 16) {
        Mat closure = detail::ideal_closure_basis(K);
        Mat both = closure;
        both.insert(both.end(), rows.begin(), rows.end());
        if (rank_bareiss(closure) != v.ideal_rank || rank_bareiss(std::move(both)) != v.ideal_rank)
            throw ConsistencyError("is_pompeiu_set: ideal closure spans a different space");
        if (!span_equal(nullspace(std::move(closure)), kernel))
            throw ConsistencyError("is_pompeiu_set: annihilator routes disagree");
    }

    if (!G.abelian_factors.empty()) {
        auto rec = detail::dft_record(K);
        if (v.ideal_rank != G.order - rec.zero_count)
            throw ConsistencyError("is_pompeiu_set: character oracle disagrees with the rank");
        if (rec.all_nonzero != v.is_pompeiu)
            throw ConsistencyError("is_pompeiu_set: character oracle disagrees");
        v.oracle_agreement = std::move(rec);
    }
    return v;
}

inline SolutionSpace two_sided_solution_space(const Subset& K) {
    auto v = is_pompeiu_set(K);
    return SolutionSpace{std::move(v.witness_basis), SolutionSpace::Side::two_sided};
}

// Solutions of the one-sided problem: nullspace over the distinct left
// translates gK. Each basis vector is re-verified by direct summation and
// through the convolution form chi_K * tilde(f) = 0.
inline SolutionSpace one_sided_solution_space(const Subset& K) {
    detail::require_nonempty(K, "one_sided_solution_space");
    const FiniteGroup& G = *K.group;

    std::set<std::vector<std::uint16_t>> sets;
    for (int g = 0; g < G.order; ++g) sets.insert(detail::translate_set(K, g, FiniteGroup::identity));
    Mat rows;
    for (const auto& s : sets) rows.push_back(detail::indicator_row(G.order, s));

    SolutionSpace out;
    out.side = SolutionSpace::Side::one_sided;
    GroupRingElement ck = char_fn(K);
    for (const auto& w : nullspace(rows)) {
        GroupRingElement f = detail::from_vector(G, w);
        for (int g = 0; g < G.order; ++g) {
            Scalar sum(0);
            for (auto k : K.elements) sum += f.coeff(G.op(g, k));
            if (!sum.is_zero())
                throw ConsistencyError("one_sided_solution_space: basis vector fails a sum");
        }
        if (!convolve(ck, tilde(f)).is_zero())
            throw ConsistencyError("one_sided_solution_space: convolution form does not vanish");
        out.basis.push_back(std::move(f));
    }
    return out;
}

// chi_K - |K| * chi_identity for a nontrivial normal subgroup K: the standard
// nonzero function all of whose two-sided translate sums vanish.
inline GroupRingElement normal_subgroup_witness(const Subset& K) {
    detail::require_nonempty(K, "normal_subgroup_witness");
    if (!is_normal_subgroup(K))
        throw PreconditionError("normal_subgroup_witness: not a normal subgroup");
    if (K.size() == 1)
        throw PreconditionError("normal_subgroup_witness: the trivial subgroup has no witness");
    const FiniteGroup& G = *K.group;

    GroupRingElement w = char_fn(K);
    w.add_coeff(FiniteGroup::identity, Scalar(-static_cast<long>(K.size())));
    if (w.is_zero()) throw ConsistencyError("normal_subgroup_witness: witness vanished");
    if (!augmentation(w).is_zero())
        throw ConsistencyError("normal_subgroup_witness: witness leaves the augmentation ideal");
    for (const auto& s : detail::distinct_two_sided_translates(K)) {
        Scalar sum(0);
        for (auto x : s) sum += w.coeff(x);
        if (!sum.is_zero())
            throw ConsistencyError("normal_subgroup_witness: a translate sum does not vanish");
    }
    return w;
}

// chi_K / |K| for a normal subgroup K: a central idempotent (the unit when K
// is trivial).
inline GroupRingElement central_idempotent(const Subset& K) {
    detail::require_nonempty(K, "central_idempotent");
    if (!is_normal_subgroup(K))
        throw PreconditionError("central_idempotent: not a normal subgroup");

    GroupRingElement e = char_fn(K) * Scalar(make_rational(1, static_cast<long>(K.size())));
    if (e.is_zero() || convolve(e, e) != e || !is_central(e))
        throw ConsistencyError("central_idempotent: verification failed");
    return e;
}

struct ClassifyEntry {
    Subset subset;  // canonical orbit representative when orbits_only
    bool is_pompeiu = false;
    int ideal_rank = 0;
    int witness_dim = 0;
    std::size_t orbit_size = 1;
};

struct ClassifyReport {
    std::string group_label;
    int group_order = 0;
    bool orbits_only = false;     // entries are orbit representatives
    bool complete = false;        // every nonempty subset was covered
    std::vector<ClassifyEntry> entries;
    std::size_t subsets_covered = 0;  // counts whole orbits
    std::size_t pompeiu_count = 0;    // ditto
    std::size_t non_pompeiu_count = 0;
    bool group_is_pompeiu = false;  // complete and every subset passed
};

struct ClassifyOptions {
    int max_size = 0;  // 0: every nonempty subset
    int jobs = 1;
};

namespace detail {

inline std::vector<std::uint16_t> canonical_orbit_rep(const Subset& K) {
    auto sets = distinct_two_sided_translates(K);
    return *sets.begin();  // lexicographically least translate
}

template <typename Fn>
inline void run_indexed(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

// Verdicts for every nonempty subset up to the size cap. Small groups are
// enumerated in full; larger ones by one representative per two-sided
// translate orbit, which is lossless because verdicts are orbit-constant
// (spot-checked here, exhaustively checked in the tests).
inline ClassifyReport classify_subsets(const FiniteGroup& G, ClassifyOptions opt = {}) {
    ClassifyReport rep;
    rep.group_label = G.label;
    rep.group_order = G.order;
    const int cap = opt.max_size == 0 ? G.order : std::min(opt.max_size, G.order);
    if (opt.max_size == 0 && G.order > 16)
        throw PreconditionError(
            "classify_subsets: full powerset enumeration needs order <= 16; pass a size cap");
    if (opt.max_size < 0) throw PreconditionError("classify_subsets: negative size cap");
    rep.complete = cap >= G.order;
    rep.orbits_only = G.order > 8;

    // enumerate subsets of size 1..cap in lexicographic order
    std::vector<std::vector<std::uint16_t>> todo;
    std::map<std::vector<std::uint16_t>, std::size_t> orbit_sizes;  // rep -> size seen
    std::vector<std::uint16_t> cur;
    auto emit = [&](const auto& self, int start) -> void {
        if (!cur.empty()) {
            if (rep.orbits_only) {
                Subset K(G, std::vector<int>(cur.begin(), cur.end()));
                auto canon = detail::canonical_orbit_rep(K);
                ++orbit_sizes[canon];
            } else {
                todo.push_back(cur);
            }
        }
        if (static_cast<int>(cur.size()) == cap) return;
        for (int x = start; x < G.order; ++x) {
            cur.push_back(static_cast<std::uint16_t>(x));
            self(self, x + 1);
            cur.pop_back();
        }
    };
    emit(emit, 0);
    if (rep.orbits_only)
        for (const auto& [canon, n] : orbit_sizes) todo.push_back(canon);

    std::vector<ClassifyEntry> results(todo.size());
    detail::run_indexed(todo.size(), opt.jobs, [&](std::size_t i) {
        Subset K(G, std::vector<int>(todo[i].begin(), todo[i].end()));
        auto v = is_pompeiu_set(K);
        ClassifyEntry e;
        e.subset = std::move(v.subset);
        e.is_pompeiu = v.is_pompeiu;
        e.ideal_rank = v.ideal_rank;
        e.witness_dim = static_cast<int>(v.witness_basis.size());
        if (rep.orbits_only) e.orbit_size = orbit_sizes.at(todo[i]);
        results[i] = std::move(e);
    });

    for (auto& e : results) {
        rep.subsets_covered += e.orbit_size;
        (e.is_pompeiu ? rep.pompeiu_count : rep.non_pompeiu_count) += e.orbit_size;
        rep.entries.push_back(std::move(e));
    }
    std::sort(rep.entries.begin(), rep.entries.end(),
              [](const ClassifyEntry& a, const ClassifyEntry& b) {
                  if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
                  return a.subset.elements < b.subset.elements;
              });

    // orbit constancy: in full mode every orbit member got an independent
    // verdict, so the verdicts must agree; in representative mode a translate
    // of each representative must canonicalize back to it
    if (!rep.orbits_only) {
        std::map<std::vector<std::uint16_t>, std::pair<bool, int>> seen;
        for (const auto& e : rep.entries) {
            auto canon = detail::canonical_orbit_rep(e.subset);
            auto [it, fresh] = seen.emplace(canon, std::make_pair(e.is_pompeiu, e.ideal_rank));
            if (!fresh && it->second != std::make_pair(e.is_pompeiu, e.ideal_rank))
                throw ConsistencyError("classify_subsets: verdict not constant on an orbit");
        }
    } else {
        for (const auto& e : rep.entries) {
            auto ts = detail::translate_set(e.subset, 1, G.order - 1);
            Subset t(G, std::vector<int>(ts.begin(), ts.end()));
            if (detail::canonical_orbit_rep(t) != e.subset.elements)
                throw ConsistencyError("classify_subsets: representative is not orbit-canonical");
        }
    }

    rep.group_is_pompeiu = rep.complete && rep.non_pompeiu_count == 0;
    return rep;
}

struct L2Verdict {
    bool is_pompeiu_group = false;
    std::string explanation;
    std::optional<Subset> violating_subgroup;
    std::optional<GroupRingElement> witness;
};

// A finite group determines every square-summable function from two-sided
// translate sums only when it is trivial: any larger group is itself a
// nontrivial finite normal subgroup and carries the chi_K - |K| witness.
inline L2Verdict is_l2_pompeiu_group(const FiniteGroup& G) {
    L2Verdict v;
    if (G.order == 1) {
        v.is_pompeiu_group = true;
        v.explanation = "trivial group: no nontrivial finite normal subgroup exists";
        return v;
    }
    Subset N;
    try {
        auto list = normal_subgroups(G);
        N = list.subgroups.at(1);  // smallest nontrivial one
    } catch (const PreconditionError&) {
        N = delta_subgroup(G);  // G itself always qualifies
    }
    v.is_pompeiu_group = false;
    v.witness = normal_subgroup_witness(N);  // verifies the translate sums
    v.explanation = "nontrivial finite normal subgroup {" + N.to_string() + "} of size " +
                    std::to_string(N.size()) + " admits the witness " + v.witness->to_string();
    v.violating_subgroup = std::move(N);
    return v;
}

} // namespace pompeiu
