#pragma once

#include <Eigen/Eigenvalues>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pompeiu/cyclotomic.hpp"
#include "pompeiu/scalar.hpp"

namespace pompeiu {

using IntSet = std::vector<std::int64_t>;

// Formal sums over the integers with exact coefficients; the group algebra of
// Z in the clothing it is usually worn in.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(std::int64_t e, Scalar c = Scalar(1)) {
        LaurentPoly p;
        p.set_coeff(e, std::move(c));
        return p;
    }

    static LaurentPoly from_set(IntSet k) {
        std::sort(k.begin(), k.end());
        k.erase(std::unique(k.begin(), k.end()), k.end());
        LaurentPoly p;
        for (auto e : k) p.set_coeff(e, Scalar(1));
        return p;
    }

    Scalar coeff(std::int64_t e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    void set_coeff(std::int64_t e, Scalar c) {
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[e] = std::move(c);
    }
    void add_coeff(std::int64_t e, const Scalar& c) { set_coeff(e, coeff(e) + c); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }
    std::int64_t min_exponent() const { return terms_.begin()->first; }
    std::int64_t max_exponent() const { return terms_.rbegin()->first; }
    const std::map<std::int64_t, Scalar>& terms() const { return terms_; }

    bool is_monomial_unit() const { return terms_.size() == 1; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // "1 - 2*x^3 + x^-1" style, ascending exponents, "0" when empty.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.to_string();
            bool negated = false;
            if (!s.empty() && cs[0] == '-') {
                cs.erase(cs.begin());
                negated = true;
            }
            if (e != 0) {
                if (cs == "1")
                    cs = "x^" + std::to_string(e);
                else if (cs.find_first_of("+-", 1) != std::string::npos)
                    cs = "(" + cs + ")*x^" + std::to_string(e);
                else
                    cs += "*x^" + std::to_string(e);
            }
            if (s.empty())
                s = std::move(cs);
            else
                s += (negated ? " - " : " + ") + cs;
        }
        return s;
    }

private:
    std::map<std::int64_t, Scalar> terms_;
};

inline LaurentPoly laurent_multiply(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) r.add_coeff(ea + eb, ca * cb);
    return r;
}

// Several variables, exponent vectors of a fixed length. Products work in any
// dimension; the Pompeiu decision below stays one-dimensional.
class MultiLaurentPoly {
public:
    explicit MultiLaurentPoly(int dims) : dims_(dims) {
        if (dims < 1) throw PreconditionError("dimension must be positive");
    }

    int dims() const { return dims_; }

    void add_coeff(const std::vector<std::int64_t>& e, const Scalar& c) {
        if (static_cast<int>(e.size()) != dims_)
            throw PreconditionError("exponent dimension mismatch");
        auto it = terms_.find(e);
        Scalar next = (it == terms_.end() ? Scalar(0) : it->second) + c;
        if (next.is_zero()) {
            if (it != terms_.end()) terms_.erase(it);
        } else {
            terms_[e] = std::move(next);
        }
    }

    const std::map<std::vector<std::int64_t>, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial_unit() const { return terms_.size() == 1; }

private:
    int dims_;
    std::map<std::vector<std::int64_t>, Scalar> terms_;
};

inline MultiLaurentPoly multi_multiply(const MultiLaurentPoly& a, const MultiLaurentPoly& b) {
    if (a.dims() != b.dims()) throw PreconditionError("dimension mismatch in product");
    MultiLaurentPoly r(a.dims());
    std::vector<std::int64_t> e(a.dims());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            for (int i = 0; i < a.dims(); ++i) e[i] = ea[i] + eb[i];
            r.add_coeff(e, ca * cb);
        }
    return r;
}

namespace lattice_detail {

inline IntSet normalized(IntSet k, const char* op) {
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    if (k.empty()) throw PreconditionError(std::string(op) + ": empty subset");
    return k;
}

} // namespace lattice_detail

// Finite K in Z generates everything exactly when chi_K is a unit of the
// Laurent ring, and the units are the single monomials.
inline bool is_pompeiu_subset_Z(const IntSet& K) {
    return lattice_detail::normalized(K, "is_pompeiu_subset_Z").size() == 1;
}

// Points of Z^d. One dimension defers to the full decision; in higher
// dimension only the trivial monomial-unit case is decided and anything else
// is refused rather than guessed.
inline bool is_pompeiu_subset_Zd(const std::vector<std::vector<std::int64_t>>& K) {
    if (K.empty()) throw PreconditionError("is_pompeiu_subset_Zd: empty subset");
    const std::size_t d = K[0].size();
    if (d == 0) throw PreconditionError("is_pompeiu_subset_Zd: zero-dimensional point");
    for (const auto& p : K)
        if (p.size() != d) throw PreconditionError("is_pompeiu_subset_Zd: mixed dimensions");
    if (d == 1) {
        IntSet flat;
        for (const auto& p : K) flat.push_back(p[0]);
        return is_pompeiu_subset_Z(flat);
    }
    std::set<std::vector<std::int64_t>> distinct(K.begin(), K.end());
    if (distinct.size() == 1) return true;
    throw PreconditionError(
        "is_pompeiu_subset_Zd: decision beyond monomial units is restricted to one dimension");
}

struct RecurrenceWitness {
    std::vector<std::pair<std::complex<double>, int>> roots;  // value, multiplicity
    int window = 0;                                           // N
    std::vector<std::complex<double>> samples;                // f(-N) .. f(N)
    double residual = 0.0;
    bool exact = false;
    int period = 0;                    // m on the exact path
    std::vector<Scalar> exact_samples; // nonempty iff exact
    std::vector<long double> sample_abs2;

    std::complex<double> sample(int n) const { return samples[n + window]; }
};

namespace lattice_detail {

inline int euler_phi(int m) {
    int r = m;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            r -= r / p;
            while (m % p == 0) m /= p;
        }
    if (m > 1) r -= r / m;
    return r;
}

inline bool monic_divides(const zpoly::Poly& den, zpoly::Poly num) {
    zpoly::trim(num);
    if (num.size() < den.size()) return num.empty();
    for (std::size_t i = num.size() - den.size() + 1; i-- > 0;) {
        mpz_class c = num[i + den.size() - 1];
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    zpoly::trim(num);
    return num.empty();
}

// ---- rational univariate polynomials, just enough for squarefree parts ----

using QPoly = std::vector<Rational>;

inline void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qderivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    qtrim(d);
    return d;
}

inline QPoly qremainder(QPoly num, const QPoly& den) {
    qtrim(num);
    while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        std::size_t off = num.size() - den.size();
        for (std::size_t j = 0; j < den.size(); ++j) num[off + j] -= c * den[j];
        num.pop_back();
        qtrim(num);
    }
    return num;
}

inline QPoly qquotient(QPoly num, const QPoly& den) {
    qtrim(num);
    if (num.size() < den.size()) return {};
    QPoly q(num.size() - den.size() + 1, Rational(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        std::size_t off = num.size() - den.size();
        q[off] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[off + j] -= c * den[j];
        num.pop_back();
        qtrim(num);
    }
    return q;
}

inline QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qremainder(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// ---- fixed-precision complex arithmetic on top of mpf ----

struct BigComplex {
    mpf_class re, im;
    explicit BigComplex(unsigned long prec) : re(0, prec), im(0, prec) {}
    BigComplex(const std::complex<double>& z, unsigned long prec)
        : re(z.real(), prec), im(z.imag(), prec) {}
};

inline BigComplex bc_mul(const BigComplex& a, const BigComplex& b, unsigned long prec) {
    BigComplex r(prec);
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

inline BigComplex bc_add(const BigComplex& a, const BigComplex& b, unsigned long prec) {
    BigComplex r(prec);
    r.re = a.re + b.re;
    r.im = a.im + b.im;
    return r;
}

inline BigComplex bc_div(const BigComplex& a, const BigComplex& b, unsigned long prec) {
    BigComplex r(prec);
    mpf_class n2(0, prec);
    n2 = b.re * b.re + b.im * b.im;
    r.re = (a.re * b.re + a.im * b.im) / n2;
    r.im = (a.im * b.re - a.re * b.im) / n2;
    return r;
}

inline mpf_class bc_norm2(const BigComplex& a, unsigned long prec) {
    mpf_class n(0, prec);
    n = a.re * a.re + a.im * a.im;
    return n;
}

// log2 of a nonnegative mpf, -inf is mapped to a large negative number
inline double log2_of(const mpf_class& x) {
    long e = 0;
    double m = mpf_get_d_2exp(&e, x.get_mpf_t());
    if (m == 0.0) return -1e9;
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

inline long double to_long_double(const mpf_class& x) {
    long e = 0;
    double m = mpf_get_d_2exp(&e, x.get_mpf_t());
    return ldexpl(static_cast<long double>(m), static_cast<int>(e));
}

inline BigComplex horner(const std::vector<BigComplex>& coeffs, const BigComplex& z,
                         unsigned long prec) {
    BigComplex acc(prec);
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = bc_add(bc_mul(acc, z, prec), coeffs[i], prec);
    return acc;
}

} // namespace lattice_detail

// A nonzero sequence whose sums over every in-window translate of K vanish
// (exactly, or below the tolerance). Exact rational path when a cyclotomic
// polynomial divides the characteristic polynomial of K; otherwise a
// geometric sequence on a numerically polished root.
inline RecurrenceWitness recurrence_witness(const IntSet& K_in, int window,
                                            double tolerance = 1e-9) {
    IntSet K = lattice_detail::normalized(K_in, "recurrence_witness");
    if (K.size() < 2)
        throw PreconditionError("recurrence_witness: no nonzero solution for a single point");
    const int span = static_cast<int>(K.back() - K.front());
    std::vector<int> offsets;
    for (auto k : K) offsets.push_back(static_cast<int>(k - K.front()));

    if (window < span || window < 1)
        throw PreconditionError("recurrence_witness: window shorter than the subset span");
    if (window > 1000) throw PreconditionError("recurrence_witness: window above 1000");

    zpoly::Poly p(span + 1, mpz_class(0));
    for (auto o : offsets) p[o] = 1;

    RecurrenceWitness w;
    w.window = window;

    // exact path: smallest m whose cyclotomic polynomial divides p
    for (int m = 2; m <= 1000; ++m) {
        if (lattice_detail::euler_phi(m) > span) continue;
        const auto& phi = cyclotomic_polynomial(m);
        if (!lattice_detail::monic_divides(phi, p)) continue;

        int multiplicity = 0;
        zpoly::Poly q = p;
        while (lattice_detail::monic_divides(phi, q)) {
            q = zpoly::divide_exact(std::move(q), phi);
            ++multiplicity;
        }

        zpoly::Poly xm1(m + 1, mpz_class(0));
        xm1[0] = -1;
        xm1[m] = 1;
        zpoly::Poly psi = zpoly::divide_exact(std::move(xm1), phi);

        // psi(0) = -1, so negating the periodic coefficient sequence puts
        // f(0) = 1
        std::vector<mpz_class> cycle(m, mpz_class(0));
        for (std::size_t i = 0; i < psi.size(); ++i) cycle[i] = -psi[i];

        auto at = [&](long n) -> const mpz_class& {
            long r = n % m;
            if (r < 0) r += m;
            return cycle[r];
        };

        // every in-window translate sum must vanish exactly
        for (int g = -window; g + span <= window; ++g) {
            mpz_class sum(0);
            for (auto o : offsets) sum += at(g + o);
            if (sum != 0)
                throw ConsistencyError("recurrence_witness: periodic witness fails a sum");
        }

        w.exact = true;
        w.period = m;
        w.residual = 0.0;
        for (int j = 1; j <= m; ++j)
            if (std::gcd(j, m) == 1) {
                double ang = 2.0 * M_PI * j / m;
                w.roots.emplace_back(std::complex<double>(std::cos(ang), std::sin(ang)),
                                     multiplicity);
            }
        for (int n = -window; n <= window; ++n) {
            const mpz_class& c = at(n);
            w.exact_samples.emplace_back(Rational(c));
            double cd = c.get_d();
            w.samples.emplace_back(cd, 0.0);
            w.sample_abs2.push_back(static_cast<long double>(cd) * cd);
        }
        return w;
    }

    // numerical path: companion eigenvalues, clustered; the root nearest the
    // unit circle is polished to working precision on the squarefree part
    using lattice_detail::BigComplex;
    lattice_detail::QPoly pq(span + 1, Rational(0));
    for (auto o : offsets) pq[o] = 1;
    lattice_detail::QPoly sf = lattice_detail::qquotient(pq, lattice_detail::qgcd(pq, lattice_detail::qderivative(pq)));
    if (sf.empty() || sf.size() < 2)
        throw ConsistencyError("recurrence_witness: squarefree part degenerated");

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(span, span);
    for (int i = 1; i < span; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < span; ++i) comp(i, span - 1) = -static_cast<double>(p[i].get_d());
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp);
    std::vector<std::complex<double>> eigs;
    for (int i = 0; i < span; ++i)
        eigs.emplace_back(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    std::sort(eigs.begin(), eigs.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const auto& z : eigs) {
        bool merged = false;
        for (auto& [root, mult] : w.roots)
            if (std::abs(root - z) <= 1e-7) {
                ++mult;
                merged = true;
                break;
            }
        if (!merged) w.roots.emplace_back(z, 1);
    }
    int mult_total = 0;
    for (const auto& [root, mult] : w.roots) mult_total += mult;
    if (mult_total != span)
        throw ConsistencyError("recurrence_witness: multiplicities do not sum to the degree");

    std::complex<double> seed = w.roots[0].first;
    for (const auto& [root, mult] : w.roots)
        if (std::fabs(std::log(std::abs(root))) < std::fabs(std::log(std::abs(seed)))) seed = root;

    const double drift = std::fabs(std::log2(std::abs(seed)));
    if (static_cast<double>(window) * drift > 990.0)
        throw PreconditionError("recurrence_witness: samples overflow doubles on this window");
    const unsigned long prec =
        192 + static_cast<unsigned long>((window + span) * drift) + 64;

    auto to_big = [&](const lattice_detail::QPoly& q) {
        std::vector<BigComplex> out;
        for (const auto& c : q) {
            BigComplex b(prec);
            b.re = mpf_class(c, prec);
            out.push_back(std::move(b));
        }
        return out;
    };
    std::vector<BigComplex> cs = to_big(sf);
    std::vector<BigComplex> ds = to_big(lattice_detail::qderivative(sf));

    BigComplex z(seed, prec);
    const double target_log2 = std::log2(tolerance) - 16.0 - static_cast<double>(window) * drift;
    for (int it = 0; it < 200; ++it) {
        BigComplex val = lattice_detail::horner(cs, z, prec);
        if (lattice_detail::log2_of(lattice_detail::bc_norm2(val, prec)) / 2.0 < target_log2) break;
        BigComplex der = lattice_detail::horner(ds, z, prec);
        BigComplex step = lattice_detail::bc_div(val, der, prec);
        z.re -= step.re;
        z.im -= step.im;
        if (it == 199)
            throw ConsistencyError("recurrence_witness: root polishing failed to converge");
    }

    // samples are the geometric sequence z^n, held at working precision
    std::vector<BigComplex> big;
    big.reserve(2 * window + 1);
    BigComplex one(std::complex<double>(1.0, 0.0), prec);
    BigComplex zinv = lattice_detail::bc_div(one, z, prec);
    BigComplex fwd = one, bwd = one;
    std::vector<BigComplex> neg;
    for (int n = 1; n <= window; ++n) {
        bwd = lattice_detail::bc_mul(bwd, zinv, prec);
        neg.push_back(bwd);
    }
    for (auto it = neg.rbegin(); it != neg.rend(); ++it) big.push_back(*it);
    big.push_back(one);
    for (int n = 1; n <= window; ++n) {
        fwd = lattice_detail::bc_mul(fwd, z, prec);
        big.push_back(fwd);
    }

    mpf_class worst(0, prec);
    for (int g = -window; g + span <= window; ++g) {
        BigComplex sum(prec);
        for (auto o : offsets) sum = lattice_detail::bc_add(sum, big[g + o + window], prec);
        mpf_class n2 = lattice_detail::bc_norm2(sum, prec);
        if (n2 > worst) worst = n2;
    }
    mpf_class res(0, prec);
    mpf_sqrt(res.get_mpf_t(), worst.get_mpf_t());
    w.residual = res.get_d();
    if (!(w.residual < tolerance))
        throw ConsistencyError("recurrence_witness: residual above tolerance");

    for (const auto& b : big) {
        w.samples.emplace_back(b.re.get_d(), b.im.get_d());
        w.sample_abs2.push_back(
            lattice_detail::to_long_double(lattice_detail::bc_norm2(b, prec)));
    }
    return w;
}

// Cumulative energies E(0..N), E(j) = sum of |f(n)|^2 over |n| <= j. Always
// nondecreasing; for every witness this keeps growing without bound, which is
// the finite-scale face of Z having no square-summable witness.
inline std::vector<long double> energy_profile(const RecurrenceWitness& w) {
    bool nonzero = false;
    for (auto a : w.sample_abs2) nonzero |= a > 0.0L;
    if (!nonzero) throw PreconditionError("energy_profile: zero witness");

    std::vector<long double> E(w.window + 1);
    E[0] = w.sample_abs2[w.window];
    for (int j = 1; j <= w.window; ++j)
        E[j] = E[j - 1] + w.sample_abs2[w.window - j] + w.sample_abs2[w.window + j];
    return E;
}

} // namespace pompeiu
