#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pompeiu/errors.hpp"

namespace pompeiu {

// Dense integer polynomials, coefficients ascending. Only what the cyclotomic
// machinery needs: multiply, exact division, and the Phi_m recursion.
namespace zpoly {

using Poly = std::vector<mpz_class>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Quotient of an exact division by a monic divisor; throws if the remainder
// is nonzero.
inline Poly divide_exact(Poly num, const Poly& den) {
    if (den.empty() || den.back() != 1)
        throw ConsistencyError("cyclotomic division needs a monic divisor");
    trim(num);
    if (num.size() < den.size()) {
        if (!num.empty()) throw ConsistencyError("cyclotomic division left a remainder");
        return {};
    }
    Poly q(num.size() - den.size() + 1, mpz_class(0));
    for (std::size_t i = q.size(); i-- > 0;) {
        mpz_class c = num[i + den.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty()) throw ConsistencyError("cyclotomic division left a remainder");
    return q;
}

} // namespace zpoly

// Phi_m, via x^m - 1 = prod_{d | m} Phi_d. Memoized; safe to call from the
// classification worker pool.
inline const zpoly::Poly& cyclotomic_polynomial(int m) {
    static std::map<int, zpoly::Poly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (m < 1) throw PreconditionError("cyclotomic index must be >= 1");
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::function<const zpoly::Poly&(int)> get = [&](int k) -> const zpoly::Poly& {
        auto found = cache.find(k);
        if (found != cache.end()) return found->second;
        zpoly::Poly num(k + 1, mpz_class(0));
        num[0] = -1;
        num[k] = 1;
        for (int d = 1; d < k; ++d)
            if (k % d == 0) num = zpoly::divide_exact(std::move(num), get(d));
        return cache.emplace(k, std::move(num)).first->second;
    };
    return get(m);
}

// Exact arithmetic in Q(zeta_m) for integer combinations of roots of unity,
// represented as residues modulo Phi_m. Enough for certified zero tests of
// character sums.
class CyclotomicField {
public:
    explicit CyclotomicField(int m) : m_(m), phi_(cyclotomic_polynomial(m)) {
        deg_ = static_cast<int>(phi_.size()) - 1;
    }

    int index() const { return m_; }
    int degree() const { return deg_; }

    // Reduces sum_e counts[e] * zeta^e (exponents 0..m-1) to the canonical
    // residue of degree < deg(Phi_m).
    std::vector<mpz_class> reduce(std::vector<mpz_class> dense) const {
        zpoly::trim(dense);
        while (static_cast<int>(dense.size()) > deg_) {
            mpz_class c = dense.back();
            std::size_t top = dense.size() - 1;
            dense.pop_back();
            if (c == 0) continue;
            // subtract c * x^(top-deg) * Phi_m; the popped coefficient was the
            // leading term of that product, so only the lower terms remain
            for (std::size_t j = 0; j + 1 < phi_.size(); ++j)
                dense[top - deg_ + j] -= c * phi_[j];
            zpoly::trim(dense);
        }
        return dense;
    }

    bool is_zero(const std::vector<mpz_class>& residue) const {
        for (const auto& c : residue)
            if (c != 0) return false;
        return true;
    }

    // Residue rendered as a polynomial in z = zeta_m, e.g. "1+z-z^2".
    static std::string to_string(const std::vector<mpz_class>& residue) {
        std::string s;
        for (std::size_t i = 0; i < residue.size(); ++i) {
            if (residue[i] == 0) continue;
            mpz_class a = residue[i];
            if (s.empty()) {
                if (i == 0)
                    s += a.get_str();
                else if (a == 1)
                    ;  // bare leading term
                else if (a == -1)
                    s += "-";
                else
                    s += a.get_str();
            } else {
                if (a > 0)
                    s += "+";
                else
                    s += "-";
                mpz_class mag = abs(a);
                if (mag != 1 || i == 0) s += mag.get_str();
            }
            if (i == 1)
                s += "z";
            else if (i > 1)
                s += "z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    int m_;
    zpoly::Poly phi_;
    int deg_;
};

} // namespace pompeiu
