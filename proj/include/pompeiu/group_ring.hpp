#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pompeiu/finite_group.hpp"
#include "pompeiu/scalar.hpp"

namespace pompeiu {

// A set of element indices, stored strictly increasing. The group object must
// outlive the subset.
struct Subset {
    const FiniteGroup* group = nullptr;
    std::vector<std::uint16_t> elements;

    Subset() = default;
    Subset(const FiniteGroup& g, std::vector<int> elems) : group(&g) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        for (int e : elems) {
            if (e < 0 || e >= g.order)
                throw PreconditionError("subset element " + std::to_string(e) +
                                        " out of range for group of order " +
                                        std::to_string(g.order));
            elements.push_back(static_cast<std::uint16_t>(e));
        }
    }

    std::size_t size() const { return elements.size(); }
    bool empty() const { return elements.empty(); }
    bool contains(int x) const {
        return std::binary_search(elements.begin(), elements.end(), x);
    }

    // "a,b,c" in ascending element order.
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(elements[i]);
        }
        return s;
    }

    friend bool operator==(const Subset& a, const Subset& b) {
        return a.group == b.group && a.elements == b.elements;
    }
    friend bool operator<(const Subset& a, const Subset& b) {
        return a.elements < b.elements;
    }
};

// Sparse element of the group ring: f = sum a_g g. Zero coefficients are
// never stored; iteration order is ascending element index.
class GroupRingElement {
public:
    explicit GroupRingElement(const FiniteGroup& g) : group_(&g) {}

    static GroupRingElement point_mass(const FiniteGroup& g, int x, Scalar c = Scalar(1)) {
        GroupRingElement f(g);
        f.set_coeff(x, std::move(c));
        return f;
    }
    static GroupRingElement zero(const FiniteGroup& g) { return GroupRingElement(g); }

    const FiniteGroup& group() const { return *group_; }

    Scalar coeff(int x) const {
        auto it = coeffs_.find(static_cast<std::uint16_t>(x));
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }

    void set_coeff(int x, Scalar c) {
        if (x < 0 || x >= group_->order)
            throw PreconditionError("coefficient index out of range");
        if (c.is_zero())
            coeffs_.erase(static_cast<std::uint16_t>(x));
        else
            coeffs_[static_cast<std::uint16_t>(x)] = std::move(c);
    }

    void add_coeff(int x, const Scalar& c) { set_coeff(x, coeff(x) + c); }

    bool is_zero() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }

    const std::map<std::uint16_t, Scalar>& terms() const { return coeffs_; }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        require_same_group(o);
        for (const auto& [x, c] : o.coeffs_) add_coeff(x, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        require_same_group(o);
        for (const auto& [x, c] : o.coeffs_) add_coeff(x, -c);
        return *this;
    }
    GroupRingElement& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [x, c] : coeffs_) c *= s;
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
        return a += b;
    }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
        return a -= b;
    }
    friend GroupRingElement operator*(GroupRingElement a, const Scalar& s) { return a *= s; }
    friend GroupRingElement operator*(const Scalar& s, GroupRingElement a) { return a *= s; }
    friend GroupRingElement operator-(const GroupRingElement& a) {
        GroupRingElement r(*a.group_);
        for (const auto& [x, c] : a.coeffs_) r.coeffs_.emplace(x, -c);
        return r;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.group_ == b.group_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const GroupRingElement& a, const GroupRingElement& b) {
        return !(a == b);
    }

    // "c0*e0 + c1*e3 + ..." with exact scalar strings; "0" for the zero
    // element.
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [x, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += c.to_string() + "*e" + std::to_string(x);
        }
        return s;
    }

    void require_same_group(const GroupRingElement& o) const {
        if (group_ != o.group_)
            throw PreconditionError("group ring elements live over different groups");
    }

private:
    const FiniteGroup* group_;
    std::map<std::uint16_t, Scalar> coeffs_;
};

// (f*h)(g) = sum_x f(g x^-1) h(x); computed as sum over support pairs.
inline GroupRingElement convolve(const GroupRingElement& f, const GroupRingElement& h) {
    f.require_same_group(h);
    const FiniteGroup& g = f.group();
    GroupRingElement r(g);
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : h.terms()) r.add_coeff(g.op(a, b), ca * cb);
    return r;
}

// tilde(f)(x) = f(x^-1)
inline GroupRingElement tilde(const GroupRingElement& f) {
    const FiniteGroup& g = f.group();
    GroupRingElement r(g);
    for (const auto& [x, c] : f.terms()) r.set_coeff(g.inverse(x), c);
    return r;
}

// star(f) = sum conj(a_g) g^-1, the adjoint of convolution by f.
inline GroupRingElement star(const GroupRingElement& f) {
    const FiniteGroup& g = f.group();
    GroupRingElement r(g);
    for (const auto& [x, c] : f.terms()) r.set_coeff(g.inverse(x), c.conj());
    return r;
}

// L_g f(x) = f(gx); equal to chi_{g^-1} * f.
inline GroupRingElement translate_left(int g, const GroupRingElement& f) {
    const FiniteGroup& G = f.group();
    GroupRingElement r(G);
    int gi = G.inverse(g);
    for (const auto& [x, c] : f.terms()) r.set_coeff(G.op(gi, x), c);
    return r;
}

// R_g f(x) = f(x g^-1); equal to f * chi_g.
inline GroupRingElement translate_right(int g, const GroupRingElement& f) {
    const FiniteGroup& G = f.group();
    GroupRingElement r(G);
    for (const auto& [x, c] : f.terms()) r.set_coeff(G.op(x, g), c);
    return r;
}

// The augmentation: sum of all coefficients. A unital ring morphism onto the
// scalar field.
inline Scalar augmentation(const GroupRingElement& f) {
    Scalar s(0);
    for (const auto& [x, c] : f.terms()) s += c;
    return s;
}

// <f, h> = sum a_g conj(b_g). Conjugation falls on the second argument.
inline Scalar inner_product(const GroupRingElement& f, const GroupRingElement& h) {
    f.require_same_group(h);
    Scalar s(0);
    for (const auto& [x, c] : f.terms()) {
        Scalar b = h.coeff(x);
        if (!b.is_zero()) s += c * b.conj();
    }
    return s;
}

// Coefficient 1 on K, 0 elsewhere. An empty K gives the zero element.
inline GroupRingElement char_fn(const Subset& K) {
    if (!K.group) throw PreconditionError("subset has no group");
    GroupRingElement r(*K.group);
    for (auto x : K.elements) r.set_coeff(x, Scalar(1));
    return r;
}

} // namespace pompeiu
