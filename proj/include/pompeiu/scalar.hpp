#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace pompeiu {

using Rational = mpq_class;

// Reduces to lowest terms with a positive denominator. mpq_class arithmetic
// keeps values canonical, but raw (num, den) construction does not.
inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

// Gaussian rational a + b*i. The coefficient field for all group-ring
// arithmetic; every operation in the library is exact.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}  // NOLINT: implicit by design
    Scalar(Rational re) : re_(std::move(re)), im_(0) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar from_fractions(long an, long ad, long bn = 0, long bd = 1) {
        return Scalar(make_rational(an, ad), make_rational(bn, bd));
    }
    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    // |z|^2 = a^2 + b^2, exact and nonnegative.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        Rational n2 = o.norm2();
        Rational r = (re_ * o.re_ + im_ * o.im_) / n2;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n2;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "p/q" for real values, "p/q+r/s*i" / "p/q-r/s*i" otherwise. Integer
    // parts print without the "/1".
    std::string to_string() const {
        if (is_real()) return re_.get_str();
        std::string s = re_.get_str();
        if (sgn(im_) >= 0)
            s += "+" + im_.get_str() + "i";
        else
            s += "-" + Rational(-im_).get_str() + "i";
        return s;
    }

    double real_d() const { return re_.get_d(); }
    double imag_d() const { return im_.get_d(); }

private:
    Rational re_, im_;
};

} // namespace pompeiu
