#pragma once

#include "sdphom/upoly.hpp"

namespace sdphom {

// Element of Q(u): quotient of univariate polynomials, kept reduced with a
// monic denominator so equality is structural.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
    RatFunc(UPoly n) : num_(std::move(n)), den_(1) {}  // NOLINT
    RatFunc(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFunc U() { return RatFunc(UPoly::X()); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == UPoly(1); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str(const std::string& var = "u") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly(1);
            return;
        }
        UPoly g = gcd(num_, den_);
        if (g.deg() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
        Rational lc = den_.lc();
        if (!(lc == Rational(1))) {
            num_ = num_.scaled(lc.inv());
            den_ = den_.scaled(lc.inv());
        }
    }

    UPoly num_, den_;
};

}  // namespace sdphom
