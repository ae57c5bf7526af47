#pragma once

#include "sdphom/rational.hpp"

#include <algorithm>
#include <vector>

namespace sdphom {

// Generic dense univariate arithmetic over a field F. F must be default
// constructible to zero, constructible from long, and support +,-,*,/,==
// plus is_zero(). Coefficients ascending; invariant: no trailing zeros.
namespace fup {

template <class F>
void trim(std::vector<F>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

template <class F>
int deg(const std::vector<F>& c) {
    return static_cast<int>(c.size()) - 1;
}

template <class F>
std::vector<F> add(const std::vector<F>& a, const std::vector<F>& b) {
    std::vector<F> r(std::max(a.size(), b.size()), F());
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

template <class F>
std::vector<F> sub(const std::vector<F>& a, const std::vector<F>& b) {
    std::vector<F> r(std::max(a.size(), b.size()), F());
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

template <class F>
std::vector<F> mul(const std::vector<F>& a, const std::vector<F>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<F> r(a.size() + b.size() - 1, F());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

template <class F>
std::vector<F> scale(std::vector<F> a, const F& s) {
    if (s.is_zero()) return {};
    for (auto& c : a) c = c * s;
    return a;
}

// Division with remainder by a nonzero divisor; returns {quotient, remainder}.
template <class F>
std::pair<std::vector<F>, std::vector<F>> divmod(std::vector<F> a, const std::vector<F>& b) {
    if (b.empty()) throw Error("univariate division by zero");
    std::vector<F> q;
    int db = deg(b);
    if (deg(a) >= db) q.assign(static_cast<size_t>(deg(a) - db) + 1, F());
    const F& lb = b.back();
    while (deg(a) >= db) {
        F c = a.back() / lb;
        int shift = deg(a) - db;
        q[static_cast<size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i) a[static_cast<size_t>(i + shift)] -= c * b[static_cast<size_t>(i)];
        trim(a);  // leading term cancels exactly; lower ones may too
    }
    trim(q);
    return {std::move(q), std::move(a)};
}

template <class F>
std::vector<F> monic(std::vector<F> a) {
    if (a.empty()) return a;
    F inv = F(1) / a.back();
    for (auto& c : a) c = c * inv;
    a.back() = F(1);
    return a;
}

template <class F>
std::vector<F> gcd_monic(std::vector<F> a, std::vector<F> b) {
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = monic(std::move(r));  // renormalizing each step tames coefficient growth
    }
    return monic(std::move(a));
}

template <class F>
std::vector<F> derivative(const std::vector<F>& a) {
    std::vector<F> r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * F(static_cast<long>(i)));
    trim(r);
    return r;
}

template <class F>
std::vector<F> squarefree_part(const std::vector<F>& a) {
    if (deg(a) <= 0) return monic(a);
    auto g = gcd_monic(a, derivative(a));
    return monic(divmod(a, g).first);
}

template <class F>
F eval(const std::vector<F>& a, const F& x) {
    F r;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

// Resultant by the Euclidean recurrence over a field:
// res(a,b) = (-1)^(da*db) lc(b)^(da-dr) res(b, r), res(a, c) = c^da.
template <class F>
F resultant(std::vector<F> a, std::vector<F> b) {
    if (a.empty() || b.empty()) return F();
    F acc = F(1);
    bool negate = false;
    while (true) {
        int da = deg(a), db = deg(b);
        if (db == 0) {
            F p = F(1);
            for (int i = 0; i < da; ++i) p = p * b[0];
            return negate ? F() - acc * p : acc * p;
        }
        auto r = divmod(a, b).second;
        int dr = deg(r);
        if (r.empty()) return F();
        F p = F(1);
        for (int i = 0; i < da - dr; ++i) p = p * b.back();
        acc = acc * p;
        if ((da % 2) && (db % 2)) negate = !negate;
        a = std::move(b);
        b = std::move(r);
    }
}

}  // namespace fup

// Dense univariate polynomial over Q.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rational& c) {  // NOLINT: implicit constant embedding
        if (!c.is_zero()) c_.push_back(c);
    }
    UPoly(long c) : UPoly(Rational(c)) {}
    static UPoly from_coeffs(std::vector<Rational> c) {
        UPoly p;
        p.c_ = std::move(c);
        fup::trim(p.c_);
        return p;
    }
    static UPoly X() { return from_coeffs({Rational(0), Rational(1)}); }

    int deg() const { return fup::deg(c_); }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) { return wrap(fup::add(a.c_, b.c_)); }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return wrap(fup::sub(a.c_, b.c_)); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) { return wrap(fup::mul(a.c_, b.c_)); }
    UPoly operator-() const { return wrap(fup::scale(c_, Rational(-1))); }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a.c_ == b.c_); }

    UPoly scaled(const Rational& s) const { return wrap(fup::scale(c_, s)); }
    std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
        auto qr = fup::divmod(c_, b.c_);
        return {wrap(std::move(qr.first)), wrap(std::move(qr.second))};
    }
    UPoly monic() const { return wrap(fup::monic(c_)); }
    UPoly derivative() const { return wrap(fup::derivative(c_)); }
    Rational eval(const Rational& x) const { return fup::eval(c_, x); }

    // Scales to integer coefficients with content 1 and positive leading sign.
    UPoly primitive() const {
        if (c_.empty()) return {};
        BigInt den_lcm = 1, num_gcd = 0;
        for (const auto& c : c_) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
        }
        Rational s(den_lcm, num_gcd);
        if (c_.back().sign() < 0) s = -s;
        return scaled(s);
    }

    UPoly pow(long e) const {
        UPoly r(1), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    // p(a + s*t): affine change of the variable.
    UPoly compose_affine(const Rational& a, const Rational& s) const {
        UPoly r, x = from_coeffs({a, s});
        for (size_t i = c_.size(); i-- > 0;) r = r * x + UPoly(c_[i]);
        return r;
    }
    // t^deg * p(1/t)
    UPoly reversed() const {
        std::vector<Rational> r(c_.rbegin(), c_.rend());
        return from_coeffs(std::move(r));
    }

    int sign_variations() const {
        int v = 0, last = 0;
        for (const auto& c : c_) {
            int s = c.sign();
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    std::string str(const std::string& var = "t") const;

private:
    static UPoly wrap(std::vector<Rational> c) {
        UPoly p;
        p.c_ = std::move(c);
        return p;
    }
    std::vector<Rational> c_;
};

inline UPoly gcd(const UPoly& a, const UPoly& b) {
    return UPoly::from_coeffs(fup::gcd_monic(a.coeffs(), b.coeffs()));
}

inline UPoly squarefree_part(const UPoly& a) {
    return UPoly::from_coeffs(fup::squarefree_part(a.coeffs()));
}

inline Rational resultant(const UPoly& a, const UPoly& b) {
    return fup::resultant(a.coeffs(), b.coeffs());
}

}  // namespace sdphom
