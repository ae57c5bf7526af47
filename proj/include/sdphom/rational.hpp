#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdphom {

using BigInt = mpz_class;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class TimeoutError : public Error {
public:
    explicit TimeoutError(const std::string& what) : Error(what) {}
};

inline BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Exact rational scalar, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design
    explicit Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "p", "-p", "p/q" with optional whitespace padding.
    static Rational parse(const std::string& s) {
        std::string t;
        for (char c : s)
            if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
        if (t.empty()) throw ParseError("empty rational literal");
        mpq_class v;
        if (v.set_str(t, 10) != 0) throw ParseError("bad rational literal: '" + s + "'");
        if (v.get_den() == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
        v.canonicalize();
        Rational r;
        r.v_ = v;
        return r;
    }

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return wrap(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return wrap(::abs(v_)); }
    Rational inv() const {
        if (is_zero()) throw Error("inverse of zero");
        return wrap(1 / v_);
    }
    Rational pow(long e) const {
        if (e < 0) return inv().pow(-e);
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return wrap(r);
    }

    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    // Decimal expansion truncated toward zero, for display only.
    std::string decimal(int digits) const {
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
        BigInt scaled = num() * scale / den();
        bool neg = scaled < 0;
        std::string s = BigInt(::abs(scaled)).get_str();
        while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
        s.insert(s.size() - static_cast<size_t>(digits), ".");
        return (neg ? "-" : "") + s;
    }

private:
    static Rational wrap(mpq_class v) {
        Rational r;
        r.v_ = std::move(v);
        return r;
    }
    mpq_class v_;
};

inline Rational gcd(const Rational& a, const Rational& b) {
    // gcd over Q normalizes generators: gcd(p/q, r/s) = gcd(p,r)/lcm(q,s).
    BigInt gn, lcm_d;
    mpz_gcd(gn.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(lcm_d.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    if (gn == 0) return Rational(0);
    return Rational(gn, lcm_d);
}

}  // namespace sdphom
