#pragma once

#include "sdphom/upoly.hpp"

#include <string>
#include <vector>

namespace sdphom {

// Rational interval; a == b encodes an exact rational root.
struct IsolatingInterval {
    Rational a, b;
};

// Descartes bound on the number of roots of p in the open interval (a, b).
int descartes_bound(const UPoly& p, const Rational& a, const Rational& b);

// Disjoint isolating intervals, one per real root, ascending. The input is
// replaced by its squarefree part, so multiplicities collapse.
std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p);

// A real algebraic number: a squarefree primitive defining polynomial plus
// an interval containing exactly this one of its roots. Intervals refine on
// demand; refinement never changes the number, so it stays const.
class AlgebraicNumber {
public:
    AlgebraicNumber() : p_(UPoly::X()), a_(0), b_(0) {}
    static AlgebraicNumber rational(const Rational& r);
    static AlgebraicNumber root_of(const UPoly& squarefree, const IsolatingInterval& iv);

    const UPoly& minpoly() const { return p_; }
    Rational lo() const { return a_; }
    Rational hi() const { return b_; }
    bool exact() const { return a_ == b_; }
    Rational exact_value() const;

    void refine() const;  // one bisection step
    void refine_to_width(const Rational& w) const;
    int sign() const;
    double approx() const;
    std::string decimal(int digits) const;

private:
    UPoly p_;
    mutable Rational a_, b_;
};

// Exact sign of p at alpha.
int sign_at(const UPoly& p, const AlgebraicNumber& alpha);

// Three-way comparison: -1, 0, +1 as x <, ==, > y.
int compare(const AlgebraicNumber& x, const AlgebraicNumber& y);

inline bool operator<(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) < 0; }
inline bool operator==(const AlgebraicNumber& x, const AlgebraicNumber& y) { return compare(x, y) == 0; }

// Closed rational interval arithmetic, used to box values of polynomial
// expressions at algebraic points.
struct RatInterval {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
};

RatInterval interval_eval(const UPoly& p, const RatInterval& x);

// Box around num(alpha)/den(alpha) of width at most w; refines alpha until
// the denominator bounds away from zero. Requires den(alpha) != 0.
RatInterval ratio_interval(const UPoly& num, const UPoly& den, const AlgebraicNumber& alpha,
                           const Rational& w);

// The value num(alpha)/den(alpha) as an algebraic number in its own right;
// its defining polynomial comes from a resultant eliminating alpha.
AlgebraicNumber algebraic_ratio(const AlgebraicNumber& alpha, const UPoly& num, const UPoly& den);

}  // namespace sdphom
