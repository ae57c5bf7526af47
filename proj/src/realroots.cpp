#include "sdphom/realroots.hpp"

#include "sdphom/ratfunc.hpp"

#include <algorithm>

namespace sdphom {

namespace {

constexpr int kRefineGuard = 100000;

// Descartes bound for roots of g in (0,1): sign variations of
// (1+t)^deg * g(1/(1+t)). Exact when the bound is 0 or 1.
int count01(const UPoly& g) {
    return g.reversed().compose_affine(Rational(1), Rational(1)).sign_variations();
}

// A split point strictly inside (a, b) that is not a root, so interval
// endpoints never coincide with roots anywhere in the recursion and every
// reported interval brackets its root with a strict sign change. The ladder
// walks distinct ratios in (1/3, 1/2), more candidates than p has roots.
Rational split_point(const UPoly& p, const Rational& a, const Rational& b) {
    Rational m = (a + b) / 2;
    if (!p.eval(m).is_zero()) return m;
    for (long j = 1;; ++j) {
        m = a + (b - a) * Rational(j, 2 * j + 1);
        if (!p.eval(m).is_zero()) return m;
    }
}

void isolate_rec(const UPoly& p, const Rational& a, const Rational& b,
                 std::vector<IsolatingInterval>& out) {
    int v = descartes_bound(p, a, b);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({a, b});
        return;
    }
    Rational m = split_point(p, a, b);
    isolate_rec(p, a, m, out);
    isolate_rec(p, m, b, out);
}

}  // namespace

int descartes_bound(const UPoly& p, const Rational& a, const Rational& b) {
    if (!(a < b)) throw Error("descartes_bound needs a < b");
    return count01(p.compose_affine(a, b - a));
}

std::vector<IsolatingInterval> isolate_real_roots(const UPoly& input) {
    UPoly p = squarefree_part(input);
    std::vector<IsolatingInterval> out;
    if (p.deg() <= 0) return out;
    Rational bound(1);
    for (int i = 0; i < p.deg(); ++i) {
        Rational q = (p.coeff(i) / p.lc()).abs();
        if (q > bound) bound = q;
    }
    bound += 1;  // every real root lies strictly inside (-bound, bound)
    isolate_rec(p, -bound, bound, out);
    std::sort(out.begin(), out.end(),
              [](const IsolatingInterval& x, const IsolatingInterval& y) { return x.a < y.a; });
    return out;
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& r) {
    AlgebraicNumber x;
    x.p_ = UPoly::from_coeffs({-r, Rational(1)}).primitive();
    x.a_ = x.b_ = r;
    return x;
}

AlgebraicNumber AlgebraicNumber::root_of(const UPoly& squarefree, const IsolatingInterval& iv) {
    AlgebraicNumber x;
    x.p_ = sdphom::squarefree_part(squarefree).primitive();
    x.a_ = iv.a;
    x.b_ = iv.b;
    if (x.exact()) {
        if (!x.p_.eval(x.a_).is_zero()) throw Error("exact interval does not hit a root");
    } else if (x.p_.eval(x.a_).sign() * x.p_.eval(x.b_).sign() >= 0) {
        throw Error("interval endpoints do not bracket a sign change");
    }
    return x;
}

Rational AlgebraicNumber::exact_value() const {
    if (!exact()) throw Error("algebraic number not known to be rational");
    return a_;
}

void AlgebraicNumber::refine() const {
    if (exact()) return;
    Rational m = (a_ + b_) / 2;
    Rational pm = p_.eval(m);
    if (pm.is_zero()) {
        a_ = b_ = m;
        return;
    }
    if (p_.eval(a_).sign() * pm.sign() < 0)
        b_ = m;
    else
        a_ = m;
}

void AlgebraicNumber::refine_to_width(const Rational& w) const {
    for (int i = 0; i < kRefineGuard && !exact() && b_ - a_ > w; ++i) refine();
    if (!exact() && b_ - a_ > w) throw Error("interval refinement stalled");
}

int AlgebraicNumber::sign() const {
    for (int i = 0; i < kRefineGuard; ++i) {
        if (exact()) return a_.sign();
        if (a_.sign() >= 0) return 1;
        if (b_.sign() <= 0) return -1;
        // 0 sits inside; the interval holds exactly one root of p_, so if 0
        // is a root it is this number.
        if (p_.eval(Rational(0)).is_zero()) return 0;
        refine();
    }
    throw Error("sign refinement stalled");
}

double AlgebraicNumber::approx() const {
    refine_to_width(Rational(BigInt(1), BigInt("100000000000000000")));
    return ((a_ + b_) / 2).to_double();
}

std::string AlgebraicNumber::decimal(int digits) const {
    Rational w = Rational(1) / Rational(10).pow(digits + 3);
    refine_to_width(w);
    return ((a_ + b_) / 2).decimal(digits);
}

int sign_at(const UPoly& p, const AlgebraicNumber& alpha) {
    if (p.is_zero()) return 0;
    if (alpha.exact()) return p.eval(alpha.exact_value()).sign();
    UPoly g = gcd(alpha.minpoly(), p);
    if (g.deg() > 0) {
        // A sign change of g across the interval pins a root of g there; the
        // interval holds exactly one root of the defining polynomial and
        // every root of g is one of those, so that root must be alpha.
        if (g.eval(alpha.lo()).sign() * g.eval(alpha.hi()).sign() < 0) return 0;
    }
    for (int i = 0; i < kRefineGuard; ++i) {
        if (alpha.exact()) return p.eval(alpha.exact_value()).sign();
        if (descartes_bound(p, alpha.lo(), alpha.hi()) == 0) {
            // p has constant sign across the interval interior.
            int s = p.eval((alpha.lo() + alpha.hi()) / 2).sign();
            if (s == 0) throw Error("interior evaluation hit a root unexpectedly");
            return s;
        }
        alpha.refine();
    }
    throw Error("sign_at refinement stalled");
}

namespace {

bool overlaps(const Rational& alo, const Rational& ahi, const Rational& blo, const Rational& bhi) {
    return !(ahi < blo || bhi < alo);
}

// Index of the isolating interval of g that contains x; assumes g(x) == 0.
size_t locate_root(const std::vector<IsolatingInterval>& js, const AlgebraicNumber& x) {
    for (int round = 0; round < kRefineGuard; ++round) {
        size_t hit = js.size();
        int count = 0;
        for (size_t i = 0; i < js.size(); ++i) {
            if (overlaps(x.lo(), x.hi(), js[i].a, js[i].b)) {
                hit = i;
                ++count;
            }
        }
        if (count == 1) return hit;
        if (count == 0) throw Error("root fell outside every isolating interval");
        x.refine();
    }
    throw Error("root location stalled");
}

}  // namespace

int compare(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (x.exact() && y.exact()) {
        Rational d = x.exact_value() - y.exact_value();
        return d.sign();
    }
    UPoly g = gcd(x.minpoly(), y.minpoly());
    if (g.deg() > 0 && sign_at(g, x) == 0 && sign_at(g, y) == 0) {
        // Both are roots of the common factor; equality reduces to landing in
        // the same isolating interval of it.
        auto js = isolate_real_roots(g);
        size_t ix = locate_root(js, x), iy = locate_root(js, y);
        if (ix == iy) return 0;
        return ix < iy ? -1 : 1;
    }
    for (int i = 0; i < kRefineGuard; ++i) {
        if (!overlaps(x.lo(), x.hi(), y.lo(), y.hi())) return x.hi() < y.lo() ? -1 : 1;
        x.refine();
        y.refine();
    }
    throw Error("comparison refinement stalled");
}

namespace {

RatInterval ia_add(const RatInterval& x, const RatInterval& y) { return {x.lo + y.lo, x.hi + y.hi}; }

RatInterval ia_mul(const RatInterval& x, const RatInterval& y) {
    Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    RatInterval r{c[0], c[0]};
    for (int i = 1; i < 4; ++i) {
        if (c[i] < r.lo) r.lo = c[i];
        if (c[i] > r.hi) r.hi = c[i];
    }
    return r;
}

RatInterval ia_div(const RatInterval& x, const RatInterval& y) {
    if (y.lo.sign() * y.hi.sign() <= 0) throw Error("interval division by interval containing zero");
    return ia_mul(x, {y.hi.inv(), y.lo.inv()});
}

}  // namespace

RatInterval interval_eval(const UPoly& p, const RatInterval& x) {
    RatInterval r{Rational(0), Rational(0)};
    for (int i = p.deg(); i >= 0; --i) {
        Rational c = p.coeff(i);
        r = ia_add(ia_mul(r, x), {c, c});
    }
    return r;
}

RatInterval ratio_interval(const UPoly& num, const UPoly& den, const AlgebraicNumber& alpha,
                           const Rational& w) {
    for (int i = 0; i < kRefineGuard; ++i) {
        RatInterval ia{alpha.lo(), alpha.hi()};
        RatInterval d = interval_eval(den, ia);
        if (d.lo.sign() * d.hi.sign() > 0) {
            RatInterval r = ia_div(interval_eval(num, ia), d);
            if (r.width() <= w) return r;
        }
        if (alpha.exact()) {
            Rational v = num.eval(alpha.exact_value()) / den.eval(alpha.exact_value());
            return {v, v};
        }
        alpha.refine();
    }
    throw Error("ratio interval refinement stalled");
}

AlgebraicNumber algebraic_ratio(const AlgebraicNumber& alpha, const UPoly& num, const UPoly& den) {
    if (den.is_zero()) throw Error("algebraic ratio with zero denominator");
    if (alpha.exact()) {
        Rational t = alpha.exact_value();
        Rational dv = den.eval(t);
        if (dv.is_zero()) throw Error("denominator vanishes at the point");
        return AlgebraicNumber::rational(num.eval(t) / dv);
    }
    UPoly q = alpha.minpoly();
    // Strip any factor shared by numerator and denominator out of q so the
    // resultant below cannot vanish identically; such a factor cannot have
    // alpha as a root since the denominator does not vanish there.
    UPoly shared = gcd(gcd(num, den), q);
    if (shared.deg() > 0) q = q.divmod(shared).first;

    // Eliminate t from { q(t) = 0, den(t)*s - num(t) = 0 }: the value
    // num(alpha)/den(alpha) is a root of res_t, a polynomial in s alone.
    std::vector<RatFunc> qc;
    for (int i = 0; i <= q.deg(); ++i) qc.push_back(RatFunc(q.coeff(i)));
    std::vector<RatFunc> lc;
    int dmax = std::max(num.deg(), den.deg());
    for (int i = 0; i <= dmax; ++i)
        lc.push_back(RatFunc(UPoly::from_coeffs({-num.coeff(i), den.coeff(i)})));
    fup::trim(lc);
    RatFunc res = fup::resultant(qc, lc);
    if (!res.is_polynomial()) throw Error("resultant of polynomial inputs came out fractional");
    UPoly m = squarefree_part(res.num()).primitive();
    if (m.deg() <= 0) throw Error("value elimination produced a constant");

    auto roots = isolate_real_roots(m);
    Rational w(1, 4);
    for (int round = 0; round < kRefineGuard; ++round) {
        RatInterval box = ratio_interval(num, den, alpha, w);
        size_t hit = roots.size();
        int count = 0;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (overlaps(box.lo, box.hi, roots[i].a, roots[i].b)) {
                hit = i;
                ++count;
            }
        }
        if (count == 1) return AlgebraicNumber::root_of(m, roots[hit]);
        if (count == 0) throw Error("value box missed every root of its defining polynomial");
        w = w / 16;
    }
    throw Error("value identification stalled");
}

}  // namespace sdphom
