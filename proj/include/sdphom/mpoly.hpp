#pragma once

#include "sdphom/monomial.hpp"
#include "sdphom/upoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdphom {

struct Term {
    Monomial m;
    Rational c;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted descending
// under the context-wide grevlex order, which makes equality and printing
// canonical; Groebner computations re-sort under their own order.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    MPoly(CtxPtr ctx, const Rational& c) : ctx_(std::move(ctx)) {
        if (!c.is_zero()) terms_.push_back({Monomial(), c});
    }

    static MPoly variable(const CtxPtr& ctx, VarId v) {
        MPoly p(ctx);
        p.terms_.push_back({Monomial::var(v), Rational(1)});
        return p;
    }
    static MPoly variable(const CtxPtr& ctx, const std::string& name) {
        return variable(ctx, ctx->id(name));
    }
    static MPoly constant(const CtxPtr& ctx, const Rational& c) { return MPoly(ctx, c); }
    static MPoly from_terms(CtxPtr ctx, std::vector<Term> terms);

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == Rational(1); }
    size_t term_count() const { return terms_.size(); }

    Rational constant_term() const {
        for (const auto& t : terms_)
            if (t.m.is_one()) return t.c;
        return Rational(0);
    }
    Rational coeff(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.m == m) return t.c;
        return Rational(0);
    }
    uint32_t total_degree() const {
        uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m.total_degree());
        return d;
    }
    uint32_t degree_in(VarId v) const {
        uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m.deg_in(v));
        return d;
    }
    uint64_t support_mask() const {
        uint64_t m = 0;
        for (const auto& t : terms_) m |= t.m.support_mask();
        return m;
    }
    bool depends_on(VarId v) const { return (support_mask() & (uint64_t{1} << v)) != 0; }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }
    friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].m != b.terms_[i].m || !(a.terms_[i].c == b.terms_[i].c)) return false;
        return true;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly scaled(const Rational& s) const {
        if (s.is_zero()) return MPoly(ctx_);
        MPoly r = *this;
        for (auto& t : r.terms_) t.c *= s;
        return r;
    }
    MPoly mul_term(const Monomial& m, const Rational& c) const;
    MPoly pow(uint32_t e) const {
        MPoly r = constant(ctx_, 1), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    MPoly derivative(VarId v) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            uint32_t e = t.m.deg_in(v);
            if (e == 0) continue;
            Monomial m = t.m.divide(Monomial::var(v));
            out.push_back({std::move(m), t.c * Rational(static_cast<long>(e))});
        }
        return from_terms(ctx_, std::move(out));
    }

    // Substitutes a polynomial for one variable (Horner in that variable).
    MPoly substitute(VarId v, const MPoly& val) const {
        uint32_t d = degree_in(v);
        std::vector<MPoly> by_pow(d + 1, MPoly(ctx_));
        for (const auto& t : terms_) {
            uint32_t e = t.m.deg_in(v);
            Monomial rest = e ? t.m.divide(Monomial::var(v, e)) : t.m;
            by_pow[e] += from_terms(ctx_, {{rest, t.c}});
        }
        MPoly r = by_pow[d];
        for (size_t i = d; i-- > 0;) r = r * val + by_pow[i];
        return r;
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational r(0);
        for (const auto& t : terms_) {
            Rational v = t.c;
            for (auto& [var, e] : t.m.exps()) v *= point.at(var).pow(e);
            r += v;
        }
        return r;
    }

    // Rewrites over another context through an id map (see Monomial::rename).
    MPoly rename(const CtxPtr& new_ctx, const std::vector<VarId>& map) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back({t.m.rename(map), t.c});
        return from_terms(new_ctx, std::move(out));
    }

    // Integer coefficients, content 1, positive leading (grevlex) coefficient.
    MPoly primitive() const {
        if (terms_.empty()) return *this;
        BigInt den_lcm = 1, num_gcd = 0;
        for (const auto& t : terms_) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.den().get_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.num().get_mpz_t());
        }
        Rational s(den_lcm, num_gcd);
        if (terms_.front().c.sign() < 0) s = -s;
        return scaled(s);
    }

    // Exact division; nullopt when the divisor does not divide exactly.
    std::optional<MPoly> divide_exact(const MPoly& d) const;

    UPoly to_upoly(VarId v) const {
        std::vector<Rational> c(degree_in(v) + 1, Rational(0));
        for (const auto& t : terms_) {
            uint32_t e = t.m.deg_in(v);
            if (t.m != Monomial::var(v, e)) throw Error("polynomial is not univariate in " + ctx_->name(v));
            c[e] += t.c;
        }
        return UPoly::from_coeffs(std::move(c));
    }
    static MPoly from_upoly(const CtxPtr& ctx, VarId v, const UPoly& p) {
        std::vector<Term> out;
        for (int i = 0; i <= p.deg(); ++i)
            if (!p.coeff(i).is_zero()) out.push_back({Monomial::var(v, static_cast<uint32_t>(i)), p.coeff(i)});
        return from_terms(ctx, std::move(out));
    }

    std::string str() const;
    static MPoly parse(const CtxPtr& ctx, const std::string& text);

private:
    static MPoly merge(const MPoly& a, const MPoly& b, bool subtract);

    CtxPtr ctx_;
    std::vector<Term> terms_;
};

std::vector<MPoly> parse_polys(const CtxPtr& ctx, const std::vector<std::string>& texts);

}  // namespace sdphom
