#include "sdphom/onedim.hpp"

#include "sdphom/quotient.hpp"
#include "sdphom/ratfunc.hpp"
#include "sdphom/zerodim.hpp"

#include <algorithm>
#include <map>

namespace sdphom {

namespace {

UPoly upoly_lcm(const UPoly& a, const UPoly& b) {
    UPoly g = gcd(a, b);
    return (a * b).divmod(g).first.monic();
}

// View of a polynomial in the restricted context as an element of
// Q(u)[coords]: the parameter exponent folds into the coefficient.
GPoly<RatFunc> to_function_field(const MPoly& p, const std::vector<VarId>& rename_map,
                                 VarId param_id, const MonomialOrder& ord) {
    std::map<Monomial, UPoly> acc;  // container key order; sorted properly below
    for (const auto& t : p.terms()) {
        uint32_t eu = t.m.deg_in(param_id);
        Monomial rest = eu ? t.m.divide(Monomial::var(param_id, eu)) : t.m;
        Monomial mx = rest.rename(rename_map);
        std::vector<Rational> c(eu + 1, Rational(0));
        c[eu] = t.c;
        acc[mx] = acc[mx] + UPoly::from_coeffs(std::move(c));
    }
    GPoly<RatFunc> out;
    for (auto& [m, c] : acc)
        if (!c.is_zero()) out.push_back({m, RatFunc(c)});
    std::sort(out.begin(), out.end(),
              [&](const GTerm<RatFunc>& a, const GTerm<RatFunc>& b) { return ord.cmp(a.m, b.m) > 0; });
    return out;
}

// Squarefree minimal polynomial of coordinate v over Q(u), cleared of
// denominators, as a polynomial in the restricted context.
MPoly adjoin_poly(const std::vector<RatFunc>& s, VarId v_restricted, VarId param_id,
                  const CtxPtr& rctx) {
    UPoly den(1);
    for (const auto& c : s) den = upoly_lcm(den, c.den());
    std::vector<Term> terms;
    for (size_t j = 0; j < s.size(); ++j) {
        UPoly n = s[j].num() * den.divmod(s[j].den()).first;
        for (int k = 0; k <= n.deg(); ++k) {
            if (n.coeff(k).is_zero()) continue;
            terms.push_back({Monomial::var(v_restricted, static_cast<uint32_t>(j)) *
                                 Monomial::var(param_id, static_cast<uint32_t>(k)),
                             n.coeff(k)});
        }
    }
    return MPoly::from_terms(rctx, std::move(terms));
}

std::vector<RatFunc> mulmod(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b,
                            const std::vector<RatFunc>& q) {
    return fup::divmod(fup::mul(a, b), q).second;
}

std::vector<RatFunc> powmod(std::vector<RatFunc> b, uint32_t e, const std::vector<RatFunc>& q) {
    std::vector<RatFunc> r{RatFunc(1)};
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mulmod(r, b, q);
        if (e > 1) b = mulmod(b, b, q);
    }
    return r;
}

// Exact residual over Q(u)[t]: gens with coordinates replaced by qi/q0 must
// vanish modulo q after clearing the q0 powers.
bool curve_residuals_vanish(const std::vector<MPoly>& gens, const std::vector<VarId>& coord_ids,
                            VarId param_id, const std::vector<RatFunc>& q,
                            const std::vector<RatFunc>& q0,
                            const std::vector<std::vector<RatFunc>>& qi) {
    for (const auto& g : gens) {
        uint32_t d = 0;
        for (const auto& t : g.terms()) {
            uint32_t e = 0;
            for (size_t i = 0; i < coord_ids.size(); ++i) e += t.m.deg_in(coord_ids[i]);
            d = std::max(d, e);
        }
        std::vector<RatFunc> acc;
        for (const auto& t : g.terms()) {
            uint32_t eu = t.m.deg_in(param_id), used = 0;
            std::vector<Rational> uc(eu + 1, Rational(0));
            uc[eu] = t.c;
            std::vector<RatFunc> cur{RatFunc(UPoly::from_coeffs(std::move(uc)))};
            for (size_t i = 0; i < coord_ids.size(); ++i) {
                uint32_t e = t.m.deg_in(coord_ids[i]);
                if (e == 0) continue;
                cur = mulmod(cur, powmod(qi[i], e, q), q);
                used += e;
            }
            cur = mulmod(cur, powmod(q0, d - used, q), q);
            acc = fup::add(acc, cur);
        }
        if (!fup::divmod(acc, q).second.empty()) return false;
    }
    return true;
}

MPoly field_poly_to_bivariate(const std::vector<RatFunc>& p, const UPoly& den, const CtxPtr& octx,
                              VarId t_id, VarId u_id) {
    std::vector<Term> terms;
    for (size_t j = 0; j < p.size(); ++j) {
        if (p[j].is_zero()) continue;
        UPoly n = p[j].num() * den.divmod(p[j].den()).first;
        for (int k = 0; k <= n.deg(); ++k) {
            if (n.coeff(k).is_zero()) continue;
            terms.push_back({Monomial::var(t_id, static_cast<uint32_t>(j)) *
                                 Monomial::var(u_id, static_cast<uint32_t>(k)),
                             n.coeff(k)});
        }
    }
    return MPoly::from_terms(octx, std::move(terms));
}

// Rational scalar taking p to its primitive form (integer coefficients,
// content 1, positive grevlex-leading coefficient).
Rational primitive_scalar(const MPoly& p) {
    if (p.is_zero()) return Rational(1);
    BigInt den_lcm = 1, num_gcd = 0;
    for (const auto& t : p.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.num().get_mpz_t());
    }
    Rational s(den_lcm, num_gcd);
    return p.terms().front().c.sign() < 0 ? -s : s;
}

}  // namespace

OneDimParam one_dim_param(const std::vector<MPoly>& gens, const std::vector<std::string>& keep,
                          const Deadline& dl) {
    if (gens.empty()) throw NotCurve("no generators");
    CtxPtr ctx = gens.front().ctx();
    if (keep.empty()) throw NotCurve("no kept variables");

    std::string param = ctx->has("eps") ? "eps" : keep.back();
    std::vector<std::string> coords;
    for (VarId v = 0; v < ctx->size(); ++v) {  // context order keeps qi deterministic
        const std::string& n = ctx->name(v);
        if (n == param) continue;
        if (std::find(keep.begin(), keep.end(), n) != keep.end()) coords.push_back(n);
    }
    if (coords.empty()) throw NotCurve("no coordinate variables besides the parameter");

    std::vector<VarId> keep_ids;
    for (VarId v = 0; v < ctx->size(); ++v) {
        const std::string& n = ctx->name(v);
        if (n == param || std::find(coords.begin(), coords.end(), n) != coords.end())
            keep_ids.push_back(v);
    }
    std::vector<VarId> front;
    for (VarId v = 0; v < ctx->size(); ++v)
        if (std::find(keep_ids.begin(), keep_ids.end(), v) == keep_ids.end()) front.push_back(v);

    std::vector<MPoly> proj =
        front.empty() ? groebner(gens, MonomialOrder::grevlex(*ctx), dl) : eliminate(gens, front, dl);
    RestrictedIdeal R = restrict_to_vars(ctx, proj, keep_ids);

    OneDimParam out;
    out.param_var = param;
    out.coords = coords;
    out.basis_ctx = R.ctx;
    out.basis = R.gens;
    out.out_ctx = make_ctx({"t", "u"});

    auto dim = dimension(R.gens, dl);
    if (!dim || *dim != 1) throw NotCurve("projected ideal does not define a curve");

    VarId param_id = R.ctx->id(param);
    std::vector<VarId> coord_ids;
    for (const auto& n : coords) coord_ids.push_back(R.ctx->id(n));

    CtxPtr ctx_x = make_ctx(coords);
    MonomialOrder ord_x = MonomialOrder::grevlex(*ctx_x);
    std::vector<VarId> rename_map(R.ctx->size(), Monomial::NOT_KEPT);
    for (size_t i = 0; i < coord_ids.size(); ++i) rename_map[coord_ids[i]] = static_cast<VarId>(i);

    const size_t k = coords.size();
    VarId t_id = out.out_ctx->id("t"), u_id = out.out_ctx->id("u");

    // A basis under the block order with coordinates above the parameter is
    // also a basis over Q(u); radicalize the generic fiber, then hunt for a
    // separating form exactly as in the zero-dimensional case.
    MonomialOrder block = MonomialOrder::elimination(*R.ctx, coord_ids);
    std::vector<MPoly> cur = R.gens;
    for (int round = 0;; ++round) {
        if (round > 64) throw Error("radical extraction did not stabilize");
        std::vector<MPoly> gb = groebner(cur, block, dl);
        std::vector<GPoly<RatFunc>> gfs;
        for (const auto& g : gb) gfs.push_back(to_function_field(g, rename_map, param_id, ord_x));
        for (const auto& g : gfs) {
            if (g.front().m.is_one()) {
                // The generic fiber is empty: every component is vertical.
                out.lambda.assign(k, Rational(0));
                out.q = MPoly::constant(out.out_ctx, 1);
                out.q0 = MPoly::constant(out.out_ctx, 1);
                out.qi.assign(k, MPoly(out.out_ctx));
                return out;
            }
        }
        QuotientAlgebra<RatFunc> alg(ctx_x, ord_x, gfs, dl);
        if (!alg.zero_dimensional())
            throw NotCurve("projection is not finite over the parameter line");

        std::vector<MPoly> additions;
        for (VarId v = 0; v < ctx_x->size(); ++v) {
            auto mu = alg.minpoly_of_var(v);
            auto s = fup::squarefree_part(mu);
            if (fup::deg(s) < fup::deg(mu))
                additions.push_back(adjoin_poly(s, coord_ids[v], param_id, R.ctx));
        }
        if (!additions.empty()) {
            for (auto& a : additions) cur.push_back(std::move(a));
            continue;
        }

        for (size_t attempt = 0; attempt < k + 40; ++attempt) {
            std::vector<Rational> lambda = separating_candidate(k, attempt);
            auto rur = try_rur(alg, lambda, dl);
            if (!rur) continue;
            if (fup::deg(fup::gcd_monic(rur->q, rur->q0)) != 0)
                throw Error("internal: curve parametrization with non-coprime q, q0");

            UPoly den(1);
            for (const auto& c : rur->q) den = upoly_lcm(den, c.den());
            for (const auto& c : rur->q0) den = upoly_lcm(den, c.den());
            for (const auto& g : rur->qi)
                for (const auto& c : g) den = upoly_lcm(den, c.den());

            out.lambda = std::move(lambda);
            out.q = field_poly_to_bivariate(rur->q, den, out.out_ctx, t_id, u_id);
            out.q0 = field_poly_to_bivariate(rur->q0, den, out.out_ctx, t_id, u_id);
            out.qi.clear();
            for (const auto& g : rur->qi)
                out.qi.push_back(field_poly_to_bivariate(g, den, out.out_ctx, t_id, u_id));

            Rational s = primitive_scalar(out.q);
            out.q = out.q.scaled(s);
            out.q0 = out.q0.scaled(s);
            for (auto& g : out.qi) g = g.scaled(s);

            ++ParamAudit::created;
            if (!curve_residuals_vanish(out.basis, coord_ids, param_id, rur->q, rur->q0, rur->qi))
                throw Error("internal: curve parametrization failed the residual check");
            ++ParamAudit::verified;
            return out;
        }
        throw Error("no separating form found for the curve fiber");
    }
}

}  // namespace sdphom
