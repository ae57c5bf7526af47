#include "sdphom/zerodim.hpp"

#include <algorithm>

namespace sdphom {

std::atomic<uint64_t> ParamAudit::created{0};
std::atomic<uint64_t> ParamAudit::verified{0};

namespace {

GPoly<Rational> to_gpoly(const MPoly& p, const MonomialOrder& ord) {
    GPoly<Rational> g;
    g.reserve(p.terms().size());
    for (const auto& t : p.terms()) g.push_back({t.m, t.c});
    std::sort(g.begin(), g.end(),
              [&](const GTerm<Rational>& a, const GTerm<Rational>& b) { return ord.cmp(a.m, b.m) > 0; });
    return g;
}

}  // namespace

std::vector<Rational> separating_candidate(size_t k, size_t attempt) {
    std::vector<Rational> l(k, Rational(0));
    if (attempt < k) {
        l[attempt] = Rational(1);
        return l;
    }
    attempt -= k;
    if (attempt == 0) {
        std::fill(l.begin(), l.end(), Rational(1));
    } else if (attempt == 1) {
        for (size_t i = 0; i < k; ++i) l[i] = Rational(static_cast<long>(i + 1));
    } else if (attempt == 2) {
        for (size_t i = 0; i < k; ++i) {
            long mag = static_cast<long>(i / 2 + 1);
            l[i] = Rational(i % 2 == 0 ? mag : -mag);
        }
    } else {
        long ratio = static_cast<long>(attempt);  // geometric tail
        Rational cur(1);
        for (size_t i = 0; i < k; ++i) {
            l[i] = cur;
            cur *= Rational(ratio);
        }
    }
    return l;
}

bool residuals_vanish(const ZeroDimParam& par, const std::vector<MPoly>& gens) {
    if (par.no_points()) return true;
    const UPoly& q = par.q;
    auto mod = [&](const UPoly& p) { return p.divmod(q).second; };
    for (const auto& p : gens) {
        uint32_t d = p.total_degree();
        UPoly acc;
        for (const auto& t : p.terms()) {
            UPoly term(t.c);
            uint32_t used = 0;
            for (const auto& [v, e] : t.m.exps()) {
                used += e;
                for (uint32_t r = 0; r < e; ++r) term = mod(term * par.qi.at(v));
            }
            for (uint32_t r = used; r < d; ++r) term = mod(term * par.q0);
            acc = acc + term;
        }
        if (!mod(acc).is_zero()) return false;
    }
    return true;
}

ZeroDimParam zero_dim_param(const std::vector<MPoly>& gens, const Deadline& dl) {
    if (gens.empty()) throw NotZeroDimensional("the zero ideal is not zero-dimensional");
    CtxPtr ctx = gens[0].ctx();
    const size_t k = ctx->size();
    if (k == 0) throw Error("parametrization requires at least one variable");
    MonomialOrder ord = MonomialOrder::grevlex(*ctx);

    std::vector<MPoly> cur = gens;
    std::optional<QuotientAlgebra<Rational>> alg;
    for (int round = 0;; ++round) {
        dl.check("zero-dimensional parametrization");
        if (round > 64) throw Error("radicalization failed to stabilize");
        std::vector<MPoly> gb = groebner(cur, ord, dl);
        if (gb.empty()) throw NotZeroDimensional("the zero ideal is not zero-dimensional");
        std::vector<GPoly<Rational>> ggb;
        for (const auto& g : gb) ggb.push_back(to_gpoly(g, ord));
        alg.emplace(ctx, ord, std::move(ggb), dl);
        if (alg->unit()) {
            ZeroDimParam par{ctx, std::vector<Rational>(k, Rational(0)), UPoly(1), UPoly(1),
                             std::vector<UPoly>(k)};
            ++ParamAudit::created;
            if (!residuals_vanish(par, gens)) throw Error("internal: residual check failed");
            ++ParamAudit::verified;
            return par;
        }
        if (!alg->zero_dimensional())
            throw NotZeroDimensional("ideal has positive dimension, no finite parametrization");
        // Radical pass: the cyclic minimal polynomial of each coordinate must
        // be squarefree; adjoining squarefree parts shrinks to the radical
        // without changing the variety.
        std::vector<MPoly> additions;
        for (VarId v = 0; v < k; ++v) {
            UPoly mu = UPoly::from_coeffs(alg->minpoly_of_var(v));
            UPoly s = squarefree_part(mu);
            if (s.deg() < mu.deg()) additions.push_back(MPoly::from_upoly(ctx, v, s));
        }
        if (additions.empty()) break;
        cur = std::move(gb);
        cur.insert(cur.end(), additions.begin(), additions.end());
    }

    for (size_t attempt = 0; attempt < k + 40; ++attempt) {
        dl.check("separating form search");
        std::vector<Rational> lambda = separating_candidate(k, attempt);
        auto rur = try_rur(*alg, lambda, dl);
        if (!rur) continue;
        ZeroDimParam par;
        par.ctx = ctx;
        par.lambda = std::move(lambda);
        par.q = UPoly::from_coeffs(rur->q);
        par.q0 = UPoly::from_coeffs(rur->q0);
        for (auto& g : rur->qi) par.qi.push_back(UPoly::from_coeffs(g));
        if (squarefree_part(par.q) != par.q.monic()) throw Error("internal: q is not squarefree");
        if (gcd(par.q, par.q0).deg() != 0) throw Error("internal: q and q0 share a factor");
        ++ParamAudit::created;
        if (!residuals_vanish(par, gens)) throw Error("internal: residual check failed");
        ++ParamAudit::verified;
        return par;
    }
    throw Error("no separating linear form found in the candidate ladder");
}

}  // namespace sdphom
