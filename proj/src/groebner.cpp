#include "sdphom/ideal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sdphom {

namespace {

struct OrdDesc {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->cmp(a, b) > 0; }
};

using WorkPoly = std::map<Monomial, Rational, OrdDesc>;

std::vector<Term> sort_terms(const MPoly& p, const MonomialOrder& ord) {
    std::vector<Term> t = p.terms();
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
    return t;
}

MPoly primitive_mpoly(const CtxPtr& ctx, const std::vector<Term>& terms) {
    return MPoly::from_terms(ctx, terms).primitive();
}

class Engine {
public:
    Engine(const MonomialOrder& ord, Deadline dl) : ord_(ord), dl_(std::move(dl)) {}

    std::vector<MPoly> run(const std::vector<MPoly>& gens) {
        if (gens.empty()) return {};
        ctx_ = gens[0].ctx();
        for (const auto& g : gens) {
            MPoly p = g.primitive();
            if (!p.is_zero()) add_element(sort_terms(p, ord_));
        }
        while (!pairs_.empty()) {
            dl_.check("groebner");
            Pair pr = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            std::vector<Term> s = spoly(pr.i, pr.j);
            std::vector<Term> r = reduce_full(std::move(s));
            if (!r.empty()) add_element(normalize(std::move(r)));
        }
        return finalize();
    }

    std::vector<Term> reduce_full(std::vector<Term> p) {
        WorkPoly work{OrdDesc{&ord_}};
        for (auto& t : p) work.emplace(std::move(t.m), std::move(t.c));
        std::vector<Term> out;
        size_t steps = 0;
        while (!work.empty()) {
            if ((++steps & 0xff) == 0) dl_.check("reduction");
            auto it = work.begin();
            int g = find_reducer(it->first);
            if (g < 0) {
                out.push_back({it->first, it->second});
                work.erase(it);
                continue;
            }
            const auto& red = basis_[static_cast<size_t>(g)];
            Rational f = it->second / red.front().c;
            Monomial q = it->first.divide(red.front().m);
            work.erase(it);
            for (size_t k = 1; k < red.size(); ++k) {
                Monomial m = red[k].m * q;
                Rational c = red[k].c * f;
                auto [jt, ins] = work.emplace(std::move(m), -c);
                if (!ins) {
                    jt->second -= c;
                    if (jt->second.is_zero()) work.erase(jt);
                }
            }
        }
        return out;
    }

    const MonomialOrder& ord() const { return ord_; }

    void seed_only(const std::vector<MPoly>& basis) {
        // installs an existing (assumed Groebner) basis for plain reduction
        if (!basis.empty()) ctx_ = basis[0].ctx();
        for (const auto& g : basis)
            if (!g.is_zero()) {
                basis_.push_back(sort_terms(g, ord_));
                alive_.push_back(true);
            }
    }

    CtxPtr ctx_;

private:
    struct Pair {
        Monomial l;
        size_t i, j;
    };
    struct PairCmp {
        const MonomialOrder* ord;
        bool operator()(const Pair& a, const Pair& b) const {
            int c = ord->cmp(a.l, b.l);
            if (c != 0) return c < 0;  // smaller lcm first (normal strategy)
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        }
    };

    int find_reducer(const Monomial& m) const {
        for (size_t g = 0; g < basis_.size(); ++g)
            if (alive_[g] && basis_[g].front().m.divides(m)) return static_cast<int>(g);
        return -1;
    }

    std::vector<Term> spoly(size_t i, size_t j) {
        const auto& f = basis_[i];
        const auto& g = basis_[j];
        Monomial l = lcm(f.front().m, g.front().m);
        WorkPoly work{OrdDesc{&ord_}};
        Monomial uf = l.divide(f.front().m), ug = l.divide(g.front().m);
        Rational cf = f.front().c.inv(), cg = g.front().c.inv();
        for (const auto& t : f) {
            auto [it, ins] = work.emplace(t.m * uf, t.c * cf);
            if (!ins) it->second += t.c * cf;
        }
        for (const auto& t : g) {
            auto [it, ins] = work.emplace(t.m * ug, -(t.c * cg));
            if (!ins) it->second -= t.c * cg;
        }
        std::vector<Term> out;
        for (auto& [m, c] : work)
            if (!c.is_zero()) out.push_back({m, c});
        return out;
    }

    std::vector<Term> normalize(std::vector<Term> p) {
        MPoly q = primitive_mpoly(ctx_, p);
        return sort_terms(q, ord_);
    }

    // Gebauer-Moeller pair update on appending h to the basis.
    void add_element(std::vector<Term> h) {
        size_t t = basis_.size();
        const Monomial& lmh = h.front().m;

        struct Cand {
            Monomial l;
            size_t i;
            bool coprime;
        };
        std::vector<Cand> cands;
        for (size_t i = 0; i < t; ++i) {
            if (!alive_[i]) continue;
            const Monomial& lmi = basis_[i].front().m;
            cands.push_back({lcm(lmi, lmh), i, lmi.coprime(lmh)});
        }
        std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
            int c = ord_.cmp(a.l, b.l);
            return c != 0 ? c < 0 : a.i < b.i;
        });
        // keep a candidate only if no earlier kept lcm divides it (M and F
        // criteria); coprime pairs still act as blockers before being dropped
        std::vector<Cand> kept;
        for (const auto& c : cands) {
            bool blocked = false;
            for (const auto& k : kept)
                if (k.l.divides(c.l)) {
                    blocked = true;
                    break;
                }
            if (!blocked) kept.push_back(c);
        }
        // B criterion on the existing queue
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            const Monomial& l = it->l;
            if (lmh.divides(l) && lcm(basis_[it->i].front().m, lmh) != l &&
                lcm(basis_[it->j].front().m, lmh) != l)
                it = pairs_.erase(it);
            else
                ++it;
        }
        for (const auto& c : kept)
            if (!c.coprime) pairs_.insert({c.l, c.i, t});
        for (size_t i = 0; i < t; ++i)
            if (alive_[i] && lmh.divides(basis_[i].front().m)) alive_[i] = false;
        basis_.push_back(std::move(h));
        alive_.push_back(true);
    }

    std::vector<MPoly> finalize() {
        std::vector<size_t> live;
        for (size_t i = 0; i < basis_.size(); ++i)
            if (alive_[i]) live.push_back(i);
        // tail-reduce each element against the others; leading monomials are
        // already pairwise indivisible so they stay put
        std::vector<std::pair<Monomial, MPoly>> out;
        for (size_t idx : live) {
            alive_[idx] = false;
            std::vector<Term> r = reduce_full(basis_[idx]);
            alive_[idx] = true;
            if (r.empty()) continue;  // fully redundant generator
            Rational inv = r.front().c.inv();
            Monomial lm = r.front().m;
            for (auto& t : r) t.c *= inv;
            out.push_back({std::move(lm), MPoly::from_terms(ctx_, std::move(r))});
        }
        std::sort(out.begin(), out.end(),
                  [&](const auto& a, const auto& b) { return ord_.cmp(a.first, b.first) > 0; });
        std::vector<MPoly> polys;
        for (auto& [lm, p] : out) polys.push_back(std::move(p));
        return polys;
    }

    const MonomialOrder& ord_;
    Deadline dl_;
    std::vector<std::vector<Term>> basis_;
    std::vector<bool> alive_;
    std::set<Pair, PairCmp> pairs_{PairCmp{&ord_}};
};

std::vector<VarId> identity_map(size_t n) {
    std::vector<VarId> m(n);
    for (size_t i = 0; i < n; ++i) m[i] = static_cast<VarId>(i);
    return m;
}

// Appends a fresh tag variable, returning the extended context and the id.
std::pair<CtxPtr, VarId> extend_ctx(const CtxPtr& ctx, const std::string& base) {
    std::string name = base;
    int suffix = 0;
    while (ctx->has(name)) name = base + std::to_string(suffix++);
    auto names = ctx->names();
    names.push_back(name);
    return {make_ctx(std::move(names)), static_cast<VarId>(ctx->size())};
}

MPoly lift(const MPoly& p, const CtxPtr& big) {
    return p.rename(big, identity_map(p.ctx()->size()));
}

std::vector<MPoly> drop_tag(const std::vector<MPoly>& polys, const CtxPtr& small, VarId tag) {
    std::vector<VarId> back = identity_map(small->size() + 1);
    back[tag] = Monomial::NOT_KEPT;
    std::vector<MPoly> out;
    for (const auto& p : polys)
        if (!p.depends_on(tag)) out.push_back(p.rename(small, back));
    return out;
}

}  // namespace

std::vector<MPoly> groebner(const std::vector<MPoly>& gens, const MonomialOrder& ord, const Deadline& dl) {
    Engine e(ord, dl);
    return e.run(gens);
}

MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis, const MonomialOrder& ord) {
    if (basis.empty()) return p;
    Engine e(ord, Deadline::unlimited());
    e.seed_only(basis);
    std::vector<Term> t = sort_terms(p, ord);
    return MPoly::from_terms(p.ctx(), e.reduce_full(std::move(t)));
}

bool ideal_contains(const std::vector<MPoly>& groebner_basis, const MPoly& p, const MonomialOrder& ord) {
    return normal_form(p, groebner_basis, ord).is_zero();
}

bool ideal_equal(const std::vector<MPoly>& gens_a, const std::vector<MPoly>& gens_b, const Deadline& dl) {
    if (gens_a.empty() && gens_b.empty()) return true;
    const CtxPtr& ctx = gens_a.empty() ? gens_b[0].ctx() : gens_a[0].ctx();
    MonomialOrder ord = MonomialOrder::grevlex(*ctx);
    return groebner(gens_a, ord, dl) == groebner(gens_b, ord, dl);
}

std::vector<MPoly> eliminate(const std::vector<MPoly>& gens, const std::vector<VarId>& front,
                             const Deadline& dl) {
    if (gens.empty()) return {};
    const CtxPtr& ctx = gens[0].ctx();
    MonomialOrder ord = MonomialOrder::elimination(*ctx, front);
    uint64_t front_mask = 0;
    for (VarId v : front) front_mask |= (uint64_t{1} << v);
    std::vector<MPoly> out;
    for (const auto& g : groebner(gens, ord, dl))
        if ((g.support_mask() & front_mask) == 0) out.push_back(g);
    return out;
}

std::vector<MPoly> saturate(const std::vector<MPoly>& gens, const MPoly& h, const Deadline& dl) {
    if (gens.empty()) return {};
    const CtxPtr& ctx = gens[0].ctx();
    if (h.is_zero()) return {MPoly::constant(ctx, 1)};
    auto [big, w] = extend_ctx(ctx, "_w");
    std::vector<MPoly> lifted;
    for (const auto& g : gens) lifted.push_back(lift(g, big));
    lifted.push_back(MPoly::constant(big, 1) - MPoly::variable(big, w) * lift(h, big));
    MonomialOrder ord = MonomialOrder::elimination(*big, {w});
    std::vector<MPoly> gb = groebner(lifted, ord, dl);
    return drop_tag(gb, ctx, w);
}

std::vector<MPoly> saturate_by_ideal(const std::vector<MPoly>& gens, const std::vector<MPoly>& hs,
                                     const Deadline& dl) {
    if (gens.empty()) return {};
    const CtxPtr& ctx = gens[0].ctx();
    std::vector<MPoly> distinct;
    for (const auto& h : hs) {
        MPoly p = h.primitive();
        if (p.is_zero()) continue;
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
    }
    if (distinct.empty()) return {MPoly::constant(ctx, 1)};  // saturation by the zero ideal
    MonomialOrder ord = MonomialOrder::grevlex(*ctx);
    std::vector<MPoly> base = groebner(gens, ord, dl);
    std::vector<MPoly> acc;
    bool have_acc = false;
    for (const auto& h : distinct) {
        std::vector<MPoly> sat = groebner(saturate(gens, h, dl), ord, dl);
        if (sat == base) return base;  // one no-op saturation pins the intersection
        acc = have_acc ? intersect_ideals(acc, sat, dl) : std::move(sat);
        have_acc = true;
    }
    return groebner(acc, ord, dl);
}

std::vector<MPoly> intersect_ideals(const std::vector<MPoly>& a, const std::vector<MPoly>& b,
                                    const Deadline& dl) {
    if (a.empty()) return a;  // zero ideal absorbs the intersection
    if (b.empty()) return b;
    const CtxPtr& ctx = a[0].ctx();
    if (basis_is_unit(a)) return b;
    if (basis_is_unit(b)) return a;
    auto [big, tag] = extend_ctx(ctx, "_t");
    MPoly w = MPoly::variable(big, tag);
    MPoly one_minus_w = MPoly::constant(big, 1) - w;
    std::vector<MPoly> lifted;
    for (const auto& g : a) lifted.push_back(w * lift(g, big));
    for (const auto& g : b) lifted.push_back(one_minus_w * lift(g, big));
    MonomialOrder ord = MonomialOrder::elimination(*big, {tag});
    return drop_tag(groebner(lifted, ord, dl), ctx, tag);
}

std::optional<int> dimension(const std::vector<MPoly>& gens, const Deadline& dl) {
    if (gens.empty()) return 0;
    const CtxPtr& ctx = gens[0].ctx();
    size_t n = ctx->size();
    if (n > 24) throw Error("dimension: too many variables");
    std::vector<MPoly> gb = groebner(gens, MonomialOrder::grevlex(*ctx), dl);
    if (basis_is_unit(gb)) return std::nullopt;
    if (gb.empty()) return static_cast<int>(n);
    std::vector<uint64_t> lms;
    MonomialOrder ord = MonomialOrder::grevlex(*ctx);
    for (const auto& g : gb) {
        std::vector<Term> t = sort_terms(g, ord);
        lms.push_back(t.front().m.support_mask());
    }
    int best = 0;
    for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
        bool ok = true;
        for (uint64_t lm : lms)
            if ((lm & ~s) == 0) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, static_cast<int>(__builtin_popcountll(s)));
    }
    return best;
}

RestrictedIdeal restrict_to_vars(const CtxPtr& ctx, const std::vector<MPoly>& gens,
                                 const std::vector<VarId>& keep) {
    std::vector<std::string> names;
    std::vector<VarId> map(ctx->size(), Monomial::NOT_KEPT);
    for (size_t i = 0; i < keep.size(); ++i) {
        names.push_back(ctx->name(keep[i]));
        map[keep[i]] = static_cast<VarId>(i);
    }
    RestrictedIdeal out;
    out.ctx = make_ctx(std::move(names));
    out.kept_ids = keep;
    for (const auto& g : gens) out.gens.push_back(g.rename(out.ctx, map));
    return out;
}

}  // namespace sdphom
