#include "sdphom/solver.hpp"

#include "sdphom/ideal.hpp"

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <chrono>
#include <exception>
#include <utility>

namespace sdphom {

namespace {

using nlohmann::json;

SolveReport solve_impl(const Instance& inst, const SolveConfig& cfg, bool diagnose);

std::vector<std::vector<size_t>> index_subsets(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    if (k > n) return out;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<MPoly> minors(const PolyMatrix& mat, size_t k) {
    std::vector<MPoly> out;
    if (k == 0 || k > mat.rows() || k > mat.cols()) return out;
    for (const auto& ri : index_subsets(mat.rows(), k))
        for (const auto& ci : index_subsets(mat.cols(), k)) {
            MPoly d = determinant(mat.submatrix(ri, ci));
            if (!d.is_zero()) out.push_back(std::move(d));
        }
    return out;
}

const std::vector<Rational>& eps_ladder() {
    static const std::vector<Rational> ladder = {Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                                 Rational(1, 7), Rational(1, 11)};
    return ladder;
}

// Dimension of the system with eps pinned to a constant. The substituted
// polynomials no longer mention eps, so the ideal is re-read over a context
// without it; otherwise the untouched variable would inflate the dimension
// by one.
std::optional<int> fixed_eps_dimension(const LagrangeSystem& lag, const std::vector<MPoly>& sys,
                                       const Rational& e, const Deadline& dl) {
    MPoly val = MPoly::constant(lag.ctx, e);
    std::vector<MPoly> inst;
    for (const MPoly& p : sys) {
        MPoly q = p.substitute(lag.eps_id, val);
        if (!q.is_zero()) inst.push_back(std::move(q));
    }
    std::vector<VarId> keep;
    for (VarId v = 0; v < lag.ctx->size(); ++v)
        if (v != lag.eps_id) keep.push_back(v);
    if (inst.empty()) return static_cast<int>(keep.size());
    RestrictedIdeal ri = restrict_to_vars(lag.ctx, inst, keep);
    return dimension(ri.gens, dl);
}

// Drop the branches of rank < r (saturate by the ideal of r-minors, which
// vanishes exactly where the rank drops below r) and impose rank <= r by
// adjoining the (r+1)-minors of A + eps B.
std::vector<MPoly> rank_restrict(std::vector<MPoly> gens, const SymmetricPencil& a,
                                 const LagrangeSystem& lag, const Deadline& dl) {
    PolyMatrix ab = a.symbol_perturbed(lag.ctx, lag.x_ids, lag.eps_id, *lag.incidence.b);
    int r = lag.incidence.r;
    if (r >= 1) {
        std::vector<MPoly> low = minors(ab, static_cast<size_t>(r));
        if (!low.empty()) gens = saturate_by_ideal(gens, low, dl);
    }
    for (MPoly& hi : minors(ab, static_cast<size_t>(r) + 1)) gens.push_back(std::move(hi));
    return gens;
}

std::vector<VarId> eps_x_ids(const LagrangeSystem& lag) {
    std::vector<VarId> keep;
    keep.push_back(lag.eps_id);
    keep.insert(keep.end(), lag.x_ids.begin(), lag.x_ids.end());
    return keep;
}

StratumCurve empty_curve(const LagrangeSystem& lag) {
    StratumCurve out;
    RestrictedIdeal ri = restrict_to_vars(lag.ctx, {}, eps_x_ids(lag));
    out.ctx = ri.ctx;
    out.basis = {MPoly::constant(ri.ctx, Rational(1))};
    out.empty = true;
    return out;
}

// Reconstructs the defining ideal of a point family over its own variables:
// eliminate the parameter t from <q(t), q0(t) x_i - qi(t)>.
std::vector<MPoly> points_ideal(const ZeroDimParam& p, const CtxPtr& target, const Deadline& dl) {
    std::vector<std::string> names;
    names.push_back("t");
    for (const std::string& nm : p.ctx->names()) names.push_back(nm);
    CtxPtr cx = make_ctx(names);
    std::vector<MPoly> gens;
    gens.push_back(MPoly::from_upoly(cx, 0, p.q));
    MPoly q0 = MPoly::from_upoly(cx, 0, p.q0);
    for (size_t i = 0; i < p.qi.size(); ++i)
        gens.push_back(q0 * MPoly::variable(cx, static_cast<VarId>(i + 1)) -
                       MPoly::from_upoly(cx, 0, p.qi[i]));
    std::vector<MPoly> el = eliminate(gens, {0}, dl);
    std::vector<VarId> keep;
    for (VarId v = 1; v < cx->size(); ++v) keep.push_back(v);
    RestrictedIdeal ri = restrict_to_vars(cx, el, keep);
    std::vector<VarId> same(ri.ctx->size());
    for (VarId v = 0; v < ri.ctx->size(); ++v) same[v] = v;
    std::vector<MPoly> out;
    for (const MPoly& g : ri.gens) out.push_back(g.rename(target, same));
    return out;
}

bool prime_small(int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

std::vector<Rational> objective_shift_deltas(int n) {
    std::vector<Rational> out;
    int v = 1009;
    while (static_cast<int>(out.size()) < n) {
        if (prime_small(v)) out.emplace_back(1, v);
        ++v;
    }
    return out;
}

AlgebraicPoint rational_algebraic_point(const std::vector<Rational>& x) {
    AlgebraicPoint pt;
    pt.q = UPoly::X();
    pt.q0 = UPoly(Rational(1));
    for (const Rational& c : x) pt.qi.push_back(UPoly(c));
    pt.alpha = AlgebraicNumber::rational(Rational(0));
    return pt;
}

AlgebraicNumber objective_value(const ZeroDimParam& par, const AlgebraicNumber& alpha,
                                const ObjectiveForm& ell) {
    UPoly num;
    for (size_t i = 0; i < par.qi.size(); ++i)
        if (!(ell.coeff[i] == Rational(0))) num = num + par.qi[i] * UPoly(ell.coeff[i]);
    if (num.is_zero()) return AlgebraicNumber::rational(Rational(0));
    return algebraic_ratio(alpha, num, par.q0);
}

// Deterministic probe directions for the auxiliary feasibility objective:
// coordinate vectors first, then pairwise sums. If v^T A_i v vanishes for
// every direction here and every i >= 1, the linear part of the pencil is
// zero, which callers handle separately.
std::vector<std::vector<Rational>> direction_ladder(int m) {
    std::vector<std::vector<Rational>> out;
    for (int i = 0; i < m; ++i) {
        std::vector<Rational> v(static_cast<size_t>(m), Rational(0));
        v[static_cast<size_t>(i)] = Rational(1);
        out.push_back(std::move(v));
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<Rational> v(static_cast<size_t>(m), Rational(0));
            v[static_cast<size_t>(i)] = Rational(1);
            v[static_cast<size_t>(j)] = Rational(1);
            out.push_back(std::move(v));
        }
    return out;
}

Rational quad_form(const QMatrix& s, const std::vector<Rational>& v) {
    Rational acc(0);
    for (size_t i = 0; i < s.rows(); ++i)
        for (size_t j = 0; j < s.cols(); ++j) acc += v[i] * s.at(i, j) * v[j];
    return acc;
}

// Feasibility of a one-variable pencil, decided from the geometry of the
// set {t : A(t) PSD}: it is a closed interval, so when it is neither empty
// nor the whole line it has a finite endpoint, and at an endpoint the
// smallest eigenvalue vanishes, forcing some characteristic coefficient
// c_k(t) with c_k not identically zero to vanish. Testing membership at
// zero and at every real root of every nonzero c_k is therefore complete.
bool univariate_nonempty(const SymmetricPencil& a) {
    if (psd_check(a, std::vector<Rational>{Rational(0)}).feasible()) return true;
    CtxPtr cx = make_ctx({"x1"});
    for (const MPoly& c : charpoly_coeffs(a, cx, {0})) {
        if (c.is_zero()) continue;
        UPoly p = c.to_upoly(0);
        if (p.deg() == 0) continue;
        UPoly sf = squarefree_part(p);
        for (const IsolatingInterval& iv : isolate_real_roots(p)) {
            if (iv.a == iv.b) {
                if (psd_check(a, std::vector<Rational>{iv.a}).feasible()) return true;
                continue;
            }
            AlgebraicPoint pt;
            pt.q = sf;
            pt.q0 = UPoly(Rational(1));
            pt.qi = {UPoly::X()};
            pt.alpha = AlgebraicNumber::root_of(sf, iv);
            if (psd_check(a, pt).feasible()) return true;
        }
    }
    return false;
}

bool linear_part_zero(const SymmetricPencil& a) {
    for (int i = 1; i <= a.n; ++i)
        if (!a.mats[static_cast<size_t>(i)].is_zero()) return false;
    return true;
}

struct StratumTask {
    int r = 0;
    std::vector<int> iota;
};

struct StratumOutcome {
    std::optional<ZeroDimParam> points;
    StratumAudit audit;
    bool genericity = false;
    std::string message;
    std::exception_ptr error;
};

CtxPtr x_context(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return make_ctx(names);
}

ZeroDimParam empty_points(const CtxPtr& xctx) {
    return zero_dim_param({MPoly::constant(xctx, Rational(1))});
}

// Points of a parametrization rebuilt over a caller-supplied context with
// the same variable names, so family merges always share one context.
ZeroDimParam over_context(ZeroDimParam p, const CtxPtr& cx) {
    p.ctx = cx;
    return p;
}

StratumOutcome run_stratum(const SymmetricPencil& a, const QMatrix& b, const ObjectiveForm& ell,
                           const StratumTask& task, const SolveConfig& cfg, const CtxPtr& xctx) {
    StratumOutcome out;
    out.audit.r = task.r;
    out.audit.iota = task.iota;
    out.audit.degree_bound = curve_degree_bound(a.m, a.n, task.r);
    auto start = std::chrono::steady_clock::now();
    Deadline dl = Deadline::after_ms(cfg.stratum_timeout_ms);
    try {
        IncidenceSystem inc = build_incidence(a, b, task.r, task.iota);
        LagrangeSystem lag = build_lagrange(inc, ell);
        StratumCurve curve = odp(a, lag, cfg.eager_rank_saturation, dl);
        out.audit.eps_bar = curve.eps_bar;
        out.audit.saturated = curve.saturated;
        out.audit.curve_degree =
            curve.param ? static_cast<long>(curve.param->degree_in_t()) : 0L;
        out.audit.within_bound = BigInt(out.audit.curve_degree) <= out.audit.degree_bound;
        ZeroDimParam zdp = cut(curve, dl);
        out.audit.empty = zdp.no_points();
        out.points = over_context(std::move(zdp), xctx);
    } catch (const GenericityError& e) {
        out.genericity = true;
        out.message = e.what();
    } catch (const TimeoutError&) {
        out.audit.timed_out = true;
    } catch (...) {
        out.error = std::current_exception();
    }
    out.audit.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return out;
}

struct RankedCandidate {
    Candidate cand;
    std::vector<RatInterval> boxes;  // coordinate boxes for the tie-break
};

// Total order on candidates: objective value, then matrix rank, then the
// coordinate boxes refined to a fixed width and compared lexicographically,
// then the stratum rank. Written out so minimizer selection is reproducible
// when several optimal points share the objective value.
bool candidate_before(RankedCandidate& lhs, RankedCandidate& rhs) {
    int c = compare(lhs.cand.value, rhs.cand.value);
    if (c != 0) return c < 0;
    if (lhs.cand.cert.rank != rhs.cand.cert.rank) return lhs.cand.cert.rank < rhs.cand.cert.rank;
    const Rational w(1, 1048576);
    auto boxes_of = [&w](RankedCandidate& rc) {
        if (!rc.boxes.empty()) return;
        for (size_t i = 0; i < rc.cand.point.dim(); ++i)
            rc.boxes.push_back(rc.cand.point.coord_box(i, w));
    };
    boxes_of(lhs);
    boxes_of(rhs);
    for (size_t i = 0; i < lhs.boxes.size() && i < rhs.boxes.size(); ++i) {
        if (lhs.boxes[i].lo != rhs.boxes[i].lo) return lhs.boxes[i].lo < rhs.boxes[i].lo;
        if (lhs.boxes[i].hi != rhs.boxes[i].hi) return lhs.boxes[i].hi < rhs.boxes[i].hi;
    }
    return lhs.cand.r < rhs.cand.r;
}

}  // namespace

void SolveConfig::validate() const {
    if (stratum_timeout_ms <= 0) throw Error("per-stratum time budget must be positive");
    if (reseeds < 0) throw Error("reseed count must be nonnegative");
    if (workers < 0) throw Error("worker count must be nonnegative");
    if (max_rank < -1) throw Error("max rank must be -1 (no cap) or nonnegative");
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::ZeroPointVertex: return "zero_point_vertex";
        case SolveStatus::UnboundedBelow: return "unbounded_below";
        case SolveStatus::EmptyFeasible: return "empty_or_unbounded";
        case SolveStatus::GenericityFailure: return "genericity_failure";
        case SolveStatus::StratumTimeout: return "stratum_timeout";
    }
    return "unknown";
}

int exit_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved:
        case SolveStatus::ZeroPointVertex: return 0;
        case SolveStatus::UnboundedBelow: return 2;
        case SolveStatus::EmptyFeasible: return 3;
        case SolveStatus::GenericityFailure: return 4;
        case SolveStatus::StratumTimeout: return 5;
    }
    return 1;
}

StratumCurve odp(const SymmetricPencil& a, const LagrangeSystem& lag, bool eager_rank_saturation,
                 const Deadline& dl) {
    if (!lag.has_eps) throw Error("the homotopy stratum needs a perturbed system");
    std::vector<MPoly> sys = lag.full_system();

    StratumCurve out;
    bool probed = false;
    for (const Rational& e : eps_ladder()) {
        std::optional<int> d = fixed_eps_dimension(lag, sys, e, dl);
        if (!d || *d <= 0) {
            out.eps_bar = e;
            probed = true;
            break;
        }
    }
    if (!probed)
        throw GenericityError("stratum r=" + std::to_string(lag.incidence.r) +
                              " stays positive-dimensional at every probe value");

    std::vector<MPoly> gens = sys;
    bool saturated = false;
    if (eager_rank_saturation) {
        gens = rank_restrict(std::move(gens), a, lag, dl);
        saturated = true;
    }
    std::optional<int> d = dimension(gens, dl);
    if (d && *d >= 2 && !saturated) {
        gens = rank_restrict(std::move(gens), a, lag, dl);
        saturated = true;
        d = dimension(gens, dl);
    }
    if (!d) {
        StratumCurve empty = empty_curve(lag);
        empty.eps_bar = out.eps_bar;
        empty.saturated = saturated;
        return empty;
    }
    if (*d >= 2)
        throw GenericityError("stratum r=" + std::to_string(lag.incidence.r) + " is " +
                              std::to_string(*d) + "-dimensional with eps free");
    out.saturated = saturated;

    if (*d == 1) {
        std::vector<std::string> keep;
        keep.push_back("eps");
        for (int i = 1; i <= lag.incidence.n; ++i) keep.push_back("x" + std::to_string(i));
        try {
            OneDimParam par = one_dim_param(gens, keep, dl);
            out.ctx = par.basis_ctx;
            out.basis = par.basis;
            out.param = std::move(par);
            return out;
        } catch (const NotCurve&) {
            // The critical set is a curve but its (eps, x) shadow is not;
            // fall through to the pointwise projection.
        }
    }

    // Zero-dimensional (or a collapsed shadow): project the ideal onto
    // (eps, x) and hand the points to cut, which maps isolated points off
    // eps = 0 to nothing.
    std::vector<VarId> front;
    for (VarId v = 0; v < lag.ctx->size(); ++v)
        if (v != lag.eps_id &&
            std::find(lag.x_ids.begin(), lag.x_ids.end(), v) == lag.x_ids.end())
            front.push_back(v);
    std::vector<MPoly> el = eliminate(gens, front, dl);
    RestrictedIdeal ri = restrict_to_vars(lag.ctx, el, eps_x_ids(lag));
    out.ctx = ri.ctx;
    out.basis = ri.gens;
    if (out.basis.empty()) out.basis = {MPoly(ri.ctx)};
    if (basis_is_unit(out.basis)) out.empty = true;
    return out;
}

ZeroDimParam cut(const StratumCurve& curve, const Deadline& dl) {
    if (!curve.ctx || !curve.ctx->has("eps")) throw Error("cut expects a curve context with eps");
    VarId eps = curve.ctx->id("eps");
    std::vector<VarId> xids;
    for (VarId v = 0; v < curve.ctx->size(); ++v)
        if (v != eps) xids.push_back(v);

    if (curve.empty || basis_is_unit(curve.basis)) {
        RestrictedIdeal ri = restrict_to_vars(curve.ctx, {}, xids);
        return empty_points(ri.ctx);
    }
    std::vector<MPoly> sat = saturate(curve.basis, MPoly::variable(curve.ctx, eps), dl);
    sat.push_back(MPoly::variable(curve.ctx, eps));
    std::vector<MPoly> el = eliminate(sat, {eps}, dl);
    RestrictedIdeal ri = restrict_to_vars(curve.ctx, el, xids);
    if (ri.gens.empty()) throw Error("internal: curve limit has no defining equations");
    return zero_dim_param(ri.gens, dl);
}

ZeroDimParam union_points(const ZeroDimParam& a, const ZeroDimParam& b, const Deadline& dl) {
    if (!a.ctx || !b.ctx || a.ctx->names() != b.ctx->names())
        throw Error("point families live over different variables");
    if (a.no_points()) return b;
    if (b.no_points()) return a;
    CtxPtr cx = make_ctx(a.ctx->names());
    std::vector<MPoly> ia = points_ideal(a, cx, dl);
    std::vector<MPoly> ib = points_ideal(b, cx, dl);
    std::vector<MPoly> both = intersect_ideals(ia, ib, dl);
    return zero_dim_param(both, dl);
}

GenericityReport genericity_diagnostics(const LagrangeSystem& lag, const Rational& eps_bar,
                                        const Deadline& dl) {
    GenericityReport rep;
    rep.eps_bar = eps_bar;
    bool zero_objective = true;
    for (const Rational& c : lag.objective.coeff)
        if (!(c == Rational(0))) zero_objective = false;
    if (zero_objective)
        rep.note += "objective is identically zero, every feasible point is critical; ";

    std::vector<MPoly> sys = lag.full_system();
    std::optional<int> d;
    if (lag.has_eps) {
        d = fixed_eps_dimension(lag, sys, eps_bar, dl);
    } else {
        rep.note += "system carries no perturbation variable; ";
        d = dimension(sys, dl);
    }
    rep.dim = d;
    rep.finite = !d || *d <= 0;
    if (!d)
        rep.note += "critical system is empty at the probe";
    else if (*d <= 0)
        rep.note += "critical system is finite at the probe";
    else
        rep.note += "critical system is " + std::to_string(*d) +
                    "-dimensional at the probe; draw a fresh perturbation or move the probe";
    return rep;
}

namespace {

// Runs the homotopy on auxiliary objectives of the shape v^T A(x) v, which
// are bounded below on the feasible set by construction (v^T A(x) v >= 0
// there). A minimizer in the report certifies the set nonempty, and a
// candidate-free report certifies it empty. Returns the first conclusive
// report; nullopt when every probe direction hit a genericity failure.
std::optional<SolveReport> feasibility_solve(const SymmetricPencil& a, const SolveConfig& cfg) {
    SolveConfig sub = cfg;
    sub.perturbation.reset();
    sub.allow_objective_perturbation = false;
    sub.max_rank = -1;
    for (const std::vector<Rational>& v : direction_ladder(a.m)) {
        ObjectiveForm aux;
        bool nonzero = false;
        for (int i = 1; i <= a.n; ++i) {
            Rational c = quad_form(a.mats[static_cast<size_t>(i)], v);
            if (!(c == Rational(0))) nonzero = true;
            aux.coeff.push_back(c);
        }
        if (!nonzero) continue;
        SolveReport rep = solve_impl(Instance{a, aux}, sub, false);
        if (rep.status == SolveStatus::GenericityFailure) continue;
        if (rep.status == SolveStatus::StratumTimeout)
            throw TimeoutError("time budget exhausted in the feasibility recursion");
        return rep;
    }
    return std::nullopt;
}

}  // namespace

bool spectrahedron_nonempty(const SymmetricPencil& a, const SolveConfig& cfg) {
    a.validate();
    if (a.n == 0) return psd_certificate(a.mats[0]).feasible();
    std::vector<Rational> origin(static_cast<size_t>(a.n), Rational(0));
    if (psd_check(a, origin).feasible()) return true;
    if (detect_zero_point(a)) return true;
    if (linear_part_zero(a)) return false;
    if (a.n == 1) return univariate_nonempty(a);
    std::optional<SolveReport> rep = feasibility_solve(a, cfg);
    if (!rep)
        throw Error(
            "feasibility decision failed: every auxiliary objective hit a genericity failure");
    return rep->minimizer.has_value();
}

ConeVerdict cone_unboundedness_test(const SymmetricPencil& a, const std::vector<Rational>& xstar,
                                    const ObjectiveForm& ell, const SolveConfig& cfg) {
    a.validate();
    if (ell.coeff.size() != static_cast<size_t>(a.n))
        throw Error("objective length must match the pencil dimension");
    if (!a.at(xstar).is_zero()) throw Error("the vertex test needs A(x*) = 0");

    int pivot = -1;
    for (int i = 0; i < a.n; ++i)
        if (!(ell.coeff[static_cast<size_t>(i)] == Rational(0))) {
            pivot = i;
            break;
        }
    if (pivot < 0) return ConeVerdict::MinimizerAtVertex;

    // Directions d with sum_i d_i A_i PSD form the recession cone; the
    // objective drops along one iff the slice {ell(d) = -1} meets the cone.
    // Substitute d_pivot = (-1 - sum_{i != pivot} ell_i d_i) / ell_pivot.
    const Rational& lp = ell.coeff[static_cast<size_t>(pivot)];
    const QMatrix& ap = a.mats[static_cast<size_t>(pivot) + 1];
    SymmetricPencil sliced;
    sliced.m = a.m;
    sliced.n = a.n - 1;
    auto scaled = [&](const QMatrix& s, const Rational& c) {
        QMatrix out(s.rows(), s.cols());
        for (size_t i = 0; i < s.rows(); ++i)
            for (size_t j = 0; j < s.cols(); ++j) out.at(i, j) = s.at(i, j) * c;
        return out;
    };
    auto diff = [&](const QMatrix& s, const QMatrix& t) {
        QMatrix out(s.rows(), s.cols());
        for (size_t i = 0; i < s.rows(); ++i)
            for (size_t j = 0; j < s.cols(); ++j) out.at(i, j) = s.at(i, j) - t.at(i, j);
        return out;
    };
    sliced.mats.push_back(scaled(ap, Rational(-1) / lp));
    for (int i = 0; i < a.n; ++i) {
        if (i == pivot) continue;
        const QMatrix& ai = a.mats[static_cast<size_t>(i) + 1];
        sliced.mats.push_back(diff(ai, scaled(ap, ell.coeff[static_cast<size_t>(i)] / lp)));
    }
    return spectrahedron_nonempty(sliced, cfg) ? ConeVerdict::UnboundedBelow
                                               : ConeVerdict::MinimizerAtVertex;
}

namespace {

// Core solve. With diagnose set the report's verdicts are certified: Solved
// is confirmed bounded through the recession-cone test, and a candidate-free
// run is split into certified-empty versus unbounded via the feasibility
// decision. The flag is off for the internal recursions those diagnostics
// spawn, which only need the raw candidate search.
SolveReport solve_impl(const Instance& inst, const SolveConfig& cfg, bool diagnose) {
    cfg.validate();
    const SymmetricPencil& a = inst.pencil;
    a.validate();
    if (inst.objective.coeff.size() != static_cast<size_t>(a.n))
        throw Error("objective length must match the pencil dimension");

    SolveReport rep;
    ObjectiveForm ell = inst.objective;
    if (cfg.allow_objective_perturbation) {
        rep.objective_shift = objective_shift_deltas(a.n);
        for (int i = 0; i < a.n; ++i)
            ell.coeff[static_cast<size_t>(i)] += rep.objective_shift[static_cast<size_t>(i)];
        rep.note += "objective perturbed on request; the optimum refers to the shifted "
                    "objective; ";
    }

    if (a.n == 0) {
        PSDCertificate cert = psd_certificate(a.mats[0]);
        if (cert.feasible()) {
            rep.status = SolveStatus::Solved;
            MinimizerCertificate mc;
            mc.point = rational_algebraic_point({});
            mc.value = AlgebraicNumber::rational(Rational(0));
            mc.cert = cert;
            rep.minimizer = std::move(mc);
        } else {
            rep.status = SolveStatus::EmptyFeasible;
            rep.note += "constant pencil is not positive semidefinite";
        }
        return rep;
    }

    bool zero_objective = true;
    for (const Rational& c : ell.coeff)
        if (!(c == Rational(0))) zero_objective = false;

    if (!cfg.disable_zero_shortcircuit) {
        if (std::optional<std::vector<Rational>> xs = detect_zero_point(a)) {
            if (diagnose) {
                ConeVerdict v = cone_unboundedness_test(a, *xs, ell, cfg);
                rep.note += "pencil vanishes at a rational point, so the feasible set is a "
                            "translated cone; verdict derived from the sliced recession-cone "
                            "feasibility test";
                if (v == ConeVerdict::UnboundedBelow) {
                    rep.status = SolveStatus::UnboundedBelow;
                    return rep;
                }
            }
            rep.status = SolveStatus::ZeroPointVertex;
            MinimizerCertificate mc;
            mc.point = rational_algebraic_point(*xs);
            mc.value = AlgebraicNumber::rational(ell.at(*xs));
            mc.cert = psd_check(a, *xs);
            mc.vertex_shortcut = true;
            rep.minimizer = std::move(mc);
            return rep;
        }
    }

    if (linear_part_zero(a)) {
        // A(x) is the constant matrix A0; the pencil carries no geometry for
        // the strata to see, so answer directly.
        if (!psd_certificate(a.mats[0]).feasible()) {
            rep.status = SolveStatus::EmptyFeasible;
            rep.note += "constant pencil is not positive semidefinite";
            return rep;
        }
        if (zero_objective) {
            rep.status = SolveStatus::Solved;
            MinimizerCertificate mc;
            mc.point = rational_algebraic_point(
                std::vector<Rational>(static_cast<size_t>(a.n), Rational(0)));
            mc.value = AlgebraicNumber::rational(Rational(0));
            mc.cert = psd_certificate(a.mats[0]);
            rep.minimizer = std::move(mc);
            return rep;
        }
        rep.status = SolveStatus::UnboundedBelow;
        rep.note += "pencil is constant and feasible, so a nonzero objective is unbounded";
        return rep;
    }

    if (zero_objective && diagnose) {
        // Any feasible point minimizes a zero objective. Answer with a cheap
        // membership test when it works, else with the feasibility witness.
        rep.note += "objective is identically zero, so any feasible point is optimal; ";
        std::vector<Rational> origin(static_cast<size_t>(a.n), Rational(0));
        PSDCertificate at_origin = psd_check(a, origin);
        if (at_origin.feasible()) {
            rep.status = SolveStatus::Solved;
            MinimizerCertificate mc;
            mc.point = rational_algebraic_point(origin);
            mc.value = AlgebraicNumber::rational(Rational(0));
            mc.cert = at_origin;
            rep.minimizer = std::move(mc);
            return rep;
        }
        std::optional<SolveReport> f = feasibility_solve(a, cfg);
        if (!f) {
            rep.status = SolveStatus::GenericityFailure;
            rep.note += "every auxiliary feasibility objective hit a genericity failure";
            return rep;
        }
        rep.attempts = f->attempts;
        rep.perturbation = f->perturbation;
        rep.perturbation_seed = f->perturbation_seed;
        if (f->minimizer) {
            rep.status = SolveStatus::Solved;
            MinimizerCertificate mc = *f->minimizer;
            mc.value = AlgebraicNumber::rational(Rational(0));
            rep.minimizer = std::move(mc);
            rep.note += "returned the witness point of the feasibility decision";
        } else {
            rep.status = SolveStatus::EmptyFeasible;
            rep.note += "the feasibility decision certifies the set is empty";
        }
        return rep;
    }

    int max_r = cfg.max_rank < 0 ? a.m - 1 : std::min(cfg.max_rank, a.m - 1);
    std::vector<StratumTask> tasks;
    for (int r = 1; r <= max_r; ++r)
        for (const std::vector<int>& iota : iota_subsets(a.m, r)) tasks.push_back({r, iota});

    CtxPtr xctx = x_context(a.n);
    std::string genericity_note;

    for (int attempt = 0; attempt <= cfg.reseeds; ++attempt) {
        QMatrix b;
        if (attempt == 0 && cfg.perturbation) {
            b = *cfg.perturbation;
            rep.perturbation_seed = 0;
        } else {
            PerturbationMatrix pm = sample_perturbation(a.m, cfg.seed + static_cast<uint64_t>(attempt));
            b = pm.b;
            rep.perturbation_seed = pm.seed;
        }
        rep.attempts = attempt + 1;
        rep.perturbation = b;
        if (psd_certificate(b).verdict != PsdVerdict::PD)
            rep.note += "perturbation matrix is not positive definite; completeness "
                        "guarantees are void; ";

        std::vector<StratumOutcome> outcomes(tasks.size());
        int workers = cfg.workers;
#ifdef _OPENMP
        if (workers == 0) workers = omp_get_max_threads();
#else
        workers = 1;
#endif
        if (workers <= 1 || tasks.size() <= 1) {
            for (size_t i = 0; i < tasks.size(); ++i)
                outcomes[i] = run_stratum(a, b, ell, tasks[i], cfg, xctx);
        } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
            for (long i = 0; i < static_cast<long>(tasks.size()); ++i)
                outcomes[static_cast<size_t>(i)] =
                    run_stratum(a, b, ell, tasks[static_cast<size_t>(i)], cfg, xctx);
#endif
        }

        for (const StratumOutcome& outcome : outcomes)
            if (outcome.error) std::rethrow_exception(outcome.error);

        rep.audit.clear();
        for (const StratumOutcome& outcome : outcomes) rep.audit.push_back(outcome.audit);

        bool genericity_failed = false;
        for (const StratumOutcome& outcome : outcomes)
            if (outcome.genericity) {
                genericity_failed = true;
                genericity_note = outcome.message;
                break;
            }
        if (genericity_failed) {
            if (attempt < cfg.reseeds) continue;
            rep.status = SolveStatus::GenericityFailure;
            rep.note += "perturbation draws exhausted: " + genericity_note;
            return rep;
        }

        bool timed_out = false;
        rep.rank_params.assign(static_cast<size_t>(a.m - 1), ZeroDimParam{});
        for (int r = 1; r <= a.m - 1; ++r)
            rep.rank_params[static_cast<size_t>(r - 1)] = empty_points(xctx);
        Deadline merge_dl = Deadline::after_ms(cfg.stratum_timeout_ms);
        for (size_t i = 0; i < tasks.size(); ++i) {
            if (outcomes[i].audit.timed_out) {
                timed_out = true;
                continue;
            }
            if (!outcomes[i].points) continue;
            size_t slot = static_cast<size_t>(tasks[i].r - 1);
            rep.rank_params[slot] =
                union_points(rep.rank_params[slot], *outcomes[i].points, merge_dl);
        }

        // Candidate extraction: real points of each rank family, exact PSD
        // filtering, exact objective values.
        std::vector<RankedCandidate> ranked;
        for (int r = 1; r <= a.m - 1; ++r) {
            const ZeroDimParam& qr = rep.rank_params[static_cast<size_t>(r - 1)];
            if (qr.no_points()) continue;
            for (const IsolatingInterval& iv : isolate_real_roots(qr.q)) {
                AlgebraicNumber alpha = iv.a == iv.b
                                            ? AlgebraicNumber::rational(iv.a)
                                            : AlgebraicNumber::root_of(qr.q, iv);
                Candidate c;
                c.point = AlgebraicPoint{qr.q, qr.q0, qr.qi, alpha};
                c.cert = psd_check(a, c.point);
                c.value = objective_value(qr, alpha, ell);
                c.r = r;
                ranked.push_back({std::move(c), {}});
            }
        }
        for (RankedCandidate& rc : ranked) rep.candidates.push_back(rc.cand);

        int best = -1;
        for (size_t i = 0; i < ranked.size(); ++i) {
            if (!ranked[i].cand.cert.feasible()) continue;
            if (best < 0 || candidate_before(ranked[i], ranked[static_cast<size_t>(best)]))
                best = static_cast<int>(i);
        }
        // With the shortcut disabled the rank strata are the only source of
        // candidates, but they can miss the pencil-zero vertex (for m = 1
        // there are no strata at all). Theorem-wise the vertex value is the
        // minimum whenever the objective is bounded, so reinstate it as a
        // candidate when it beats everything the strata produced.
        std::optional<Candidate> vertex_fallback;
        if (cfg.disable_zero_shortcircuit) {
            if (std::optional<std::vector<Rational>> xstar = detect_zero_point(a)) {
                AlgebraicNumber vval = AlgebraicNumber::rational(ell.at(*xstar));
                bool wins = best < 0 ||
                            compare(ranked[static_cast<size_t>(best)].cand.value, vval) > 0;
                if (wins) {
                    Candidate vc;
                    vc.point = rational_algebraic_point(*xstar);
                    vc.cert = psd_check(a, *xstar);
                    vc.value = vval;
                    vc.r = 0;
                    rep.candidates.push_back(vc);
                    vertex_fallback = std::move(vc);
                }
            }
        }
        if (vertex_fallback) {
            MinimizerCertificate mc;
            mc.point = vertex_fallback->point;
            mc.value = vertex_fallback->value;
            mc.cert = vertex_fallback->cert;
            mc.r = 0;
            mc.curve_degree = 0;
            mc.vertex_shortcut = true;
            rep.minimizer = std::move(mc);
            rep.note += "the pencil-zero vertex beats every stratum candidate and is "
                        "reported as the minimizer; ";
        } else if (best >= 0) {
            const Candidate& c = ranked[static_cast<size_t>(best)].cand;
            MinimizerCertificate mc;
            mc.point = c.point;
            mc.value = c.value;
            mc.cert = c.cert;
            mc.r = c.r;
            mc.curve_degree = 0;
            for (const StratumAudit& row : rep.audit)
                if (row.r == c.r && !row.empty) {
                    mc.iotas.push_back(row.iota);
                    mc.curve_degree = std::max(mc.curve_degree, row.curve_degree);
                }
            rep.minimizer = std::move(mc);
        }

        if (timed_out) {
            rep.status = SolveStatus::StratumTimeout;
            rep.note += "one or more strata ran out of time; results are partial";
            return rep;
        }
        if (rep.minimizer) {
            rep.status = SolveStatus::Solved;
            if (diagnose) {
                // A least feasible candidate is the minimizer only when the
                // objective is bounded below, which for a nonempty closed
                // convex set means no recession direction decreases it. The
                // recession cone is cut out by the pencil without its
                // constant term, so the vertex test at the origin decides.
                SymmetricPencil homogeneous = a;
                homogeneous.mats[0] =
                    QMatrix(static_cast<size_t>(a.m), static_cast<size_t>(a.m));
                std::vector<Rational> apex(static_cast<size_t>(a.n), Rational(0));
                try {
                    if (cone_unboundedness_test(homogeneous, apex, ell, cfg) ==
                        ConeVerdict::UnboundedBelow) {
                        rep.status = SolveStatus::UnboundedBelow;
                        rep.minimizer.reset();
                        rep.note += "feasible points exist but the recession cone carries a "
                                    "descent direction, so the objective is unbounded below; "
                                    "the candidates are the boundary points the homotopy saw";
                    }
                } catch (const Error& e) {
                    rep.note += std::string("boundedness check inconclusive (") + e.what() +
                                "); reporting the least feasible candidate";
                }
            }
            return rep;
        }
        rep.status = SolveStatus::EmptyFeasible;
        rep.note += "no feasible candidate: the feasible set is empty or the objective is "
                    "unbounded below on it";
        if (diagnose) {
            try {
                if (spectrahedron_nonempty(a, cfg)) {
                    rep.status = SolveStatus::UnboundedBelow;
                    rep.note += "; the set is certified nonempty, so the objective is "
                                "unbounded below on it";
                } else {
                    rep.note += "; the feasibility decision certifies the set is empty";
                }
            } catch (const Error&) {
                rep.note += "; the feasibility decision was inconclusive";
            }
        }
        return rep;
    }
    rep.status = SolveStatus::GenericityFailure;
    rep.note += "perturbation draws exhausted: " + genericity_note;
    return rep;
}

}  // namespace

SolveReport degenerate_sdp(const Instance& inst, const SolveConfig& cfg) {
    return solve_impl(inst, cfg, true);
}

namespace {

json upoly_json(const UPoly& p) { return p.str("t"); }

json algebraic_json(const AlgebraicNumber& v) {
    v.refine_to_width(Rational(1, 1000000000000LL));
    json j;
    j["decimal"] = v.decimal(12);
    j["minpoly"] = v.minpoly().str("t");
    j["interval"] = {v.lo().str(), v.hi().str()};
    return j;
}

json point_json(const AlgebraicPoint& pt) {
    json j;
    j["q"] = upoly_json(pt.q);
    j["q0"] = upoly_json(pt.q0);
    json qi = json::array();
    for (const UPoly& p : pt.qi) qi.push_back(upoly_json(p));
    j["qi"] = qi;
    j["alpha"] = algebraic_json(pt.alpha);
    json coords = json::array();
    const Rational w(1, 1000000000000LL);
    for (size_t i = 0; i < pt.dim(); ++i) {
        RatInterval box = pt.coord_box(i, w);
        json c;
        c["decimal"] = ((box.lo + box.hi) / Rational(2)).decimal(12);
        c["interval"] = {box.lo.str(), box.hi.str()};
        coords.push_back(c);
    }
    j["coordinates"] = coords;
    return j;
}

std::string verdict_name(PsdVerdict v) {
    switch (v) {
        case PsdVerdict::PD: return "positive_definite";
        case PsdVerdict::PSD: return "positive_semidefinite";
        case PsdVerdict::NotPsd: return "not_psd";
    }
    return "unknown";
}

json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string report_to_json(const SolveReport& rep) {
    json j;
    j["status"] = to_string(rep.status);
    j["exit_code"] = exit_code(rep.status);
    j["attempts"] = rep.attempts;
    if (rep.perturbation.rows() > 0) {
        j["perturbation"]["matrix"] = matrix_json(rep.perturbation);
        if (rep.perturbation_seed != 0) j["perturbation"]["seed"] = rep.perturbation_seed;
    }
    if (!rep.objective_shift.empty()) {
        json shift = json::array();
        for (const Rational& d : rep.objective_shift) shift.push_back(d.str());
        j["objective_shift"] = shift;
    }
    if (!rep.note.empty()) j["note"] = rep.note;

    json ranks = json::array();
    for (size_t r = 0; r < rep.rank_params.size(); ++r) {
        const ZeroDimParam& q = rep.rank_params[r];
        json e;
        e["r"] = r + 1;
        e["points"] = q.complex_points();
        if (q.ctx) {
            e["vars"] = q.ctx->names();
            json lam = json::array();
            for (const Rational& l : q.lambda) lam.push_back(l.str());
            e["lambda"] = lam;
            e["q"] = upoly_json(q.q);
            e["q0"] = upoly_json(q.q0);
            json qi = json::array();
            for (const UPoly& p : q.qi) qi.push_back(upoly_json(p));
            e["qi"] = qi;
        }
        ranks.push_back(e);
    }
    j["rank_params"] = ranks;

    json cands = json::array();
    for (const Candidate& c : rep.candidates) {
        json e;
        e["r"] = c.r;
        e["feasible"] = c.cert.feasible();
        e["verdict"] = verdict_name(c.cert.verdict);
        e["rank"] = c.cert.rank;
        e["value"] = algebraic_json(c.value);
        e["point"] = point_json(c.point);
        cands.push_back(e);
    }
    j["candidates"] = cands;

    if (rep.minimizer) {
        const MinimizerCertificate& mc = *rep.minimizer;
        json e;
        e["point"] = point_json(mc.point);
        e["value"] = algebraic_json(mc.value);
        e["rank"] = mc.cert.rank;
        e["verdict"] = verdict_name(mc.cert.verdict);
        e["r"] = mc.r;
        e["iotas"] = mc.iotas;
        e["curve_degree"] = mc.curve_degree;
        e["vertex_shortcut"] = mc.vertex_shortcut;
        j["minimizer"] = e;
    } else {
        j["minimizer"] = nullptr;
    }

    json audit = json::array();
    for (const StratumAudit& row : rep.audit) {
        json e;
        e["r"] = row.r;
        e["iota"] = row.iota;
        e["eps_bar"] = row.eps_bar.str();
        e["curve_degree"] = row.curve_degree;
        e["degree_bound"] = row.degree_bound.get_str();
        e["within_bound"] = row.within_bound;
        e["saturated"] = row.saturated;
        e["timed_out"] = row.timed_out;
        e["empty"] = row.empty;
        e["elapsed_ms"] = row.elapsed_ms;
        audit.push_back(e);
    }
    j["audit"] = audit;
    return j.dump(2);
}

}  // namespace sdphom
