#pragma once

#include "sdphom/deadline.hpp"
#include "sdphom/ideal.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sdphom {

// Finite-dimensional quotient algebra F[x]/I presented by a reduced Groebner
// basis whose coefficients live in an arbitrary field F (F = Rational for
// zero-dimensional ideals over Q, F = RatFunc for the generic fiber of a
// curve over Q(u)). F must be default-constructible to 0, constructible from
// long, and support +,-,*,/,== and is_zero().

template <class F>
struct GTerm {
    Monomial m;
    F c;
};

template <class F>
using GPoly = std::vector<GTerm<F>>;  // sorted descending under the algebra order

// Dense square matrix over F, row-major.
template <class F>
struct FMat {
    size_t n = 0;
    std::vector<F> a;

    FMat() = default;
    explicit FMat(size_t n_) : n(n_), a(n_ * n_, F()) {}
    static FMat identity(size_t n_) {
        FMat m(n_);
        for (size_t i = 0; i < n_; ++i) m.at(i, i) = F(1);
        return m;
    }
    F& at(size_t i, size_t j) { return a[i * n + j]; }
    const F& at(size_t i, size_t j) const { return a[i * n + j]; }

    friend FMat operator*(const FMat& x, const FMat& y) {
        FMat r(x.n);
        for (size_t i = 0; i < x.n; ++i)
            for (size_t k = 0; k < x.n; ++k) {
                const F& f = x.at(i, k);
                if (f.is_zero()) continue;
                for (size_t j = 0; j < x.n; ++j) {
                    const F& g = y.at(k, j);
                    if (!g.is_zero()) r.at(i, j) += f * g;
                }
            }
        return r;
    }
    std::vector<F> apply(const std::vector<F>& v) const {
        std::vector<F> r(n, F());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }
    F trace() const {
        F t;
        for (size_t i = 0; i < n; ++i) t += at(i, i);
        return t;
    }
    F trace_product(const FMat& o) const {  // Tr(this * o)
        F t;
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k)
                if (!at(i, k).is_zero() && !o.at(k, i).is_zero()) t += at(i, k) * o.at(k, i);
        return t;
    }
};

// Incremental linear solver: feed vectors one at a time; the first dependent
// vector comes back expressed over the previously inserted ones.
template <class F>
class LinDep {
public:
    explicit LinDep(size_t dim) : dim_(dim) {}

    // Returns the combination c with c.back() = 1 such that sum c_j v_j = 0
    // when v is dependent on the earlier insertions; nullopt when independent.
    std::optional<std::vector<F>> insert(std::vector<F> v) {
        std::vector<F> combo(count_ + 1, F());
        combo[count_] = F(1);
        for (const auto& [vec, expr, pivot] : rows_) {
            const F f = v[pivot] / vec[pivot];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < dim_; ++j) v[j] -= f * vec[j];
            for (size_t j = 0; j < expr.size(); ++j) combo[j] -= f * expr[j];
        }
        size_t pivot = 0;
        while (pivot < dim_ && v[pivot].is_zero()) ++pivot;
        ++count_;
        if (pivot == dim_) return combo;
        combo.resize(count_, F());
        rows_.push_back({std::move(v), std::move(combo), pivot});
        return std::nullopt;
    }

private:
    struct Row {
        std::vector<F> vec, expr;
        size_t pivot;
    };
    size_t dim_;
    size_t count_ = 0;
    std::vector<Row> rows_;
};

// Minimal polynomial (ascending, monic) of the vector v0 under M.
template <class F>
std::vector<F> krylov_minpoly(const FMat<F>& m, std::vector<F> v0, const Deadline& dl = {}) {
    LinDep<F> solver(m.n);
    std::vector<F> v = std::move(v0);
    while (true) {
        dl.check("krylov minimal polynomial");
        auto dep = solver.insert(v);
        if (dep) return *dep;
        v = m.apply(v);
    }
}

template <class F>
class QuotientAlgebra {
public:
    QuotientAlgebra(CtxPtr ctx, MonomialOrder ord, std::vector<GPoly<F>> gb, const Deadline& dl = {})
        : ctx_(std::move(ctx)), ord_(std::move(ord)), gb_(std::move(gb)), dl_(dl) {
        for (const auto& g : gb_) lms_.push_back(g.front().m);
        unit_ = gb_.size() == 1 && gb_[0].front().m.is_one();
        if (unit_) {
            zero_dim_ = true;
            return;
        }
        zero_dim_ = !lms_.empty();
        for (VarId v = 0; v < ctx_->size() && zero_dim_; ++v) {
            bool pure = false;
            for (const auto& lm : lms_)
                if (lm.support_mask() == (uint64_t{1} << v)) pure = true;
            zero_dim_ = zero_dim_ && pure;
        }
        if (!zero_dim_) return;
        build_staircase();
        mult_.resize(ctx_->size());
        for (VarId v = 0; v < ctx_->size(); ++v) build_mult(v);
    }

    bool unit() const { return unit_; }
    bool zero_dimensional() const { return zero_dim_; }
    size_t dim() const { return unit_ ? 0 : basis_.size(); }
    size_t var_count() const { return ctx_->size(); }
    const std::vector<Monomial>& basis() const { return basis_; }
    const FMat<F>& mult(VarId v) const { return mult_.at(v); }

    std::vector<F> coords_of_one() const {
        std::vector<F> v(dim(), F());
        v.at(0) = F(1);  // staircase is enumerated upward, so basis.front() is 1
        return v;
    }

    // Minimal polynomial of the coset of x_v against the cyclic vector 1.
    std::vector<F> minpoly_of_var(VarId v) const {
        return krylov_minpoly(mult_.at(v), coords_of_one(), dl_);
    }

    FMat<F> form_matrix(const std::vector<Rational>& lambda) const {
        FMat<F> m(dim());
        for (VarId v = 0; v < ctx_->size(); ++v) {
            if (lambda.at(v).is_zero()) continue;
            F s(lambda.at(v));
            for (size_t i = 0; i < m.a.size(); ++i) m.a[i] += s * mult_.at(v).a[i];
        }
        return m;
    }

private:
    struct OrdDesc {
        const MonomialOrder* ord;
        bool operator()(const Monomial& a, const Monomial& b) const { return ord->cmp(a, b) > 0; }
    };

    bool reducible(const Monomial& m) const {
        for (const auto& lm : lms_)
            if (lm.divides(m)) return true;
        return false;
    }

    void build_staircase() {
        std::map<Monomial, bool> seen;  // container-key order only
        std::vector<Monomial> queue{Monomial()};
        seen[Monomial()] = true;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Monomial m = queue[qi];
            if (reducible(m)) continue;
            basis_.push_back(m);
            if (basis_.size() > 5000) throw Error("quotient algebra dimension exceeds safety cap");
            for (VarId v = 0; v < ctx_->size(); ++v) {
                Monomial next = m * Monomial::var(v);
                if (!seen.count(next)) {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        std::sort(basis_.begin(), basis_.end(),
                  [&](const Monomial& a, const Monomial& b) { return ord_.cmp(a, b) < 0; });
        for (size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
    }

    // Full normal form of a monomial times a variable, written in the basis.
    std::vector<F> nf_coords(const Monomial& m0) const {
        std::map<Monomial, F, OrdDesc> work{OrdDesc{&ord_}};
        work.emplace(m0, F(1));
        std::vector<F> out(basis_.size(), F());
        size_t steps = 0;
        while (!work.empty()) {
            if ((++steps & 0x3f) == 0) dl_.check("quotient reduction");
            auto it = work.begin();
            Monomial m = it->first;
            F c = it->second;
            work.erase(it);
            auto bi = index_.find(m);
            if (bi != index_.end()) {
                out[bi->second] += c;
                continue;
            }
            const GPoly<F>* red = nullptr;
            for (const auto& g : gb_)
                if (g.front().m.divides(m)) {
                    red = &g;
                    break;
                }
            if (!red) throw Error("internal: irreducible monomial outside the staircase");
            F f = c / red->front().c;
            Monomial q = m.divide(red->front().m);
            for (size_t k = 1; k < red->size(); ++k) {
                Monomial mm = (*red)[k].m * q;
                F add = F(0) - f * (*red)[k].c;
                auto [jt, ins] = work.emplace(std::move(mm), add);
                if (!ins) {
                    jt->second += add;
                    if (jt->second.is_zero()) work.erase(jt);
                }
            }
        }
        return out;
    }

    void build_mult(VarId v) {
        size_t d = basis_.size();
        FMat<F> m(d);
        for (size_t j = 0; j < d; ++j) {
            std::vector<F> col = nf_coords(basis_[j] * Monomial::var(v));
            for (size_t i = 0; i < d; ++i) m.at(i, j) = std::move(col[i]);
        }
        mult_[v] = std::move(m);
    }

    CtxPtr ctx_;
    MonomialOrder ord_;
    std::vector<GPoly<F>> gb_;
    std::vector<Monomial> lms_;
    Deadline dl_;
    bool unit_ = false, zero_dim_ = false;
    std::vector<Monomial> basis_;
    std::map<Monomial, size_t> index_;
    std::vector<FMat<F>> mult_;
};

// Candidate parametrization data over a generic field, ascending coefficient
// vectors; q monic of degree dim when the form separates.
template <class F>
struct RurData {
    std::vector<F> q, q0;
    std::vector<std::vector<F>> qi;
};

// Shape-lemma parametrization from a separating form via the trace formulas;
// nullopt when lambda fails to separate (detected by degree deficiency).
// Assumes the algebra is radical.
template <class F>
std::optional<RurData<F>> try_rur(const QuotientAlgebra<F>& alg, const std::vector<Rational>& lambda,
                                  const Deadline& dl = {}) {
    const size_t d = alg.dim();
    FMat<F> mt = alg.form_matrix(lambda);
    std::vector<F> q = krylov_minpoly(mt, alg.coords_of_one(), dl);
    if (q.size() != d + 1) return std::nullopt;  // degree deficiency: not separating

    RurData<F> out;
    out.q = std::move(q);
    out.q0 = fup::derivative(out.q);

    std::vector<FMat<F>> pows;  // M_t^l for l = 0..d-1
    pows.push_back(FMat<F>::identity(d));
    for (size_t l = 1; l < d; ++l) {
        dl.check("trace powers");
        pows.push_back(pows.back() * mt);
    }
    const std::vector<F>& b = out.q;
    out.qi.assign(alg.var_count(), {});
    for (size_t i = 0; i < alg.var_count(); ++i) {
        std::vector<F> s(d, F());  // s[l] = Tr(M_{x_i} M_t^l)
        for (size_t l = 0; l < d; ++l) s[l] = alg.mult(static_cast<VarId>(i)).trace_product(pows[l]);
        std::vector<F> g(d, F());
        for (size_t l = 0; l < d; ++l)
            for (size_t k = 0; k + l + 1 <= d; ++k) g[l] += s[k] * b[l + k + 1];
        fup::trim(g);
        out.qi[i] = std::move(g);
    }
    return out;
}

}  // namespace sdphom
