#pragma once

#include "sdphom/quotient.hpp"
#include "sdphom/upoly.hpp"

#include <atomic>
#include <cstdint>

namespace sdphom {

class NotZeroDimensional : public Error {
public:
    explicit NotZeroDimensional(const std::string& what) : Error(what) {}
};

// Rational parametrization of a zero-dimensional variety: each root t* of q
// yields the point with coordinates x_i = qi[i](t*) / q0(t*). The variety is
// taken radical, so q is squarefree, q0 = q', and gcd(q, q0) = 1. The empty
// case is encoded as q = 1, q0 = 1, all qi = 0.
struct ZeroDimParam {
    CtxPtr ctx;                    // parametrized variables, in context order
    std::vector<Rational> lambda;  // separating form t = lambda . x
    UPoly q, q0;
    std::vector<UPoly> qi;

    bool no_points() const { return q.deg() <= 0; }
    size_t complex_points() const { return q.deg() <= 0 ? 0 : static_cast<size_t>(q.deg()); }
};

// Global tallies for the always-on internal residual verification; every
// parametrization handed out has been checked against its defining ideal.
struct ParamAudit {
    static std::atomic<uint64_t> created;
    static std::atomic<uint64_t> verified;
};

// Exact residual check: the numerator of p(q1/q0, ..., qk/q0) vanishes
// modulo q for every generator p.
bool residuals_vanish(const ZeroDimParam& par, const std::vector<MPoly>& gens);

// Deterministic separating-form ladder: coordinate forms first, then
// all-ones, arithmetic, alternating, then geometric progressions.
std::vector<Rational> separating_candidate(size_t k, size_t attempt);

ZeroDimParam zero_dim_param(const std::vector<MPoly>& gens, const Deadline& dl = {});

}  // namespace sdphom
