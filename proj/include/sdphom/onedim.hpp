#pragma once

#include "sdphom/ideal.hpp"

#include <string>
#include <vector>

namespace sdphom {

class NotCurve : public Error {
public:
    explicit NotCurve(const std::string& what) : Error(what) {}
};

// Rational parametrization of a curve: coordinates are qi(t,u)/q0(t,u) on
// q(t,u) = 0, with u a distinguished original variable (the free parameter)
// and t a separating linear form in the remaining kept variables. Components
// of the curve on which the parameter is constant ("vertical" over the
// u-line) are invisible to the (t,u) form; they remain in `basis`, the
// reduced basis of the full projected ideal, which is also what downstream
// limit computations consume.
struct OneDimParam {
    CtxPtr out_ctx;                    // the two output variables, named t and u
    std::string param_var;             // original variable playing u
    std::vector<std::string> coords;   // kept coordinate names, aligned with qi
    std::vector<Rational> lambda;      // t = lambda . coords
    MPoly q, q0;                       // q0 = dq/dt, scaled jointly with qi
    std::vector<MPoly> qi;

    CtxPtr basis_ctx;                  // coords and param in original order
    std::vector<MPoly> basis;

    // False when every component of the projected curve is vertical, so no
    // branch dominates the parameter line and the (t,u) data is empty.
    bool has_branch() const { return !q.is_constant(); }
    uint32_t degree_in_t() const { return q.degree_in(out_ctx->id("t")); }
};

// Parametrizes the Zariski closure of the projection of the curve Z(gens)
// onto the kept variables plus the parameter. The parameter is `eps` when
// the context has it, otherwise the last kept variable; the remaining kept
// variables become coordinates. Requires dimension 1.
OneDimParam one_dim_param(const std::vector<MPoly>& gens, const std::vector<std::string>& keep,
                          const Deadline& dl = {});

}  // namespace sdphom
