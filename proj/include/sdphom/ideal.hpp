#pragma once

#include "sdphom/deadline.hpp"
#include "sdphom/mpoly.hpp"

#include <optional>
#include <vector>

namespace sdphom {

// Reduced Groebner basis of the ideal generated by gens under the given
// order: basis elements are monic, fully inter-reduced, sorted by decreasing
// leading monomial. Deterministic for fixed input.
std::vector<MPoly> groebner(const std::vector<MPoly>& gens, const MonomialOrder& ord,
                            const Deadline& dl = {});

// Normal form of p modulo a Groebner basis under the same order.
MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis, const MonomialOrder& ord);

bool ideal_contains(const std::vector<MPoly>& groebner_basis, const MPoly& p, const MonomialOrder& ord);

inline bool basis_is_unit(const std::vector<MPoly>& basis) {
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

// Same reduced grevlex basis <=> same ideal.
bool ideal_equal(const std::vector<MPoly>& gens_a, const std::vector<MPoly>& gens_b,
                 const Deadline& dl = {});

// Basis of I ∩ Q[vars outside `front`], i.e. elimination of the `front`
// variables, returned over the same context.
std::vector<MPoly> eliminate(const std::vector<MPoly>& gens, const std::vector<VarId>& front,
                             const Deadline& dl = {});

// Saturation I : h^inf by a single polynomial (Rabinowitsch variable).
std::vector<MPoly> saturate(const std::vector<MPoly>& gens, const MPoly& h, const Deadline& dl = {});

// Saturation I : J^inf by the ideal J = <hs>, the intersection of the
// principal saturations. Components killed are exactly those on which every
// element of hs vanishes identically.
std::vector<MPoly> saturate_by_ideal(const std::vector<MPoly>& gens, const std::vector<MPoly>& hs,
                                     const Deadline& dl = {});

// Ideal intersection via the standard tag-variable construction; the variety
// of the result is the union of the two varieties.
std::vector<MPoly> intersect_ideals(const std::vector<MPoly>& a, const std::vector<MPoly>& b,
                                    const Deadline& dl = {});

// Krull dimension of the zero set over C: nullopt when the variety is empty,
// otherwise the combinatorial dimension read off the grevlex initial ideal.
std::optional<int> dimension(const std::vector<MPoly>& gens, const Deadline& dl = {});

// Restricts polynomials of gens supported on `keep` to a fresh context made
// of those variables (in context order); throws if some basis element
// escapes. Convenience for post-elimination context surgery.
struct RestrictedIdeal {
    CtxPtr ctx;
    std::vector<MPoly> gens;
    std::vector<VarId> kept_ids;  // original ids, aligned with ctx order
};
RestrictedIdeal restrict_to_vars(const CtxPtr& ctx, const std::vector<MPoly>& gens,
                                 const std::vector<VarId>& keep);

}  // namespace sdphom
