#pragma once

#include "sdphom/pencil.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdphom {

// Equations cutting out the rank-r locus through kernel vectors: columns of
// an m x (m-r) matrix Y annihilated by A(x) (+ eps B), with the rows listed
// in iota pinned to the identity. Only the entries of (A + eps B) Y that
// survive the symmetry reduction are kept; with w = m - r that leaves
// c = w (m + r + 1) / 2 polynomials over (eps, x, ybar).
struct IncidenceSystem {
    int m = 0, n = 0, r = 0;
    std::vector<int> iota;  // 1-based pinned rows, ascending
    std::optional<QMatrix> b;

    CtxPtr ctx;  // eps (when b is present), x1..xn, then ybar row-major
    bool has_eps = false;
    VarId eps_id = 0;
    std::vector<VarId> x_ids, y_ids;
    std::vector<std::pair<int, int>> y_pos;  // (row, col) of each ybar entry

    std::vector<MPoly> polys;
    int c = 0;

    int width() const { return m - r; }
};

// First-order conditions for minimizing the objective over the rank
// stratum: g = sum_i z_i grad f_i - (grad objective, 0), gradients taken in
// (x, ybar). Lives in a context extending the incidence one by z1..zc.
struct LagrangeSystem {
    IncidenceSystem incidence;
    ObjectiveForm objective;

    CtxPtr ctx;
    bool has_eps = false;
    VarId eps_id = 0;
    std::vector<VarId> x_ids, y_ids, z_ids;

    std::vector<MPoly> f;  // incidence equations over the extended context
    std::vector<MPoly> g;  // n + r(m-r) stationarity equations
    int total_vars = 0;    // c + n + r(m-r), the count without eps

    std::vector<MPoly> full_system() const;
};

// b absent builds the unperturbed system (no eps variable in the context).
IncidenceSystem build_incidence(const SymmetricPencil& a, const std::optional<QMatrix>& b, int r,
                                std::vector<int> iota);

LagrangeSystem build_lagrange(const IncidenceSystem& inc, const ObjectiveForm& objective);

// The same variety before dropping redundant entries: every entry of
// (A + eps B) Y for a fully variable Y, plus the pinning equations
// Y_iota = I. Kept for cross-checking the reduction.
struct UnreducedIncidence {
    CtxPtr ctx;
    std::vector<MPoly> products;  // all m(m-r) entries, row-major
    std::vector<MPoly> pinning;   // (m-r)^2 entries of Y_iota - I
};
UnreducedIncidence build_incidence_unreduced(const SymmetricPencil& a,
                                             const std::optional<QMatrix>& b, int r,
                                             const std::vector<int>& iota);

enum class Regularity { Regular, Singular };

struct RegularityReport {
    Regularity verdict = Regularity::Singular;
    std::vector<MPoly> witness;  // Groebner basis of the singular locus when singular

    bool regular() const { return verdict == Regularity::Regular; }
};

// Fixes eps = eps0 (ignored when the system has no perturbation variable)
// and tests whether the instantiated variety is smooth: the ideal of the
// equations plus all maximal minors of their Jacobian must be the unit
// ideal.
RegularityReport regularity_check(const IncidenceSystem& inc, const Rational& eps0);

// All pinning choices for a given rank: the size-(m-r) subsets of {1..m},
// lexicographic.
std::vector<std::vector<int>> iota_subsets(int m, int r);

std::string dump(const IncidenceSystem& inc);
std::string dump(const LagrangeSystem& sys);

}  // namespace sdphom
