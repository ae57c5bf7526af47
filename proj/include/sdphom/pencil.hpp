#pragma once

#include "sdphom/polymatrix.hpp"
#include "sdphom/realroots.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sdphom {

// The linear matrix A(x) = A0 + x1 A1 + ... + xn An, all Ai symmetric m x m.
struct SymmetricPencil {
    int m = 0, n = 0;
    std::vector<QMatrix> mats;  // A0 first

    void validate() const;
    QMatrix at(const std::vector<Rational>& x) const;

    // A(x), plus eps*B when given, as a matrix of polynomials. x_ids lists
    // the context ids standing for x1..xn.
    PolyMatrix symbol(const CtxPtr& ctx, const std::vector<VarId>& x_ids) const;
    PolyMatrix symbol_perturbed(const CtxPtr& ctx, const std::vector<VarId>& x_ids, VarId eps_id,
                                const QMatrix& b) const;
};

struct ObjectiveForm {
    std::vector<Rational> coeff;

    Rational at(const std::vector<Rational>& x) const;
    MPoly symbol(const CtxPtr& ctx, const std::vector<VarId>& x_ids) const;
};

struct PerturbationMatrix {
    QMatrix b;
    uint64_t seed = 0;
};

enum class PsdVerdict { PD, PSD, NotPsd };

// Exact spectrahedron membership witness: the signs of the coefficients
// c_0..c_{m-1} of det(tI - A(x)). With eigenvalues all real, A(x) is PSD
// exactly when (-1)^(m-k) c_k >= 0 for every k, and PD when strict; the
// multiplicity of the zero eigenvalue is the index of the lowest nonzero
// coefficient.
struct PSDCertificate {
    PsdVerdict verdict = PsdVerdict::NotPsd;
    int rank = 0;
    std::vector<int> coeff_signs;

    bool feasible() const { return verdict != PsdVerdict::NotPsd; }
};

// Certificate from the characteristic-coefficient signs alone; signs lists
// sign(c_0)..sign(c_{m-1}).
PSDCertificate certificate_from_signs(std::vector<int> signs, int m);

// Certificate of a concrete symmetric rational matrix.
PSDCertificate psd_certificate(const QMatrix& s);

PSDCertificate psd_check(const SymmetricPencil& a, const std::vector<Rational>& x);

// A point whose coordinates are qi(alpha)/q0(alpha) for a common root alpha
// of q; exact arithmetic throughout, intervals only for display.
struct AlgebraicPoint {
    UPoly q, q0;
    std::vector<UPoly> qi;
    AlgebraicNumber alpha;

    size_t dim() const { return qi.size(); }
    bool rational() const { return alpha.exact(); }
    std::vector<Rational> rational_coords() const;
    AlgebraicNumber coord(size_t i) const { return algebraic_ratio(alpha, qi.at(i), q0); }
    RatInterval coord_box(size_t i, const Rational& w) const {
        return ratio_interval(qi.at(i), q0, alpha, w);
    }
};

PSDCertificate psd_check(const SymmetricPencil& a, const AlgebraicPoint& x);

// c_0..c_{m-1} of det(tI - A(x)) as polynomials in the given x variables.
std::vector<MPoly> charpoly_coeffs(const SymmetricPencil& a, const CtxPtr& ctx_x,
                                   const std::vector<VarId>& x_ids);

// B = M^T M + I for an integer matrix M with entries in [-10, 10] derived
// deterministically from the seed; positive definite by construction.
PerturbationMatrix sample_perturbation(int m, uint64_t seed);

// Exact solution of A(x) = 0 (entrywise linear system), if any.
std::optional<std::vector<Rational>> detect_zero_point(const SymmetricPencil& a);

struct Instance {
    SymmetricPencil pencil;
    ObjectiveForm objective;
};

// JSON document {"m":int, "n":int, "matrices":[[..],..], "objective":[..]}
// with rationals encoded as "p/q" strings (plain integers also accepted).
Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& inst);

// A bare JSON 2D array of rationals, used for explicit perturbation input.
QMatrix parse_matrix_document(const std::string& json_text);

}  // namespace sdphom
