#pragma once

#include "sdphom/bounds.hpp"
#include "sdphom/incidence.hpp"
#include "sdphom/onedim.hpp"
#include "sdphom/pencil.hpp"
#include "sdphom/zerodim.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdphom {

// Final verdict of a solve. EmptyFeasible is a joint diagnostic: no feasible
// candidate survived, which means the spectrahedron is empty or the
// objective is unbounded on it; the two cases are not separated here.
enum class SolveStatus {
    Solved,
    ZeroPointVertex,
    UnboundedBelow,
    EmptyFeasible,
    GenericityFailure,
    StratumTimeout,
};

std::string to_string(SolveStatus s);

// Process exit code the CLI maps each status to (0 for the two solved
// verdicts, distinct small codes otherwise; 1 is reserved for IO errors).
int exit_code(SolveStatus s);

struct SolveConfig {
    uint64_t seed = 1;
    // Explicit first perturbation matrix; sampled from the seed when absent.
    std::optional<QMatrix> perturbation;
    // How many fresh perturbations to try after a genericity failure.
    int reseeds = 5;
    int64_t stratum_timeout_ms = 60000;  // per-stratum budget, must be > 0
    // Worker threads for the strata loop. 0 picks the hardware default; 1
    // forces the plain serial reference path.
    int workers = 0;
    int max_rank = -1;  // highest rank stratum examined, -1 = m - 1
    bool allow_objective_perturbation = false;
    bool disable_zero_shortcircuit = false;
    // Apply the rank-r restriction of the critical system up front instead
    // of only when the dimension test demands it.
    bool eager_rank_saturation = false;

    void validate() const;
};

// Raised when a stratum's critical system stays positive-dimensional at
// every probe, or with eps free even after rank restriction. The caller
// answers by drawing a fresh perturbation matrix.
class GenericityError : public Error {
public:
    explicit GenericityError(const std::string& what) : Error(what) {}
};

enum class ConeVerdict { MinimizerAtVertex, UnboundedBelow };

// With A(xstar) = 0 the feasible set is a translated cone with apex xstar,
// so the objective is either minimized at the apex or unbounded below.
// Decides which by slicing the recession cone with ell(d) = -1 and testing
// that slice for feasibility.
ConeVerdict cone_unboundedness_test(const SymmetricPencil& a, const std::vector<Rational>& xstar,
                                    const ObjectiveForm& ell, const SolveConfig& cfg = {});

// Exact decision of whether {x : A(x) PSD} is nonempty.
bool spectrahedron_nonempty(const SymmetricPencil& a, const SolveConfig& cfg = {});

// Critical curve of one rank stratum, projected to the (eps, x) space.
struct StratumCurve {
    CtxPtr ctx;                        // eps first, then x1..xn
    std::vector<MPoly> basis;          // ideal of the projected curve
    std::optional<OneDimParam> param;  // absent when the projection is not a curve
    Rational eps_bar{0};               // probe value that certified finiteness
    bool empty = false;
    bool saturated = false;  // the rank restriction had to fire
};

// Projects the critical locus of one perturbed rank stratum onto (eps, x).
// Probes a fixed ladder of rational eps values first; a stratum that stays
// positive-dimensional at every probe, or with eps free even after rank
// restriction, throws GenericityError. The pencil is needed to form the
// minors of A + eps B for the rank restriction.
StratumCurve odp(const SymmetricPencil& a, const LagrangeSystem& lag,
                 bool eager_rank_saturation = false, const Deadline& dl = {});

// Parametrization of Z(a) ∪ Z(b) over the shared variables, deterministic
// in the inputs. Duplicate points collapse; empty inputs are identities.
ZeroDimParam union_points(const ZeroDimParam& a, const ZeroDimParam& b, const Deadline& dl = {});

// Limit points of the curve for eps -> 0: saturate by eps (dropping the
// branches contained in eps = 0 and those escaping to infinity), then slice
// with eps = 0 and parametrize. The result can contain limits reached only
// through complex or negative eps; the caller's PSD filter discards them.
ZeroDimParam cut(const StratumCurve& curve, const Deadline& dl = {});

struct GenericityReport {
    Rational eps_bar{0};
    std::optional<int> dim;  // dimension at the probe; absent when empty there
    bool finite = false;
    std::string note;
};

// Dimension probe of one stratum at a fixed eps, with notes on the obvious
// degeneracies (zero objective, unperturbed system).
GenericityReport genericity_diagnostics(const LagrangeSystem& lag, const Rational& eps_bar,
                                        const Deadline& dl = {});

struct Candidate {
    AlgebraicPoint point;
    PSDCertificate cert;
    AlgebraicNumber value;
    int r = 0;  // rank stratum the point came from
};

struct MinimizerCertificate {
    AlgebraicPoint point;
    AlgebraicNumber value;
    PSDCertificate cert;
    int r = 0;                            // winning rank stratum
    std::vector<std::vector<int>> iotas;  // pinning sets of that rank with nonempty curves
    long curve_degree = 0;                // degree of the rank parametrization
    // True when the point came from the A(x*) = 0 shortcut; the verdict then
    // rests on the sliced recession-cone feasibility test, not the homotopy.
    bool vertex_shortcut = false;
};

struct StratumAudit {
    int r = 0;
    std::vector<int> iota;
    Rational eps_bar{0};
    long curve_degree = 0;
    BigInt degree_bound;
    bool within_bound = true;
    bool saturated = false;
    bool timed_out = false;
    bool empty = true;
    int64_t elapsed_ms = 0;
};

struct SolveReport {
    SolveStatus status = SolveStatus::EmptyFeasible;
    std::vector<ZeroDimParam> rank_params;  // Q_1..Q_{m-1}, index r - 1
    std::vector<Candidate> candidates;
    std::optional<MinimizerCertificate> minimizer;
    std::vector<StratumAudit> audit;
    uint64_t perturbation_seed = 0;
    QMatrix perturbation;  // the matrix actually used by the final attempt
    int attempts = 0;      // perturbation draws consumed
    std::vector<Rational> objective_shift;  // nonempty only when opted in
    std::string note;
};

// Full solve: zero-point shortcut, rank-stratified homotopy, exact
// candidate filtering, minimizer selection.
SolveReport degenerate_sdp(const Instance& inst, const SolveConfig& cfg = {});

std::string report_to_json(const SolveReport& rep);

}  // namespace sdphom
