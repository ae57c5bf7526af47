#pragma once

#include "sdphom/pencil.hpp"

#include <cstdint>
#include <vector>

namespace sdphom {

// Floating-point brute-force minimization of the objective over the
// spectrahedron. Every node of a regular grid on a box is tested for
// feasibility by an eigenvalue threshold; the box then zooms toward the best
// feasible node, or toward the least-infeasible node while none has been
// found, and the scan repeats. Non-certified by construction; this is the
// numeric cross-check for the exact solver, not a solver itself.
struct GridScanOptions {
    std::vector<double> lo, hi;   // scan box, one entry per pencil variable
    int points_per_axis = 121;
    int zoom_rounds = 24;
    double zoom_factor = 0.15;    // next half-width as a fraction of current width
    double psd_tolerance = 1e-9;  // lambda_min >= -tolerance counts as feasible
    int workers = 1;              // 0 = all hardware threads, 1 = serial

    void validate(int n) const;
};

struct GridScanResult {
    bool feasible_found = false;
    double value = 0.0;
    std::vector<double> argmin;
    // best node of the first, full-box round sits on the box edge; the true
    // minimum may lie outside the box (or at infinity)
    bool on_boundary = false;
    std::uint64_t evaluated = 0;
    std::uint64_t feasible = 0;
};

// Smallest eigenvalue of a dense symmetric matrix, cyclic Jacobi sweeps.
double min_eigenvalue(std::vector<std::vector<double>> sym);

// The serial reference kernel and the OpenMP kernel. Nodes are evaluated
// independently and ties break toward the smaller flat grid index, so the
// two return bit-identical results.
GridScanResult grid_scan_serial(const Instance& inst, const GridScanOptions& opt);
GridScanResult grid_scan_parallel(const Instance& inst, const GridScanOptions& opt);

// Dispatches on opt.workers.
GridScanResult grid_scan(const Instance& inst, const GridScanOptions& opt);

}  // namespace sdphom
