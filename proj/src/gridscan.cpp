#include "sdphom/gridscan.hpp"

#include "sdphom/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdphom {

namespace {

using DMatrix = std::vector<std::vector<double>>;

struct ScanData {
    std::vector<DMatrix> mats;  // A0 first, doubles
    std::vector<double> coeff;
    int m = 0, n = 0;
    double tol = 0.0;
};

struct Box {
    std::vector<double> lo, hi;
    int points = 0;

    double coord(int axis, std::uint64_t k) const {
        if (points == 1) return (lo[axis] + hi[axis]) / 2;
        double step = (hi[axis] - lo[axis]) / (points - 1);
        return lo[axis] + step * static_cast<double>(k);
    }

    std::vector<double> node(std::uint64_t flat, int n) const {
        std::vector<double> x(n);
        for (int j = 0; j < n; ++j) {
            x[j] = coord(j, flat % points);
            flat /= points;
        }
        return x;
    }

    std::uint64_t total(int n) const {
        std::uint64_t t = 1;
        for (int j = 0; j < n; ++j) t *= static_cast<std::uint64_t>(points);
        return t;
    }
};

struct NodeEval {
    double lambda_min = 0.0;
    double value = 0.0;
    bool feasible = false;
};

NodeEval eval_node(const ScanData& d, const std::vector<double>& x) {
    DMatrix a = d.mats[0];
    for (int j = 0; j < d.n; ++j) {
        for (int r = 0; r < d.m; ++r) {
            for (int c = 0; c < d.m; ++c) a[r][c] += x[j] * d.mats[j + 1][r][c];
        }
    }
    NodeEval out;
    out.lambda_min = min_eigenvalue(std::move(a));
    out.feasible = out.lambda_min >= -d.tol;
    double v = 0.0;
    for (int j = 0; j < d.n; ++j) v += d.coeff[j] * x[j];
    out.value = v;
    return out;
}

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kNoIdx = ~std::uint64_t{0};

// Deterministic best-of-round record: smaller key wins, ties go to the
// smaller flat index, so the reduction is order independent.
struct Best {
    double key = kInf;
    std::uint64_t idx = kNoIdx;
};

bool better(const Best& a, const Best& b) {
    return a.key < b.key || (a.key == b.key && a.idx < b.idx);
}

struct RoundResult {
    Best feas;            // key = objective value, feasible nodes only
    Best seek;            // key = -lambda_min, all nodes
    std::uint64_t evaluated = 0;
    std::uint64_t feasible = 0;
};

void account(RoundResult& rr, const NodeEval& e, std::uint64_t f) {
    ++rr.evaluated;
    if (e.feasible) {
        ++rr.feasible;
        Best cand{e.value, f};
        if (better(cand, rr.feas)) rr.feas = cand;
    }
    Best lam{-e.lambda_min, f};
    if (better(lam, rr.seek)) rr.seek = lam;
}

void merge(RoundResult& into, const RoundResult& part) {
    into.evaluated += part.evaluated;
    into.feasible += part.feasible;
    if (better(part.feas, into.feas)) into.feas = part.feas;
    if (better(part.seek, into.seek)) into.seek = part.seek;
}

RoundResult scan_round_serial(const ScanData& d, const Box& box) {
    RoundResult rr;
    std::uint64_t total = box.total(d.n);
    for (std::uint64_t f = 0; f < total; ++f) account(rr, eval_node(d, box.node(f, d.n)), f);
    return rr;
}

RoundResult scan_round_parallel(const ScanData& d, const Box& box, int workers) {
#ifdef _OPENMP
    int threads = workers == 0 ? omp_get_max_threads() : workers;
    if (threads < 1) threads = 1;
    std::vector<RoundResult> parts(static_cast<size_t>(threads));
    std::int64_t total = static_cast<std::int64_t>(box.total(d.n));
#pragma omp parallel num_threads(threads)
    {
        RoundResult& mine = parts[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t f = 0; f < total; ++f) {
            std::uint64_t uf = static_cast<std::uint64_t>(f);
            account(mine, eval_node(d, box.node(uf, d.n)), uf);
        }
    }
    RoundResult rr;
    for (const RoundResult& part : parts) merge(rr, part);
    return rr;
#else
    (void)workers;
    return scan_round_serial(d, box);
#endif
}

bool on_box_edge(const Box& box, std::uint64_t flat, int n) {
    if (box.points <= 1) return false;
    for (int j = 0; j < n; ++j) {
        std::uint64_t k = flat % static_cast<std::uint64_t>(box.points);
        if (k == 0 || k + 1 == static_cast<std::uint64_t>(box.points)) return true;
        flat /= static_cast<std::uint64_t>(box.points);
    }
    return false;
}

template <typename RoundFn>
GridScanResult drive(const Instance& inst, const GridScanOptions& opt, RoundFn round) {
    inst.pencil.validate();
    opt.validate(inst.pencil.n);
    ScanData d;
    d.m = inst.pencil.m;
    d.n = inst.pencil.n;
    d.tol = opt.psd_tolerance;
    for (const QMatrix& q : inst.pencil.mats) {
        DMatrix md(static_cast<size_t>(d.m), std::vector<double>(static_cast<size_t>(d.m)));
        for (int r = 0; r < d.m; ++r)
            for (int c = 0; c < d.m; ++c) md[r][c] = q.at(r, c).to_double();
        d.mats.push_back(std::move(md));
    }
    for (const Rational& c : inst.objective.coeff) d.coeff.push_back(c.to_double());

    GridScanResult res;
    if (d.n == 0) {
        NodeEval e = eval_node(d, {});
        res.evaluated = 1;
        res.feasible = e.feasible ? 1 : 0;
        res.feasible_found = e.feasible;
        res.value = e.feasible ? e.value : 0.0;
        return res;
    }

    Box orig{opt.lo, opt.hi, opt.points_per_axis};
    Box box = orig;
    res.value = kInf;
    for (int r = 0; r <= opt.zoom_rounds; ++r) {
        RoundResult rr = round(d, box);
        res.evaluated += rr.evaluated;
        res.feasible += rr.feasible;
        std::uint64_t center_idx;
        if (rr.feas.idx != kNoIdx) {
            center_idx = rr.feas.idx;
            if (!res.feasible_found || rr.feas.key < res.value) {
                res.feasible_found = true;
                res.value = rr.feas.key;
                res.argmin = box.node(rr.feas.idx, d.n);
            }
        } else {
            center_idx = rr.seek.idx;
        }
        if (r == 0) res.on_boundary = on_box_edge(box, center_idx, d.n);
        std::vector<double> center = box.node(center_idx, d.n);
        Box next = box;
        bool shrunk = false;
        for (int j = 0; j < d.n; ++j) {
            double hw = opt.zoom_factor * (box.hi[j] - box.lo[j]);
            next.lo[j] = std::max(orig.lo[j], center[j] - hw);
            next.hi[j] = std::min(orig.hi[j], center[j] + hw);
            if (next.hi[j] - next.lo[j] < box.hi[j] - box.lo[j]) shrunk = true;
        }
        if (!shrunk) break;
        box = next;
    }
    if (!res.feasible_found) res.value = 0.0;
    return res;
}

}  // namespace

void GridScanOptions::validate(int n) const {
    if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
        throw Error("grid scan box must have one [lo, hi] pair per variable");
    for (int j = 0; j < n; ++j)
        if (!(lo[j] <= hi[j])) throw Error("grid scan box has lo > hi");
    if (points_per_axis < 1) throw Error("grid scan needs at least one point per axis");
    if (zoom_rounds < 0) throw Error("grid scan zoom rounds must be nonnegative");
    if (!(zoom_factor > 0.0 && zoom_factor <= 0.5))
        throw Error("grid scan zoom factor must lie in (0, 1/2]");
    if (workers < 0) throw Error("grid scan worker count must be nonnegative");
    double nodes = 1.0;
    for (int j = 0; j < n; ++j) nodes *= points_per_axis;
    if (nodes > 1e9) throw Error("grid scan would evaluate more than 1e9 nodes per round");
}

double min_eigenvalue(std::vector<std::vector<double>> a) {
    size_t n = a.size();
    if (n == 0) return 0.0;
    double frob2 = 0.0;
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) frob2 += a[p][q] * a[p][q];
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off <= 1e-28 * std::max(1.0, frob2)) break;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                double apq = a[p][q];
                if (apq == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lo = a[0][0];
    for (size_t p = 1; p < n; ++p) lo = std::min(lo, a[p][p]);
    return lo;
}

GridScanResult grid_scan_serial(const Instance& inst, const GridScanOptions& opt) {
    return drive(inst, opt, [](const ScanData& d, const Box& box) {
        return scan_round_serial(d, box);
    });
}

GridScanResult grid_scan_parallel(const Instance& inst, const GridScanOptions& opt) {
    return drive(inst, opt, [&opt](const ScanData& d, const Box& box) {
        return scan_round_parallel(d, box, opt.workers);
    });
}

GridScanResult grid_scan(const Instance& inst, const GridScanOptions& opt) {
    if (opt.workers == 1) return grid_scan_serial(inst, opt);
    return grid_scan_parallel(inst, opt);
}

}  // namespace sdphom
