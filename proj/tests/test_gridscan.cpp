#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sdphom/gridscan.hpp"

#include <cmath>
#include <random>

using namespace sdphom;

namespace {

SymmetricPencil segment_pencil() {
    SymmetricPencil a;
    a.m = 2;
    a.n = 1;
    a.mats = {QMatrix::from_rows({{0, 0}, {0, 1}}), QMatrix::from_rows({{1, 0}, {0, -1}})};
    return a;
}

const char* kPointInstance = R"({
  "m": 2,
  "n": 2,
  "matrices": [
    [["1", "-1"], ["-1", "-1"]],
    [["-1", "0"], ["0", "1"]],
    [["0", "1"], ["1", "0"]]
  ],
  "objective": ["88", "-94"]
})";

GridScanOptions box1(double lo, double hi) {
    GridScanOptions o;
    o.lo = {lo};
    o.hi = {hi};
    return o;
}

GridScanOptions box2(double lo, double hi) {
    GridScanOptions o;
    o.lo = {lo, lo};
    o.hi = {hi, hi};
    return o;
}

}  // namespace

TEST_CASE("min_eigenvalue agrees with the jacobi oracle on random matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int m = 1; m <= 5; ++m) {
        for (int trial = 0; trial < 20; ++trial) {
            QMatrix q(m, m);
            for (int i = 0; i < m; ++i) {
                for (int j = i; j < m; ++j) {
                    Rational v(entry(rng), 1 + (trial % 3));
                    q.at(i, j) = v;
                    q.at(j, i) = v;
                }
            }
            std::vector<std::vector<double>> d(static_cast<size_t>(m),
                                               std::vector<double>(static_cast<size_t>(m)));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    q.at(i, j).to_double();
            double mine = min_eigenvalue(d);
            double ref = oracles::jacobi_eigenvalues(q).front();
            CHECK(std::abs(mine - ref) < 1e-8);
        }
    }
}

TEST_CASE("scan finds the segment minimum at the left endpoint") {
    Instance inst{segment_pencil(), ObjectiveForm{{Rational(1)}}};
    GridScanResult r = grid_scan_serial(inst, box1(-2, 2));
    REQUIRE(r.feasible_found);
    CHECK(std::abs(r.value) < 1e-6);
    CHECK(std::abs(r.argmin[0]) < 1e-6);
    CHECK_FALSE(r.on_boundary);
    CHECK(r.feasible > 0);
}

TEST_CASE("feasibility-seeking zoom locates a measure-zero feasible set") {
    Instance inst = parse_instance(kPointInstance);
    GridScanResult r = grid_scan_serial(inst, box2(-8, 8));
    REQUIRE(r.feasible_found);
    CHECK(std::abs(r.value - (-6.0)) < 1e-4);
    CHECK(std::abs(r.argmin[0] - 1.0) < 1e-4);
    CHECK(std::abs(r.argmin[1] - 1.0) < 1e-4);
}

TEST_CASE("descent to the box edge raises the boundary flag") {
    SymmetricPencil ray;  // diag(x, x + 1), objective -x decreases along the ray
    ray.m = 2;
    ray.n = 1;
    ray.mats = {QMatrix::from_rows({{0, 0}, {0, 1}}), QMatrix::identity(2)};
    Instance inst{ray, ObjectiveForm{{Rational(-1)}}};
    GridScanResult r = grid_scan_serial(inst, box1(-8, 8));
    REQUIRE(r.feasible_found);
    CHECK(r.on_boundary);
    CHECK(std::abs(r.value - (-8.0)) < 1e-9);
}

TEST_CASE("an empty spectrahedron yields no feasible node") {
    SymmetricPencil rot;  // [[x, 1], [1, -x]], det = -x^2 - 1
    rot.m = 2;
    rot.n = 1;
    rot.mats = {QMatrix::from_rows({{0, 1}, {1, 0}}), QMatrix::from_rows({{1, 0}, {0, -1}})};
    GridScanResult r = grid_scan_serial({rot, ObjectiveForm{{Rational(1)}}}, box1(-8, 8));
    CHECK_FALSE(r.feasible_found);
    CHECK(r.feasible == 0);
    CHECK(r.evaluated > 0);
}

TEST_CASE("variable-free scan is a single psd test") {
    SymmetricPencil cns;
    cns.m = 2;
    cns.n = 0;
    cns.mats = {QMatrix::identity(2)};
    GridScanOptions opt;
    GridScanResult r = grid_scan_serial({cns, ObjectiveForm{{}}}, opt);
    CHECK(r.feasible_found);
    CHECK(r.value == 0.0);
    cns.mats = {QMatrix::from_rows({{-1, 0}, {0, 1}})};
    CHECK_FALSE(grid_scan_serial({cns, ObjectiveForm{{}}}, opt).feasible_found);
}

TEST_CASE("serial and parallel kernels return bit-identical results") {
    std::vector<Instance> cases;
    cases.push_back({segment_pencil(), ObjectiveForm{{Rational(1)}}});
    cases.push_back(parse_instance(kPointInstance));
    std::mt19937 rng(19);
    std::uniform_int_distribution<long> entry(-5, 5);
    for (int trial = 0; trial < 3; ++trial) {
        SymmetricPencil a;
        a.m = 3;
        a.n = 2;
        for (int k = 0; k <= a.n; ++k) {
            QMatrix q(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) {
                    Rational v(entry(rng));
                    q.at(i, j) = v;
                    q.at(j, i) = v;
                }
            if (k == 0)
                for (int i = 0; i < 3; ++i) q.at(i, i) = q.at(i, i) + Rational(6);
            a.mats.push_back(q);
        }
        cases.push_back({a, ObjectiveForm{{Rational(entry(rng)), Rational(entry(rng))}}});
    }
    for (const Instance& inst : cases) {
        GridScanOptions opt;
        opt.lo.assign(static_cast<size_t>(inst.pencil.n), -6.0);
        opt.hi.assign(static_cast<size_t>(inst.pencil.n), 6.0);
        opt.points_per_axis = 61;
        opt.zoom_rounds = 6;
        GridScanResult s = grid_scan_serial(inst, opt);
        opt.workers = 4;
        GridScanResult p = grid_scan_parallel(inst, opt);
        CHECK(s.feasible_found == p.feasible_found);
        CHECK(s.value == p.value);
        CHECK(s.argmin == p.argmin);
        CHECK(s.on_boundary == p.on_boundary);
        CHECK(s.evaluated == p.evaluated);
        CHECK(s.feasible == p.feasible);
    }
}

TEST_CASE("scan options are validated") {
    Instance inst{segment_pencil(), ObjectiveForm{{Rational(1)}}};
    GridScanOptions opt;  // missing box
    CHECK_THROWS_AS(grid_scan_serial(inst, opt), Error);
    opt = box1(2, -2);
    CHECK_THROWS_AS(grid_scan_serial(inst, opt), Error);
    opt = box1(-2, 2);
    opt.points_per_axis = 0;
    CHECK_THROWS_AS(grid_scan_serial(inst, opt), Error);
    opt = box1(-2, 2);
    opt.zoom_factor = 0.9;
    CHECK_THROWS_AS(grid_scan_serial(inst, opt), Error);
}
