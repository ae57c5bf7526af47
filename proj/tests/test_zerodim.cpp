#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sdphom/zerodim.hpp"

#include <random>

using namespace sdphom;

namespace {

// Vanishing ideal of an explicit point list, built by intersecting the
// maximal ideals of the individual points.
std::vector<MPoly> point_ideal(const CtxPtr& ctx, const std::vector<std::vector<Rational>>& pts) {
    std::vector<MPoly> acc;
    bool first = true;
    for (const auto& p : pts) {
        std::vector<MPoly> m;
        for (VarId v = 0; v < ctx->size(); ++v)
            m.push_back(MPoly::variable(ctx, v) - MPoly::constant(ctx, p[v]));
        acc = first ? m : intersect_ideals(acc, m);
        first = false;
    }
    return acc;
}

void check_matches_oracle(const ZeroDimParam& par, const std::vector<std::vector<Rational>>& pts) {
    auto oracle = oracles::interp_param(pts, par.lambda);
    CHECK(par.q == oracle.q);
    CHECK(par.q0 == oracle.q0);
    REQUIRE(par.qi.size() == oracle.qi.size());
    for (size_t i = 0; i < par.qi.size(); ++i) CHECK(par.qi[i] == oracle.qi[i]);
}

}  // namespace

TEST_CASE("single rational point parametrizes with unit denominators") {
    auto ctx = make_ctx({"x1", "x2"});
    auto par = zero_dim_param(parse_polys(ctx, {"x1 - 1", "x2 - 1"}));
    CHECK(par.lambda == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(par.q == UPoly::X() - UPoly(1));
    CHECK(par.q0 == UPoly(1));
    CHECK(par.qi[0] == UPoly(1));
    CHECK(par.qi[1] == UPoly(1));
    CHECK(par.complex_points() == 1);
    check_matches_oracle(par, {{Rational(1), Rational(1)}});
}

TEST_CASE("two points on the diagonal match the interpolation oracle") {
    auto ctx = make_ctx({"x1", "x2"});
    std::vector<std::vector<Rational>> pts{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
    auto par = zero_dim_param(point_ideal(ctx, pts));
    CHECK(par.lambda == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(par.q == UPoly::X() * UPoly::X() - UPoly::X());
    CHECK(par.qi[0] == UPoly::X());
    CHECK(par.qi[1] == UPoly::X());
    check_matches_oracle(par, pts);
}

TEST_CASE("ladder skips a non-separating coordinate form") {
    auto ctx = make_ctx({"x", "y"});
    std::vector<std::vector<Rational>> pts{{Rational(0), Rational(0)}, {Rational(0), Rational(1)}};
    auto par = zero_dim_param(point_ideal(ctx, pts));
    CHECK(par.lambda == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(par.q == UPoly::X() * UPoly::X() - UPoly::X());
    CHECK(par.qi[0].is_zero());
    CHECK(par.qi[1] == UPoly::X());
    check_matches_oracle(par, pts);
}

TEST_CASE("conjugate points stay exact") {
    auto ctx = make_ctx({"x"});
    auto par = zero_dim_param(parse_polys(ctx, {"x^2 - 2"}));
    CHECK(par.q == UPoly::X() * UPoly::X() - UPoly(2));
    CHECK(par.q0 == UPoly(2) * UPoly::X());
    CHECK(par.qi[0] == UPoly(4));
    CHECK(par.complex_points() == 2);
    CHECK(residuals_vanish(par, parse_polys(ctx, {"x^2 - 2"})));
}

TEST_CASE("non-radical input is radicalized") {
    auto ctx = make_ctx({"x"});
    auto par = zero_dim_param(parse_polys(ctx, {"x^2"}));
    CHECK(par.q == UPoly::X());
    CHECK(par.q0 == UPoly(1));
    CHECK(par.qi[0].is_zero());
    CHECK(par.complex_points() == 1);

    auto c2 = make_ctx({"x", "y"});
    auto par2 = zero_dim_param(parse_polys(c2, {"x^2 - 2*x + 1", "y^2 - 4*y + 4"}));
    CHECK(par2.complex_points() == 1);
    check_matches_oracle(par2, {{Rational(1), Rational(2)}});
}

TEST_CASE("empty and positive-dimensional inputs are classified") {
    auto ctx = make_ctx({"x", "y"});
    auto par = zero_dim_param(parse_polys(ctx, {"x", "x - 1"}));
    CHECK(par.no_points());
    CHECK(par.q == UPoly(1));
    CHECK(par.q0 == UPoly(1));
    CHECK(par.complex_points() == 0);
    CHECK_THROWS_AS(zero_dim_param(parse_polys(ctx, {"x - y"})), NotZeroDimensional);
    CHECK_THROWS_AS(zero_dim_param(std::vector<MPoly>{MPoly(ctx)}), NotZeroDimensional);
}

TEST_CASE("random point sets round-trip through the parametrization") {
    auto ctx = make_ctx({"x", "y"});
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int round = 0; round < 5; ++round) {
        std::vector<std::vector<Rational>> pts;
        while (pts.size() < 3) {
            std::vector<Rational> p{Rational(d(rng)), Rational(d(rng), 1 + (rng() % 3))};
            bool dup = false;
            for (const auto& q : pts) dup = dup || q == p;
            if (!dup) pts.push_back(p);
        }
        auto gens = point_ideal(ctx, pts);
        auto par = zero_dim_param(gens);
        CHECK(par.complex_points() == pts.size());
        CHECK(residuals_vanish(par, gens));
        check_matches_oracle(par, pts);
        // structural invariants
        CHECK(par.q == par.q.monic());
        CHECK(squarefree_part(par.q) == par.q);
        CHECK(gcd(par.q, par.q0).deg() == 0);
        for (const auto& qi : par.qi) CHECK(qi.deg() < par.q.deg());
    }
}

TEST_CASE("audit counters certify every parametrization") {
    CHECK(ParamAudit::created.load() > 0);
    CHECK(ParamAudit::created.load() == ParamAudit::verified.load());
}

TEST_CASE("separating candidate ladder is deterministic") {
    CHECK(separating_candidate(3, 0) == std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
    CHECK(separating_candidate(3, 2) == std::vector<Rational>{Rational(0), Rational(0), Rational(1)});
    CHECK(separating_candidate(3, 3) == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
    CHECK(separating_candidate(3, 4) == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
    CHECK(separating_candidate(4, 6) ==
          std::vector<Rational>{Rational(1), Rational(-1), Rational(2), Rational(-2)});
    CHECK(separating_candidate(3, 6) == std::vector<Rational>{Rational(1), Rational(3), Rational(9)});
}
