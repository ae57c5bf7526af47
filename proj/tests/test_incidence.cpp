#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "sdphom/ideal.hpp"
#include "sdphom/incidence.hpp"

#include <random>

using namespace sdphom;

namespace {

// Pencil [[p1 - x1, x2 - p2], [x2 - p2, x1 - p1]] whose spectrahedron is the
// single point p.
SymmetricPencil point_pencil(long p1, long p2) {
    SymmetricPencil a;
    a.m = 2;
    a.n = 2;
    a.mats = {QMatrix::from_rows({{p1, -p2}, {-p2, -p1}}), QMatrix::from_rows({{-1, 0}, {0, 1}}),
              QMatrix::from_rows({{0, 1}, {1, 0}})};
    return a;
}

SymmetricPencil random_pencil(std::mt19937& rng, int m, int n, int spread) {
    auto draw = [&](int lo, int hi) {
        return static_cast<long>(lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)));
    };
    SymmetricPencil a;
    a.m = m;
    a.n = n;
    for (int k = 0; k <= n; ++k) {
        std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m));
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) rows[i][j] = rows[j][i] = Rational(draw(-spread, spread));
        a.mats.push_back(QMatrix::from_rows(rows));
    }
    return a;
}

bool same_poly(const MPoly& p, const std::string& text) {
    return (p - MPoly::parse(p.ctx(), text)).is_zero();
}

// total degree of the monomial over just the listed variables
uint32_t group_degree(const Monomial& m, const std::vector<VarId>& vars) {
    uint32_t d = 0;
    for (VarId v : vars) d += m.deg_in(v);
    return d;
}

}  // namespace

TEST_CASE("perturbed incidence system of the worked example") {
    SymmetricPencil a = point_pencil(0, 0);
    IncidenceSystem inc = build_incidence(a, QMatrix::identity(2), 1, {1});
    CHECK(inc.c == 2);
    CHECK(inc.polys.size() == 2);
    CHECK(inc.has_eps);
    CHECK(inc.width() == 1);
    REQUIRE(inc.y_pos.size() == 1);
    CHECK(inc.y_pos[0] == std::pair<int, int>(2, 1));
    CHECK(inc.ctx->names() == std::vector<std::string>{"eps", "x1", "x2", "y2_1"});
    CHECK(same_poly(inc.polys[0], "eps - x1 + x2*y2_1"));
    CHECK(same_poly(inc.polys[1], "x2 + eps*y2_1 + x1*y2_1"));
}

TEST_CASE("unperturbed incidence system has no eps variable") {
    SymmetricPencil a = point_pencil(1, 1);
    IncidenceSystem inc = build_incidence(a, std::nullopt, 1, {1});
    CHECK(!inc.has_eps);
    CHECK(inc.ctx->names() == std::vector<std::string>{"x1", "x2", "y2_1"});
    CHECK(same_poly(inc.polys[0], "x2*y2_1 - y2_1 + 1 - x1"));
    CHECK(same_poly(inc.polys[1], "x1*y2_1 - y2_1 + x2 - 1"));
}

TEST_CASE("incidence construction validates the stratum") {
    SymmetricPencil a = point_pencil(0, 0);
    CHECK_THROWS_AS(build_incidence(a, std::nullopt, -1, {1, 2}), Error);
    CHECK_THROWS_AS(build_incidence(a, std::nullopt, 2, {1}), Error);
    CHECK_THROWS_AS(build_incidence(a, std::nullopt, 1, {1, 2}), Error);
    CHECK_THROWS_AS(build_incidence(a, std::nullopt, 1, {3}), Error);
    CHECK_THROWS_AS(build_incidence(a, std::nullopt, 1, {0}), Error);
    std::mt19937 rng(7);
    SymmetricPencil b = random_pencil(rng, 3, 1, 2);
    CHECK_THROWS_AS(build_incidence(b, std::nullopt, 1, {1, 1}), Error);
    CHECK_THROWS_AS(build_incidence(b, QMatrix::identity(2), 1, {1, 2}), Error);
}

TEST_CASE("fully pinned stratum reduces to the raw pencil entries") {
    // r = 0 pins every row, the kernel block disappears, and the incidence
    // polynomials are just the lower triangle of the (perturbed) pencil.
    SymmetricPencil a = point_pencil(0, 0);
    IncidenceSystem inc = build_incidence(a, std::nullopt, 0, {1, 2});
    CHECK(inc.c == 3);
    CHECK(inc.y_ids.empty());
    CHECK(inc.ctx->names() == std::vector<std::string>{"x1", "x2"});
    CHECK(same_poly(inc.polys[0], "-x1"));
    CHECK(same_poly(inc.polys[1], "x2"));
    CHECK(same_poly(inc.polys[2], "x1"));

    IncidenceSystem pert = build_incidence(a, QMatrix::identity(2), 0, {1, 2});
    CHECK(pert.has_eps);
    CHECK(same_poly(pert.polys[0], "eps - x1"));
    CHECK(same_poly(pert.polys[1], "x2"));
    CHECK(same_poly(pert.polys[2], "eps + x1"));
    CHECK(iota_subsets(2, 0) == std::vector<std::vector<int>>{{1, 2}});
}

TEST_CASE("entry counts match the closed formula") {
    std::mt19937 rng(5150);
    for (int m = 2; m <= 4; ++m) {
        SymmetricPencil a = random_pencil(rng, m, 2, 3);
        for (int r = 1; r <= m - 1; ++r)
            for (const auto& iota : iota_subsets(m, r)) {
                IncidenceSystem inc = build_incidence(a, QMatrix::identity(m), r, iota);
                CHECK(inc.c == (m - r) * (m + r + 1) / 2);
                CHECK(inc.polys.size() == static_cast<size_t>(inc.c));
                CHECK(inc.y_ids.size() == static_cast<size_t>(r * (m - r)));
            }
    }
}

TEST_CASE("iota_subsets enumerates pinning choices") {
    auto subs = iota_subsets(3, 1);
    REQUIRE(subs.size() == 3);
    CHECK(subs[0] == std::vector<int>{1, 2});
    CHECK(subs[1] == std::vector<int>{1, 3});
    CHECK(subs[2] == std::vector<int>{2, 3});
    CHECK(iota_subsets(4, 2).size() == 6);
    CHECK_THROWS_AS(iota_subsets(2, 2), Error);
}

TEST_CASE("incidence polynomials are multilinear across variable groups") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 4; ++iter) {
        int m = 2 + static_cast<int>(rng() % 2);
        SymmetricPencil a = random_pencil(rng, m, 2, 3);
        for (int r = 1; r <= m - 1; ++r)
            for (const auto& iota : iota_subsets(m, r)) {
                IncidenceSystem inc = build_incidence(a, sample_perturbation(m, iter).b, r, iota);
                std::vector<VarId> ex = inc.x_ids;
                ex.push_back(inc.eps_id);
                for (const MPoly& p : inc.polys)
                    for (const auto& t : p.terms()) {
                        CHECK(group_degree(t.m, ex) <= 1);
                        CHECK(group_degree(t.m, inc.y_ids) <= 1);
                    }
            }
    }
}

TEST_CASE("lagrange system of the worked example") {
    SymmetricPencil a = point_pencil(0, 0);
    IncidenceSystem inc = build_incidence(a, QMatrix::identity(2), 1, {1});
    ObjectiveForm obj;
    obj.coeff = {Rational(88), Rational(-94)};
    LagrangeSystem sys = build_lagrange(inc, obj);

    CHECK(sys.total_vars == 5);  // c + n + r(m-r) = 2 + 2 + 1
    CHECK(sys.ctx->names() ==
          std::vector<std::string>{"eps", "x1", "x2", "y2_1", "z1", "z2"});
    REQUIRE(sys.g.size() == 3);
    CHECK(same_poly(sys.g[0], "-z1 + z2*y2_1 - 88"));
    CHECK(same_poly(sys.g[1], "z1*y2_1 + z2 + 94"));
    CHECK(same_poly(sys.g[2], "z1*x2 + z2*eps + z2*x1"));

    CHECK(sys.full_system().size() == 5);
    CHECK(same_poly(sys.f[0], "eps - x1 + x2*y2_1"));

    ObjectiveForm bad;
    bad.coeff = {Rational(1)};
    CHECK_THROWS_AS(build_lagrange(inc, bad), Error);
}

TEST_CASE("zero objective drops the constant terms") {
    SymmetricPencil a = point_pencil(0, 0);
    IncidenceSystem inc = build_incidence(a, QMatrix::identity(2), 1, {1});
    ObjectiveForm zero;
    zero.coeff = {Rational(0), Rational(0)};
    LagrangeSystem sys = build_lagrange(inc, zero);
    for (const MPoly& p : sys.g) CHECK(p.constant_term() == Rational(0));
    CHECK(same_poly(sys.g[0], "-z1 + z2*y2_1"));
}

TEST_CASE("lagrange blocks respect the multidegree caps") {
    std::mt19937 rng(777);
    SymmetricPencil a = random_pencil(rng, 3, 2, 3);
    ObjectiveForm obj;
    obj.coeff = {Rational(2), Rational(-5)};
    for (int r = 1; r <= 2; ++r)
        for (const auto& iota : iota_subsets(3, r)) {
            IncidenceSystem inc = build_incidence(a, sample_perturbation(3, 9).b, r, iota);
            LagrangeSystem sys = build_lagrange(inc, obj);
            std::vector<VarId> ex = sys.x_ids;
            ex.push_back(sys.eps_id);
            size_t nx = sys.x_ids.size();
            for (size_t k = 0; k < sys.g.size(); ++k) {
                uint32_t cap_ex = (k < nx) ? 0 : 1;
                uint32_t cap_y = (k < nx) ? 1 : 0;
                for (const auto& t : sys.g[k].terms()) {
                    CHECK(group_degree(t.m, ex) <= cap_ex);
                    CHECK(group_degree(t.m, sys.y_ids) <= cap_y);
                    CHECK(group_degree(t.m, sys.z_ids) <= 1);
                }
            }
        }
}

TEST_CASE("reduced and unreduced systems cut out the same set") {
    std::mt19937 rng(60601);
    for (int iter = 0; iter < 3; ++iter) {
        int m = (iter == 0) ? 2 : 3;
        SymmetricPencil a = random_pencil(rng, m, 2, 2);
        std::optional<QMatrix> b;
        if (iter != 1) b = sample_perturbation(m, 50 + iter).b;
        for (int r = 1; r <= m - 1; ++r)
            for (const auto& iota : iota_subsets(m, r)) {
                IncidenceSystem inc = build_incidence(a, b, r, iota);
                UnreducedIncidence full = build_incidence_unreduced(a, b, r, iota);

                std::vector<VarId> up(inc.ctx->size());
                for (VarId v = 0; v < inc.ctx->size(); ++v)
                    up[v] = full.ctx->id(inc.ctx->name(v));

                std::vector<MPoly> reduced_lifted = full.pinning;
                for (const MPoly& p : inc.polys)
                    reduced_lifted.push_back(p.rename(full.ctx, up));
                std::vector<MPoly> unreduced = full.pinning;
                unreduced.insert(unreduced.end(), full.products.begin(), full.products.end());

                CAPTURE(m);
                CAPTURE(r);
                CHECK(ideal_equal(unreduced, reduced_lifted));
            }
    }
}

TEST_CASE("regularity of the worked example across eps values") {
    SymmetricPencil a = point_pencil(0, 0);
    IncidenceSystem inc = build_incidence(a, QMatrix::identity(2), 1, {1});
    CHECK(regularity_check(inc, Rational(1)).regular());
    CHECK(regularity_check(inc, Rational(1, 2)).regular());
    CHECK(regularity_check(inc, Rational(1, 7)).regular());

    RegularityReport at_zero = regularity_check(inc, Rational(0));
    CHECK(!at_zero.regular());
    // the singular locus pins x to the origin and y to the branch points
    REQUIRE(!at_zero.witness.empty());
    auto ord = MonomialOrder::grevlex(*inc.ctx);
    CHECK(normal_form(MPoly::parse(inc.ctx, "x1"), at_zero.witness, ord).is_zero());
    CHECK(normal_form(MPoly::parse(inc.ctx, "x2"), at_zero.witness, ord).is_zero());
    CHECK(normal_form(MPoly::parse(inc.ctx, "y2_1^2 + 1"), at_zero.witness, ord).is_zero());
}

TEST_CASE("unperturbed single-point variety is singular at its vertex") {
    SymmetricPencil a = point_pencil(1, 1);
    IncidenceSystem inc = build_incidence(a, std::nullopt, 1, {1});
    RegularityReport rep = regularity_check(inc, Rational(0));
    CHECK(!rep.regular());
    auto ord = MonomialOrder::grevlex(*inc.ctx);
    CHECK(normal_form(MPoly::parse(inc.ctx, "x1 - 1"), rep.witness, ord).is_zero());
    CHECK(normal_form(MPoly::parse(inc.ctx, "x2 - 1"), rep.witness, ord).is_zero());
    CHECK(normal_form(MPoly::parse(inc.ctx, "y2_1^2 + 1"), rep.witness, ord).is_zero());
}

TEST_CASE("random positive perturbations make small strata regular") {
    std::mt19937 rng(140914);
    for (int iter = 0; iter < 2; ++iter) {
        int m = 2 + iter;
        SymmetricPencil a = random_pencil(rng, m, 2, 2);
        QMatrix b = sample_perturbation(m, 1000 + static_cast<uint64_t>(iter)).b;
        Rational eps0(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 7));
        if (eps0 > Rational(1)) eps0 = eps0.inv();
        for (int r = 1; r <= m - 1; ++r)
            for (const auto& iota : iota_subsets(m, r)) {
                CAPTURE(m);
                CAPTURE(r);
                CHECK(regularity_check(build_incidence(a, b, r, iota), eps0).regular());
            }
    }
}

TEST_CASE("system dumps name the stratum") {
    SymmetricPencil a = point_pencil(0, 0);
    IncidenceSystem inc = build_incidence(a, QMatrix::identity(2), 1, {1});
    std::string text = dump(inc);
    CHECK(text.find("# incidence r=1 iota={1} c=2") == 0);
    CHECK(text.find("y2_1") != std::string::npos);

    ObjectiveForm obj;
    obj.coeff = {Rational(88), Rational(-94)};
    std::string ltext = dump(build_lagrange(inc, obj));
    CHECK(ltext.find("# lagrange r=1 iota={1} c=2 N=5") == 0);
    CHECK(std::count(ltext.begin(), ltext.end(), '\n') == 6);  // header + 5 polynomials
}
