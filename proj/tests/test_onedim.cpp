#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sdphom/onedim.hpp"

using namespace sdphom;

namespace {

MPoly pp(const CtxPtr& ctx, const std::string& s) { return MPoly::parse(ctx, s); }

}  // namespace

TEST_CASE("circle with no distinguished parameter uses the last kept variable") {
    auto ctx = make_ctx({"x", "y"});
    auto par = one_dim_param(parse_polys(ctx, {"x^2 + y^2 - 1"}), {"x", "y"});
    CHECK(par.param_var == "y");
    CHECK(par.coords == std::vector<std::string>{"x"});
    CHECK(par.lambda == std::vector<Rational>{Rational(1)});

    // Projection is the identity here, so the stored basis is the input.
    REQUIRE(par.basis.size() == 1);
    CHECK(par.basis[0] == pp(par.basis_ctx, "x^2 + y^2 - 1"));

    CHECK(par.q == pp(par.out_ctx, "t^2 + u^2 - 1"));
    CHECK(par.q0 == pp(par.out_ctx, "2*t"));
    REQUIRE(par.qi.size() == 1);
    CHECK(par.qi[0] == pp(par.out_ctx, "-2*u^2 + 2"));
    CHECK(par.has_branch());
    CHECK(par.degree_in_t() == 2);
}

TEST_CASE("eps is always the parameter when present") {
    auto ctx = make_ctx({"eps", "x"});
    auto par = one_dim_param(parse_polys(ctx, {"x^2 - eps"}), {"x"});
    CHECK(par.param_var == "eps");
    CHECK(par.q == pp(par.out_ctx, "t^2 - u"));
    CHECK(par.q0 == pp(par.out_ctx, "2*t"));
    CHECK(par.qi[0] == pp(par.out_ctx, "2*u"));
    // q0 is the t-derivative of q after the joint scaling.
    CHECK(par.q.derivative(par.out_ctx->id("t")) == par.q0);
}

TEST_CASE("hyperbola needs a denominator in the parameter") {
    auto ctx = make_ctx({"x", "y"});
    auto par = one_dim_param(parse_polys(ctx, {"x*y - 1"}), {"x", "y"});
    CHECK(par.q == pp(par.out_ctx, "t*u - 1"));
    CHECK(par.q0 == pp(par.out_ctx, "u"));
    CHECK(par.qi[0] == pp(par.out_ctx, "1"));
    CHECK(par.q.derivative(par.out_ctx->id("t")) == par.q0);
    CHECK(par.degree_in_t() == 1);
}

TEST_CASE("parabola parametrized over its height") {
    auto ctx = make_ctx({"x", "y"});
    auto par = one_dim_param(parse_polys(ctx, {"y - x^2"}), {"x", "y"});
    CHECK(par.param_var == "y");
    CHECK(par.q == pp(par.out_ctx, "t^2 - u"));
    CHECK(par.qi[0] == pp(par.out_ctx, "2*u"));
}

TEST_CASE("variables outside the kept block are eliminated first") {
    auto ctx = make_ctx({"y", "eps", "x"});
    auto par = one_dim_param(parse_polys(ctx, {"y - eps*x", "x^2 - eps"}), {"x"});
    CHECK(par.basis_ctx->names() == std::vector<std::string>{"eps", "x"});
    REQUIRE(par.basis.size() == 1);
    CHECK(par.basis[0] == pp(par.basis_ctx, "x^2 - eps"));
    CHECK(par.q == pp(par.out_ctx, "t^2 - u"));
}

TEST_CASE("purely vertical curve has no dominant branch") {
    auto ctx = make_ctx({"eps", "x"});
    auto par = one_dim_param(parse_polys(ctx, {"eps - 1"}), {"x"});
    CHECK(!par.has_branch());
    CHECK(par.q == pp(par.out_ctx, "1"));
    REQUIRE(par.basis.size() == 1);
    CHECK(par.basis[0] == pp(par.basis_ctx, "eps - 1"));
    CHECK(par.qi[0].is_zero());
}

TEST_CASE("non-curves are rejected") {
    auto ctx = make_ctx({"eps", "x"});
    CHECK_THROWS_AS(one_dim_param(parse_polys(ctx, {"x - 1", "eps - 2"}), {"x"}), NotCurve);
    CHECK_THROWS_AS(one_dim_param(parse_polys(ctx, {"x", "x - 1"}), {"x"}), NotCurve);
    CHECK_THROWS_AS(one_dim_param(std::vector<MPoly>{MPoly(ctx)}, {"x"}), NotCurve);
    CHECK_THROWS_AS(one_dim_param(parse_polys(ctx, {"x^2 - eps"}), {}), NotCurve);
}

TEST_CASE("deterministic across repeated runs") {
    auto ctx = make_ctx({"x", "y"});
    auto a = one_dim_param(parse_polys(ctx, {"x^2 + y^2 - 1"}), {"x", "y"});
    auto b = one_dim_param(parse_polys(ctx, {"x^2 + y^2 - 1"}), {"x", "y"});
    CHECK(a.q == b.q);
    CHECK(a.q0 == b.q0);
    CHECK(a.qi[0] == b.qi[0]);
    CHECK(a.lambda == b.lambda);
}

TEST_CASE("worked-example critical curve projects onto the known quadric") {
    // 2x2 pencil with a rank-deficient vertex at (1,1), the documented
    // perturbation, and objective 88 x1 - 94 x2. The Lagrange system below
    // couples the kernel direction (1, y) and multipliers z.
    auto ctx = make_ctx({"eps", "x1", "x2", "y", "z1", "z2"});
    auto gens = parse_polys(
        ctx, {"1 - x1 + 80*eps + x2*y - y - 68*eps*y",
              "x2 - 1 - 68*eps + x1*y - y + 109*eps*y",
              "-z1 + z2*y - 88",
              "z1*y + z2 + 94",
              "z1*x2 - z1 - 68*eps*z1 + z2*x1 - z2 + 109*eps*z2"});
    auto par = one_dim_param(gens, {"x1", "x2"});
    CHECK(par.param_var == "eps");
    CHECK(par.coords == std::vector<std::string>{"x1", "x2"});
    CHECK(par.has_branch());
    CHECK(par.degree_in_t() <= 12);

    // Shadow of the curve on the coordinate plane: eliminating the parameter
    // from the stored basis leaves one conic through (1,1).
    auto shadow = eliminate(par.basis, {par.basis_ctx->id("eps")});
    auto R = restrict_to_vars(par.basis_ctx, shadow, {par.basis_ctx->id("x1"), par.basis_ctx->id("x2")});
    REQUIRE(R.gens.size() == 1);
    MPoly conic = pp(R.ctx,
                     "2241769*x1^2 + 115046296*x1*x2 + 65669911*x2^2 - 119529834*x1 "
                     "- 246386118*x2 + 182957976");
    CHECK(R.gens[0].primitive() == conic.primitive());
    CHECK(R.gens[0].eval({Rational(1), Rational(1)}).is_zero());
}
