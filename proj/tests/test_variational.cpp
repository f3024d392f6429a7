#include "support.hpp"

#include <doctest.h>

using namespace varcalc;
using namespace varcalc::test;

TEST_CASE("lagrangian validation")
{
    const auto c = chart_t_y();
    CHECK_THROWS_AS(L(c, "y_tt"), PreconditionError);
    CHECK((L(c, "y_t") + L(c, "y")).density() == P(c, "y + y_t"));
}

TEST_CASE("euler-lagrange examples")
{
    const auto c = chart_t_y();
    CHECK(euler_lagrange(L(c, "1/2*y_t^2")).components == std::vector<Expr>{P(c, "-y_tt")});
    CHECK(euler_lagrange(L(c, "7")).is_zero());
    CHECK(euler_lagrange(L(c, "t^2*y_t")).components == std::vector<Expr>{P(c, "-2*t")});
    const auto c2 = chart_2_1();
    CHECK(euler_lagrange(L(c2, "1/2*(y_x0^2 + y_x1^2) - y^2")).components ==
          std::vector<Expr>{P(c2, "-2*y - y_x0x0 - y_x1x1")});
}

TEST_CASE("euler-lagrange agrees with the first variation of the action")
{
    Generator g(41);
    const auto c = chart_1_2();
    const auto y = polynomial_section({{0.2L, 0.5L, -0.3L}, {-0.4L, 0.1L, 0.6L, 0.2L}});
    for (int k = 0; k < 30; ++k) {
        const auto l = g.lagrangian(c);
        const auto e = euler_lagrange(l);
        for (int i = 0; i < c.fibre_dim(); ++i) {
            const auto [numeric, symbolic] = variation_oracle(l, e.components[static_cast<std::size_t>(i)], i, y);
            CHECK(static_cast<double>(numeric) ==
                  doctest::Approx(static_cast<double>(symbolic)).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("poincare-cartan examples")
{
    const auto c = chart_t_y();
    const auto h = poincare_cartan(L(c, "1/2*y_t^2"));
    SemibasicForm expected(c, 1);
    expected.add({1}, P(c, "y_t"));
    expected.add({0}, P(c, "-1/2*y_t^2"));
    CHECK(h.assembled == expected);
    CHECK(h.momenta[0][0] == P(c, "y_t"));

    const auto hy = poincare_cartan(L(c, "y"));
    CHECK(hy.momenta[0][0].is_zero());
    CHECK(hy.assembled == SemibasicForm::term(c, {0}, P(c, "y")));

    const auto c2 = chart_2_1();
    CHECK(poincare_cartan(L(c2, "y_x0")).assembled == wedge(SemibasicForm::term(c2, {2}, 1), omega_lambda(c2, 0)));
}

TEST_CASE("poincare-cartan form is a Lepage equivalent")
{
    // h0(H_L) = L
    Generator g(42);
    for (const auto& c : {chart_t_y(), chart_2_2()}) {
        for (int k = 0; k < 15; ++k) {
            const auto l = g.lagrangian(c);
            CHECK(horizontalize(poincare_cartan(l).assembled).components == std::vector<Expr>{l.density()});
        }
    }
}

TEST_CASE("first variation examples")
{
    const auto c = chart_t_y();
    const auto l = L(c, "1/2*y_t^2");
    const auto boost = first_variation_decompose(field(c, {"0"}, {"t"}), l);
    CHECK(boost.lie == P(c, "y_t"));
    CHECK(boost.interior == P(c, "-t*y_tt"));
    CHECK(boost.flux == std::vector<Expr>{P(c, "t*y_t")});
    CHECK(boost.residual.is_zero());

    const auto shift = first_variation_decompose(field(c, {"1"}, {"0"}), l);
    CHECK(shift.lie.is_zero());
    CHECK(shift.interior == P(c, "y_t*y_tt"));
    CHECK(shift.flux == std::vector<Expr>{P(c, "-1/2*y_t^2")});
    CHECK(shift.residual.is_zero());

    const auto zero = first_variation_decompose(ProjectableVectorField(c), L(c, "y^3*y_t + t"));
    CHECK(zero.lie.is_zero());
    CHECK(zero.interior.is_zero());
    CHECK(zero.residual.is_zero());
}

TEST_CASE("triviality examples")
{
    const auto c = chart_t_y();
    CHECK(is_variationally_trivial(L(c, "y_t")));
    CHECK_FALSE(is_variationally_trivial(L(c, "1/2*y_t^2")));
    CHECK(is_variationally_trivial(L(c, "0")));
    const auto c2 = chart_2_1();
    CHECK(is_variationally_trivial(L(c2, "x1*y_x0")));
}

TEST_CASE("reconstruct phi examples")
{
    const auto c = chart_t_y();
    CHECK(reconstruct_phi(L(c, "y_t")) == FormOnY::term(c, {1}, 1));
    CHECK(reconstruct_phi(L(c, "0")).is_zero());
    CHECK(reconstruct_phi(L(c, "3*y^2*y_t + 2*t")) == FormOnY::term(c, {1}, P(c, "3*y^2")) + FormOnY::term(c, {0}, P(c, "2*t")));
    const auto c2 = chart_2_2();
    CHECK(reconstruct_phi(L(c2, "y1_x0*y2_x1 - y1_x1*y2_x0")) == FormOnY::term(c2, {2, 3}, 1));

    CHECK_THROWS_AS(reconstruct_phi(L(c, "y_t^2")), PreconditionError);
}

TEST_CASE("poincare homotopy examples")
{
    const auto c = chart_t_y();
    CHECK(poincare_homotopy(FormOnY::term(c, {1}, 1), c) == [&] {
        FormOnY s(c, 0);
        s.add({}, P(c, "y"));
        return s;
    }());
    const auto cxy = chart_x_y();
    FormOnY half(cxy, 1);
    half.add({1}, P(cxy, "x/2"));
    half.add({0}, P(cxy, "-y/2"));
    CHECK(poincare_homotopy(FormOnY::term(cxy, {0, 1}, 1), cxy) == half);
    CHECK(poincare_homotopy(FormOnY(cxy, 2), cxy).is_zero());
    CHECK_THROWS_AS(poincare_homotopy(FormOnY::term(cxy, {1}, P(cxy, "x")), cxy), PreconditionError);
    CHECK_THROWS_AS(poincare_homotopy(FormOnY::term(cxy, {1}, P(cxy, "exp(y)")), cxy), UnsupportedError);
}

TEST_CASE("certificates")
{
    const auto c = chart_t_y();
    const auto cert = certify_trivial(L(c, "3*y^2*y_t"));
    CHECK(cert.phi == FormOnY::term(c, {1}, P(c, "3*y^2")));
    REQUIRE(cert.exact());
    CHECK(cert.sigma->coefficient({}) == P(c, "y^3"));

    const auto weak = certify_trivial(L(c, "t*exp(y)*y_t + exp(y)"));
    CHECK_FALSE(weak.exact());
    CHECK(exterior_derivative(weak.phi).is_zero());
}

TEST_CASE("horizontal exact lagrangians are trivial and reconstruct")
{
    Generator g(43);
    for (const auto& c : {chart_t_y(), chart_1_2(), chart_2_1(), chart_2_2()}) {
        for (int k = 0; k < 15; ++k) {
            const auto sigma = g.form_on_y(c, c.base_dim() - 1);
            const Lagrangian l0(c, horizontalize(exterior_derivative(sigma)).components[0]);
            CHECK(euler_lagrange(l0).is_zero());
            const auto phi = reconstruct_phi(l0);
            CHECK(exterior_derivative(phi).is_zero());
            CHECK(horizontalize(phi).components == std::vector<Expr>{l0.density()});
            const auto s = poincare_homotopy(phi, c);
            CHECK(exterior_derivative(s) == phi);
        }
    }
}

TEST_CASE("homotopy inverts d on exact forms")
{
    Generator g(44);
    for (const auto& c : {chart_x_y(), chart_2_2()})
        for (int p = 0; p + 1 <= c.total_dim(); ++p)
            for (int k = 0; k < 8; ++k) {
                const auto phi = exterior_derivative(g.form_on_y(c, p));
                CHECK(exterior_derivative(poincare_homotopy(phi, c)) == phi);
            }
}

TEST_CASE("first variational formula holds on random input")
{
    Generator g(45);
    for (const auto& c : {chart_t_y(), chart_1_2(), chart_2_1(), chart_2_2()})
        for (int k = 0; k < 15; ++k) CHECK(first_variation_decompose(g.vector_field(c), g.lagrangian(c)).residual.is_zero());
}
