#include "support.hpp"

#include <doctest.h>

using namespace varcalc;
using namespace varcalc::test;

namespace {

FormOnY zero_form(const BundleChart& c, const Expr& f)
{
    FormOnY out(c, 0);
    out.add({}, f);
    return out;
}

template <class Kind>
BasicForm<Kind> sign(int s, const BasicForm<Kind>& f)
{
    return s > 0 ? f : f * Expr(-1);
}

}  // namespace

TEST_CASE("exterior derivative examples")
{
    const auto c = chart_x_y();
    CHECK(exterior_derivative(zero_form(c, P(c, "y"))) == FormOnY::term(c, {1}, 1));
    CHECK(exterior_derivative(FormOnY::term(c, {1}, P(c, "x"))) == FormOnY::term(c, {0, 1}, 1));
    CHECK(exterior_derivative(FormOnY::term(c, {1}, 1)).is_zero());
}

TEST_CASE("wedge examples")
{
    const auto c = chart_x_y();
    const auto dx = FormOnY::term(c, {0}, 1), dy = FormOnY::term(c, {1}, 1);
    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(dx, dy) == wedge(dy, dx) * Expr(-1));
    CHECK(wedge(dy * P(c, "x"), dx) == FormOnY::term(c, {0, 1}, P(c, "-x")));
    CHECK(FormOnY::term(c, {1, 0}, 1) == FormOnY::term(c, {0, 1}, -1));
}

TEST_CASE("interior product examples")
{
    const auto c = chart_t_y();
    const std::vector<Expr> dt_field{1, 0};
    CHECK(interior_product(std::span<const Expr>(dt_field), FormOnY::term(c, {0}, 1)) == zero_form(c, 1));

    SemibasicForm h(c, 1);
    h.add({1}, P(c, "y_t"));
    h.add({0}, P(c, "-1/2*y_t^2"));
    const std::vector<Expr> boost{0, P(c, "t")};
    const auto contracted = interior_product(std::span<const Expr>(boost), h);
    CHECK(contracted.coefficient({}) == P(c, "t*y_t"));

    const auto c2 = chart_2_1();
    const std::vector<Expr> d0{1, 0, 0};
    CHECK(interior_product(std::span<const Expr>(d0), FormOnY::term(c2, {0, 1}, 1)) == FormOnY::term(c2, {1}, 1));
}

TEST_CASE("horizontalization examples")
{
    const auto c = chart_t_y();
    CHECK(horizontalize(FormOnY::term(c, {1}, 1)).components == std::vector<Expr>{P(c, "y_t")});
    CHECK(horizontalize(FormOnY::term(c, {0}, 1)).components == std::vector<Expr>{1});

    const auto c2 = chart_2_2();
    const auto h = horizontalize(FormOnY::term(c2, {2, 3}, 1));
    REQUIRE(h.degree == 2);
    CHECK(h.components == std::vector<Expr>{P(c2, "y1_x0*y2_x1 - y1_x1*y2_x0")});

    // degree n-1 over two base coordinates: dx^1 = omega_0, dx^0 = -omega_1
    const auto h1 = horizontalize(FormOnY::term(c2, {1}, 1));
    CHECK(h1.components == std::vector<Expr>{1, 0});
    const auto h0 = horizontalize(FormOnY::term(c2, {0}, 1));
    CHECK(h0.components == std::vector<Expr>{0, -1});
    CHECK_THROWS_AS(horizontalize(FormOnY::term(c2, {0, 1, 2}, 1)), UnsupportedError);
}

TEST_CASE("horizontal divergence examples")
{
    const auto c = chart_t_y();
    CHECK(horizontal_divergence({0, {P(c, "t*y_t")}}, c).components[0] == P(c, "y_t + t*y_tt"));
    const auto c2 = chart_2_1();
    CHECK(horizontal_divergence({1, {P(c2, "y"), 0}}, c2).components[0] == P(c2, "y_x0"));
    CHECK(horizontal_divergence({1, {3, Rational(1, 2)}}, c2).components[0].is_zero());
}

TEST_CASE("omega basis")
{
    const auto c2 = chart_2_1();
    CHECK(omega(c2) == SemibasicForm::term(c2, {0, 1}, 1));
    CHECK(omega_lambda(c2, 0) == SemibasicForm::term(c2, {1}, 1));
    CHECK(omega_lambda(c2, 1) == SemibasicForm::term(c2, {0}, -1));
}

TEST_CASE("rendering")
{
    const auto c = chart_x_y();
    FormOnY f(c, 1);
    f.add({1}, P(c, "x/2"));
    f.add({0}, P(c, "-y/2"));
    CHECK(to_string(f, c) == "-1/2*y*dx + 1/2*x*dy");
    CHECK(to_string(FormOnY::term(c, {1, 0}, 1), c) == "-dx^dy");
    CHECK(to_string(FormOnY(c, 2), c) == "0");
}

TEST_CASE("jet-order guard on form kinds")
{
    const auto c = chart_t_y();
    FormOnY f(c, 1);
    CHECK_THROWS_AS(f.add({1}, P(c, "y_t")), PreconditionError);
    SemibasicForm s(c, 1);
    CHECK_THROWS_AS(s.add({1}, P(c, "y_tt")), PreconditionError);
}

TEST_CASE("d squares to zero")
{
    Generator g(31);
    for (const auto& c : {chart_t_y(), chart_2_1(), chart_2_2()})
        for (int p = 0; p + 2 <= c.total_dim(); ++p)
            for (int k = 0; k < 10; ++k) CHECK(exterior_derivative(exterior_derivative(g.form_on_y(c, p))).is_zero());
}

TEST_CASE("wedge is graded commutative and d is a graded derivation")
{
    Generator g(32);
    const auto c = chart_2_2();
    for (int k = 0; k < 20; ++k) {
        const int p = g.uniform(0, 2), q = g.uniform(0, 2);
        const auto a = g.form_on_y(c, p, 2), b = g.form_on_y(c, q, 2);
        CHECK(wedge(a, b) == sign((p * q) % 2 == 0 ? 1 : -1, wedge(b, a)));
        if (p + q + 1 <= c.total_dim())
            CHECK(exterior_derivative(wedge(a, b)) ==
                  wedge(exterior_derivative(a), b) + sign(p % 2 == 0 ? 1 : -1, wedge(a, exterior_derivative(b))));
    }
}

TEST_CASE("interior product is an antiderivation")
{
    Generator g(33);
    const auto c = chart_2_2();
    for (int k = 0; k < 20; ++k) {
        const int p = g.uniform(1, 2), q = g.uniform(1, 2);
        const auto a = g.form_on_y(c, p, 2), b = g.form_on_y(c, q, 2);
        const auto u = g.vector_field(c).on_y();
        const std::span<const Expr> f(u);
        CHECK(interior_product(f, wedge(a, b)) ==
              wedge(interior_product(f, a), b) + sign(p % 2 == 0 ? 1 : -1, wedge(a, interior_product(f, b))));
        CHECK(interior_product(f, interior_product(f, wedge(a, b))).is_zero());
    }
}

TEST_CASE("h0 commutes with d")
{
    // h0(d eta) = d_lambda of h0(eta) for eta of degree n-1 on Y
    Generator g(34);
    for (const auto& c : {chart_t_y(), chart_1_2(), chart_2_1(), chart_2_2()}) {
        for (int k = 0; k < 25; ++k) {
            const auto eta = g.form_on_y(c, c.base_dim() - 1);
            CHECK(horizontalize(exterior_derivative(eta)) == horizontal_divergence(horizontalize(eta), c));
        }
    }
}

TEST_CASE("h0 annihilates contact forms")
{
    Generator g(35);
    for (const auto& c : {chart_t_y(), chart_2_2()}) {
        for (int i = 0; i < c.fibre_dim(); ++i) {
            SemibasicForm theta = SemibasicForm::term(c, {c.base_dim() + i}, 1);
            for (int l = 0; l < c.base_dim(); ++l) theta.add({l}, -jet1_coord(i, l));
            for (int k = 0; k < 10; ++k) {
                const auto rest = to_semibasic(g.form_on_y(c, c.base_dim() - 1)) * g.polynomial(Generator::jet1_atoms(c), 2, 2);
                const auto h = horizontalize(wedge(theta, rest));
                CHECK(h.components.size() == 1);
                CHECK(h.components[0].is_zero());
            }
        }
    }
}
