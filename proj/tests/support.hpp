#pragma once

// Test-only helpers: charts, random generators for property tests, and
// floating-point oracles that never touch the symbolic differentiation code.

#include "varcalc/noether.hpp"
#include "varcalc/parser.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace varcalc::test {

inline BundleChart chart_t_y() { return BundleChart({"t"}, {"y"}); }
inline BundleChart chart_2_1() { return BundleChart({"x0", "x1"}, {"y"}); }
inline BundleChart chart_2_2() { return BundleChart({"x0", "x1"}, {"y1", "y2"}); }
inline BundleChart chart_1_2() { return BundleChart({"t"}, {"q1", "q2"}); }
inline BundleChart chart_x_y() { return BundleChart({"x"}, {"y"}); }

inline Expr P(const BundleChart& chart, const std::string& text) { return parse_expr(text, chart); }

inline Lagrangian L(const BundleChart& chart, const std::string& density)
{
    return Lagrangian(chart, parse_expr(density, chart));
}

inline ProjectableVectorField field(const BundleChart& chart, const std::vector<std::string>& base,
                                    const std::vector<std::string>& fibre)
{
    std::vector<Expr> b, f;
    for (const auto& s : base) b.push_back(parse_expr(s, chart));
    for (const auto& s : fibre) f.push_back(parse_expr(s, chart));
    return ProjectableVectorField(chart, b, f);
}

inline std::string S(const BundleChart& chart, const Expr& e) { return to_string(e, chart.namer()); }

// ---- random generation -------------------------------------------------------

class Generator {
public:
    explicit Generator(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational coefficient()
    {
        int num = 0;
        while (num == 0) num = uniform(-5, 5);
        return Rational(num, uniform(1, 3));
    }

    /// Sum of up to max_terms random monomials of total degree <= max_degree.
    Expr polynomial(const std::vector<Coord>& atoms, int max_degree, int max_terms)
    {
        Expr e;
        const int terms = uniform(1, max_terms);
        for (int k = 0; k < terms; ++k) {
            Expr m(coefficient());
            const int deg = uniform(0, max_degree);
            for (int d = 0; d < deg && !atoms.empty(); ++d)
                m *= Expr::coord(atoms[static_cast<std::size_t>(uniform(0, static_cast<int>(atoms.size()) - 1))]);
            e += m;
        }
        return e;
    }

    static std::vector<Coord> base_atoms(const BundleChart& c)
    {
        std::vector<Coord> v;
        for (int l = 0; l < c.base_dim(); ++l) v.push_back(Coord::base(l));
        return v;
    }
    static std::vector<Coord> y_atoms(const BundleChart& c)
    {
        auto v = base_atoms(c);
        for (int i = 0; i < c.fibre_dim(); ++i) v.push_back(Coord::fibre(i));
        return v;
    }
    static std::vector<Coord> jet1_atoms(const BundleChart& c)
    {
        auto v = y_atoms(c);
        for (int i = 0; i < c.fibre_dim(); ++i)
            for (int l = 0; l < c.base_dim(); ++l) v.push_back(Coord::jet1(i, l));
        return v;
    }

    Lagrangian lagrangian(const BundleChart& c, int max_degree = 3, int max_terms = 5)
    {
        return Lagrangian(c, polynomial(jet1_atoms(c), max_degree, max_terms));
    }

    ProjectableVectorField vector_field(const BundleChart& c, int max_degree = 2)
    {
        std::vector<Expr> base, fibre;
        for (int l = 0; l < c.base_dim(); ++l)
            base.push_back(uniform(0, 3) == 0 ? Expr() : polynomial(base_atoms(c), max_degree, 2));
        for (int i = 0; i < c.fibre_dim(); ++i) fibre.push_back(polynomial(y_atoms(c), max_degree, 3));
        return ProjectableVectorField(c, base, fibre);
    }

    FormOnY form_on_y(const BundleChart& c, int degree, int max_degree = 3)
    {
        FormOnY f(c, degree);
        std::vector<MultiIndex> basis;
        MultiIndex cur;
        std::function<void(int)> rec = [&](int from) {
            if (static_cast<int>(cur.size()) == degree) {
                basis.push_back(cur);
                return;
            }
            for (int a = from; a < c.total_dim(); ++a) {
                cur.push_back(a);
                rec(a + 1);
                cur.pop_back();
            }
        };
        rec(0);
        for (const auto& idx : basis)
            if (uniform(0, 2) != 0) f.add(idx, polynomial(y_atoms(c), max_degree, 3));
        return f;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

// ---- floating-point oracles -----------------------------------------------

using Point = std::map<Coord, long double>;

inline long double evaluate(const Expr& e, const Point& at)
{
    long double sum = 0;
    for (const auto& [mono, c] : e.terms()) {
        long double term = static_cast<long double>(c.convert_to<double>());
        for (const auto& f : mono) {
            long double v = 0;
            if (f.atom.is_coord()) {
                auto it = at.find(f.atom.coord());
                v = it == at.end() ? 0.0L : it->second;
            } else {
                const long double a = evaluate(f.atom.arg(), at);
                switch (f.atom.func()) {
                case Func::Sin: v = std::sin(a); break;
                case Func::Cos: v = std::cos(a); break;
                case Func::Exp: v = std::exp(a); break;
                case Func::Ln: v = std::log(a); break;
                }
            }
            term *= std::pow(v, static_cast<long double>(f.exponent));
        }
        sum += term;
    }
    return sum;
}

/// A section y^i(t) of a bundle over a 1-dimensional base, with its first
/// two derivatives, as plain functions.
struct Section1D {
    std::vector<std::function<long double(long double)>> y, dy, ddy;

    Point jet(long double t) const
    {
        Point p{{Coord::base(0), t}};
        for (std::size_t i = 0; i < y.size(); ++i) {
            const int k = static_cast<int>(i);
            p[Coord::fibre(k)] = y[i](t);
            p[Coord::jet1(k, 0)] = dy[i](t);
            p[Coord::jet2(k, 0, 0)] = ddy[i](t);
        }
        return p;
    }
};

/// Polynomial section with the given coefficient lists (lowest degree first).
inline Section1D polynomial_section(const std::vector<std::vector<long double>>& coeffs)
{
    Section1D s;
    for (const auto& c : coeffs) {
        auto eval = [c](int order) {
            return [c, order](long double t) {
                long double sum = 0;
                for (std::size_t k = static_cast<std::size_t>(order); k < c.size(); ++k) {
                    long double f = 1;
                    for (int j = 0; j < order; ++j) f *= static_cast<long double>(k - static_cast<std::size_t>(j));
                    sum += c[k] * f * std::pow(t, static_cast<long double>(k - static_cast<std::size_t>(order)));
                }
                return sum;
            };
        };
        s.y.push_back(eval(0));
        s.dy.push_back(eval(1));
        s.ddy.push_back(eval(2));
    }
    return s;
}

/// Gauss-Legendre nodes and weights on [0, 1].
inline std::vector<std::pair<long double, long double>> gauss_legendre(int n)
{
    std::vector<std::pair<long double, long double>> out;
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int k = 1; k <= n; ++k) {
        long double x = std::cos(pi * (k - 0.25L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        const long double w = 2 / ((1 - x * x) * dp * dp);
        out.emplace_back((x + 1) / 2, w / 2);
    }
    return out;
}

/// Independent check of an Euler-Lagrange component over a 1-dimensional base:
/// d/d(eps) of the action of y + eps*eta (central differences, quadrature on
/// [0, 1]) against the quadrature of E_i(j^2 y) * eta. The variation eta
/// vanishes to second order at both ends, so no boundary terms survive.
inline std::pair<long double, long double> variation_oracle(const Lagrangian& l, const Expr& ei, int fibre,
                                                            const Section1D& y)
{
    auto eta = [](long double t) { return std::pow(t * (1 - t), 3.0L) * (1 + t); };
    auto deta = [](long double t) {
        const long double g = t * (1 - t);
        return 3 * g * g * (1 - 2 * t) * (1 + t) + g * g * g;
    };
    const auto nodes = gauss_legendre(24);
    auto action = [&](long double eps) {
        long double s = 0;
        for (const auto& [t, w] : nodes) {
            Point p = y.jet(t);
            p[Coord::fibre(fibre)] += eps * eta(t);
            p[Coord::jet1(fibre, 0)] += eps * deta(t);
            s += w * evaluate(l.density(), p);
        }
        return s;
    };
    const long double h = 1e-4L;
    const long double numeric = (action(h) - action(-h)) / (2 * h);
    long double symbolic = 0;
    for (const auto& [t, w] : nodes) symbolic += w * evaluate(ei, y.jet(t)) * eta(t);
    return {numeric, symbolic};
}

}  // namespace varcalc::test
