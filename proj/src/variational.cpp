#include "varcalc/variational.hpp"

#include "varcalc/symmetry.hpp"

#include <algorithm>

namespace varcalc {

Lagrangian::Lagrangian(BundleChart chart, Expr density) : chart_(std::move(chart)), density_(std::move(density))
{
    if (!all_coords(density_, [&](const Coord& c) { return chart_.contains(c); }))
        throw PreconditionError("Lagrangian density uses coordinates outside the chart");
    if (jet_order(density_) > 1) throw PreconditionError("Lagrangian density exceeds jet order 1");
}

Lagrangian operator+(const Lagrangian& a, const Lagrangian& b)
{
    if (!(a.chart_ == b.chart_)) throw PreconditionError("Lagrangians over different charts");
    return Lagrangian(a.chart_, a.density_ + b.density_);
}

bool EulerLagrangeOperator::is_zero() const
{
    return std::all_of(components.begin(), components.end(), [](const Expr& e) { return e.is_zero(); });
}

EulerLagrangeOperator euler_lagrange(const Lagrangian& l)
{
    const auto& chart = l.chart();
    EulerLagrangeOperator e{chart, {}};
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        Expr ei = diff(l.density(), Coord::fibre(i));
        for (int lambda = 0; lambda < chart.base_dim(); ++lambda)
            ei -= total_derivative(diff(l.density(), Coord::jet1(i, lambda)), lambda, chart);
        e.components.push_back(std::move(ei));
    }
    return e;
}

PoincareCartanForm poincare_cartan(const Lagrangian& l)
{
    const auto& chart = l.chart();
    const int n = chart.base_dim();
    PoincareCartanForm h{chart, {}, l.density(), omega(chart) * l.density()};
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        std::vector<Expr> row;
        const auto dy = SemibasicForm::term(chart, {n + i}, Expr(1));
        for (int lambda = 0; lambda < n; ++lambda) {
            Expr pi = diff(l.density(), Coord::jet1(i, lambda));
            h.rest -= jet1_coord(i, lambda) * pi;
            h.assembled += wedge(dy, omega_lambda(chart, lambda)) * pi;
            row.push_back(std::move(pi));
        }
        h.momenta.push_back(std::move(row));
    }
    // L omega + pi dy ^ omega_lambda - y_lambda pi omega
    for (int i = 0; i < chart.fibre_dim(); ++i)
        for (int lambda = 0; lambda < n; ++lambda)
            h.assembled -= omega(chart) * (jet1_coord(i, lambda) * h.momenta[i][lambda]);
    return h;
}

FirstVariation first_variation_decompose(const ProjectableVectorField& u, const Lagrangian& l)
{
    const auto& chart = l.chart();
    FirstVariation fv;
    fv.lie = lie_derivative_lagrangian(u, l).density();

    const auto e = euler_lagrange(l);
    for (int i = 0; i < chart.fibre_dim(); ++i) fv.interior += u.vertical_part(i) * e.components[i];

    const auto field = u.on_y();
    const auto s = horizontalize(interior_product(std::span<const Expr>(field), poincare_cartan(l).assembled));
    fv.flux = s.components;

    fv.residual = fv.lie - fv.interior - horizontal_divergence(s, chart).components[0];
    if (!fv.residual.is_zero())
        throw InternalError("first variational formula residual is not identically zero: " +
                            to_string(fv.residual, chart.namer()));
    return fv;
}

bool is_variationally_trivial(const Lagrangian& l0) { return euler_lagrange(l0).is_zero(); }

namespace {

void combinations(int from, int size, int k, MultiIndex& cur, std::vector<MultiIndex>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int a = from; a < size; ++a) {
        cur.push_back(a);
        combinations(a + 1, size, k, cur, out);
        cur.pop_back();
    }
}

Expr monomial_expr(const Monomial& m, const Expr& coef)
{
    Expr::TermMap t;
    t.emplace(m, Rational(1));
    return Expr::from_terms(t) * coef;
}

bool mentions_velocity(const Expr& e)
{
    return !all_coords(e, [](const Coord& c) { return c.kind != CoordKind::Jet1; });
}

}  // namespace

FormOnY reconstruct_phi(const Lagrangian& l0)
{
    const auto& chart = l0.chart();
    const int n = chart.base_dim();
    if (!is_variationally_trivial(l0)) throw PreconditionError("Lagrangian is not variationally trivial");

    // density = sum over velocity monomials of (coefficient in x, y)
    std::map<Monomial, Expr, MonomialLess> rhs;
    for (const auto& [mono, c] : l0.density().terms()) {
        Monomial velocity;
        Monomial rest;
        for (const auto& f : mono) {
            if (f.atom.is_coord() && f.atom.coord().kind == CoordKind::Jet1) {
                if (f.exponent < 0) throw UnsupportedError("density is not polynomial in the velocities");
                velocity.push_back(f);
            } else {
                if (!f.atom.is_coord() && mentions_velocity(f.atom.arg()))
                    throw UnsupportedError("density is not polynomial in the velocities");
                rest.push_back(f);
            }
        }
        rhs[velocity] += monomial_expr(rest, Expr(c));
    }

    // One unknown per basis n-form; its column is the velocity expansion of h0(basis).
    std::vector<MultiIndex> basis;
    MultiIndex cur;
    combinations(0, chart.total_dim(), n, cur, basis);
    std::vector<std::map<Monomial, Rational, MonomialLess>> columns;
    std::map<Monomial, int, MonomialLess> row_of;
    for (const auto& [mono, c] : rhs) row_of.emplace(mono, 0);
    for (const auto& idx : basis) {
        const Expr h = horizontalize(FormOnY::term(chart, idx, Expr(1))).components[0];
        std::map<Monomial, Rational, MonomialLess> col(h.terms().begin(), h.terms().end());
        for (const auto& [mono, c] : col) row_of.emplace(mono, 0);
        columns.push_back(std::move(col));
    }
    int r = 0;
    for (auto& [mono, row] : row_of) row = r++;

    const int rows = static_cast<int>(row_of.size());
    const int cols = static_cast<int>(basis.size());
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    std::vector<Expr> b(rows);
    for (int j = 0; j < cols; ++j)
        for (const auto& [mono, c] : columns[j]) a[row_of.at(mono)][j] = c;
    for (const auto& [mono, c] : rhs) b[row_of.at(mono)] = c;

    // Reduced row echelon form over the rationals; the right-hand side
    // carries expression coefficients along.
    std::vector<int> pivot_col;
    int pr = 0;
    for (int j = 0; j < cols && pr < rows; ++j) {
        int p = pr;
        while (p < rows && a[p][j] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[pr]);
        std::swap(b[p], b[pr]);
        const Rational inv = Rational(1) / a[pr][j];
        for (auto& x : a[pr]) x *= inv;
        b[pr] = b[pr] * Expr(inv);
        for (int q = 0; q < rows; ++q) {
            if (q == pr || a[q][j] == 0) continue;
            const Rational factor = a[q][j];
            for (int k = 0; k < cols; ++k) a[q][k] -= factor * a[pr][k];
            b[q] -= b[pr] * Expr(factor);
        }
        pivot_col.push_back(j);
        ++pr;
    }

    FormOnY phi(chart, n);
    for (int q = 0; q < static_cast<int>(pivot_col.size()); ++q) phi.add(basis[pivot_col[q]], b[q]);

    const Expr leftover = l0.density() - horizontalize(phi).components[0];
    if (!leftover.is_zero()) {
        std::vector<Expr> unmatched;
        for (const auto& [mono, c] : leftover.terms()) unmatched.push_back(monomial_expr(mono, Expr(c)));
        throw ReconstructionError("density is not h0 of an n-form on Y; unmatched: " +
                                      to_string(leftover, chart.namer()),
                                  std::move(unmatched));
    }
    if (!exterior_derivative(phi).is_zero()) throw InternalError("reconstructed n-form is not closed");
    return phi;
}

FormOnY poincare_homotopy(const FormOnY& phi, const BundleChart& chart)
{
    const int p = phi.degree();
    if (p < 1) throw PreconditionError("homotopy operator needs a form of degree >= 1");
    if (phi.base_dim() != chart.base_dim() || phi.fibre_dim() != chart.fibre_dim())
        throw PreconditionError("form and chart disagree");
    for (const auto& [idx, c] : phi.components())
        if (!is_polynomial(c)) throw UnsupportedError("homotopy operator needs polynomial coefficients");
    if (!exterior_derivative(phi).is_zero()) throw PreconditionError("homotopy operator applied to a non-closed form");

    const Coord t = Coord::param(0);
    const Expr t_expr = Expr::coord(t);
    FormOnY sigma(chart, p - 1);
    for (const auto& [idx, c] : phi.components()) {
        // integral_0^1 t^{p-1} c(t z) dt, then contract dz^idx with the radial field
        Expr scaled = c;
        for (int a = 0; a < chart.total_dim(); ++a) {
            const Coord z = chart.basis_coord(a);
            scaled = substitute(scaled, Atom(z), t_expr * Expr::coord(z));
        }
        const Expr weight = integrate_param(scaled * pow_int(t_expr, p - 1), t);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            MultiIndex rest = idx;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
            const Expr radial = Expr::coord(chart.basis_coord(idx[k]));
            sigma.add(std::move(rest), (k % 2 == 0 ? weight : -weight) * radial);
        }
    }
    return sigma;
}

TrivialityCertificate certify_trivial(const Lagrangian& l0)
{
    TrivialityCertificate cert{reconstruct_phi(l0), std::nullopt};
    try {
        cert.sigma = poincare_homotopy(cert.phi, l0.chart());
    } catch (const UnsupportedError&) {
        // closed but outside the homotopy's expression class
    }
    return cert;
}

}  // namespace varcalc
