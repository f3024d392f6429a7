#include "varcalc/symmetry.hpp"

namespace varcalc {

ProjectableVectorField::ProjectableVectorField(BundleChart chart, std::vector<Expr> base_components,
                                               std::vector<Expr> fibre_components)
    : chart_(std::move(chart)), base_(std::move(base_components)), fibre_(std::move(fibre_components))
{
    if (static_cast<int>(base_.size()) != chart_.base_dim() || static_cast<int>(fibre_.size()) != chart_.fibre_dim())
        throw PreconditionError("vector field has the wrong number of components");
    for (const auto& e : base_)
        if (!all_coords(e, [&](const Coord& c) { return c.kind == CoordKind::Base && chart_.contains(c); }))
            throw PreconditionError("base components of a projectable field may depend on base coordinates only");
    for (const auto& e : fibre_)
        if (!all_coords(e, [&](const Coord& c) {
                return (c.kind == CoordKind::Base || c.kind == CoordKind::Fibre) && chart_.contains(c);
            }))
            throw PreconditionError("fibre components may depend on base and fibre coordinates only");
}

ProjectableVectorField::ProjectableVectorField(const BundleChart& chart)
    : ProjectableVectorField(chart, std::vector<Expr>(chart.base_dim()), std::vector<Expr>(chart.fibre_dim()))
{
}

std::vector<Expr> ProjectableVectorField::on_y() const
{
    std::vector<Expr> out = base_;
    out.insert(out.end(), fibre_.begin(), fibre_.end());
    return out;
}

Expr ProjectableVectorField::vertical_part(int i) const
{
    Expr v = fibre_[i];
    for (int mu = 0; mu < chart_.base_dim(); ++mu) v -= jet1_coord(i, mu) * base_[mu];
    return v;
}

Expr ProjectableVectorField::base_divergence() const
{
    Expr div;
    for (int lambda = 0; lambda < chart_.base_dim(); ++lambda) div += diff(base_[lambda], Coord::base(lambda));
    return div;
}

const Expr& ProlongedVectorField::jet2(int i, int lambda, int mu) const
{
    if (order_ < 2) throw PreconditionError("second-order coefficients of a first prolongation");
    return jet2_[i][lambda * n_ + mu];
}

Expr ProlongedVectorField::apply(const Expr& e) const
{
    if (order_ < 2 && jet_order(e) > 1) throw UnsupportedError("J^1u cannot act on second-order expressions");
    const int n = n_;
    const int m = static_cast<int>(fibre_.size());
    Expr out;
    auto term = [&](const Expr& coef, const Coord& c) {
        if (coef.is_zero()) return;
        if (Expr d = diff(e, c); !d.is_zero()) out += coef * d;
    };
    for (int lambda = 0; lambda < n; ++lambda) term(base_[lambda], Coord::base(lambda));
    for (int i = 0; i < m; ++i) {
        term(fibre_[i], Coord::fibre(i));
        for (int lambda = 0; lambda < n; ++lambda) term(jet1_[i][lambda], Coord::jet1(i, lambda));
        if (order_ == 2)
            for (int lambda = 0; lambda < n; ++lambda)
                for (int mu = lambda; mu < n; ++mu) term(jet2(i, lambda, mu), Coord::jet2(i, lambda, mu));
    }
    return out;
}

ProlongedVectorField prolong1(const ProjectableVectorField& u)
{
    const auto& chart = u.chart();
    const int n = chart.base_dim();
    ProlongedVectorField p;
    p.order_ = 1;
    p.n_ = n;
    p.base_ = u.base_components();
    p.fibre_ = u.fibre_components();
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        std::vector<Expr> row;
        for (int lambda = 0; lambda < n; ++lambda) {
            Expr c = total_derivative(u.fibre_components()[i], lambda, chart);
            for (int mu = 0; mu < n; ++mu)
                c -= jet1_coord(i, mu) * diff(u.base_components()[mu], Coord::base(lambda));
            row.push_back(std::move(c));
        }
        p.jet1_.push_back(std::move(row));
    }
    return p;
}

ProlongedVectorField prolong2(const ProjectableVectorField& u)
{
    const auto& chart = u.chart();
    const int n = chart.base_dim();
    ProlongedVectorField p = prolong1(u);
    p.order_ = 2;
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        std::vector<Expr> block(static_cast<std::size_t>(n * n));
        for (int lambda = 0; lambda < n; ++lambda)
            for (int mu = lambda; mu < n; ++mu) {
                Expr c = total_derivative(p.jet1_[i][lambda], mu, chart);
                for (int nu = 0; nu < n; ++nu)
                    c -= jet2_coord(i, lambda, nu) * diff(u.base_components()[nu], Coord::base(mu));
                block[lambda * n + mu] = c;
                block[mu * n + lambda] = std::move(c);
            }
        p.jet2_.push_back(std::move(block));
    }
    return p;
}

Lagrangian lie_derivative_lagrangian(const ProjectableVectorField& u, const Lagrangian& l)
{
    const auto& chart = l.chart();
    const auto j1 = prolong1(u);
    Expr density;
    for (int lambda = 0; lambda < chart.base_dim(); ++lambda)
        density += diff(u.base_components()[lambda] * l.density(), Coord::base(lambda));
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        density += u.fibre_components()[i] * diff(l.density(), Coord::fibre(i));
        for (int lambda = 0; lambda < chart.base_dim(); ++lambda)
            density += j1.jet1(i, lambda) * diff(l.density(), Coord::jet1(i, lambda));
    }
    return Lagrangian(chart, density);
}

EulerLagrangeOperator lie_derivative_el(const ProjectableVectorField& u, const EulerLagrangeOperator& e)
{
    const auto& chart = e.chart;
    const auto j2 = prolong2(u);
    const Expr div = u.base_divergence();
    EulerLagrangeOperator out{chart, {}};
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        Expr c = j2.apply(e.components[i]) + e.components[i] * div;
        for (int j = 0; j < chart.fibre_dim(); ++j)
            c += e.components[j] * diff(u.fibre_components()[j], Coord::fibre(i));
        out.components.push_back(std::move(c));
    }
    return out;
}

const char* to_string(InvarianceClass c)
{
    switch (c) {
    case InvarianceClass::LagrangianInvariant: return "LagrangianInvariant";
    case InvarianceClass::ELInvariantOnly: return "ELInvariantOnly";
    case InvarianceClass::NotInvariant: return "NotInvariant";
    }
    return "?";
}

InvarianceClass invariance_class(const ProjectableVectorField& u, const Lagrangian& l)
{
    const Lagrangian lie = lie_derivative_lagrangian(u, l);
    if (lie.density().is_zero()) return InvarianceClass::LagrangianInvariant;
    if (is_variationally_trivial(lie)) return InvarianceClass::ELInvariantOnly;
    return InvarianceClass::NotInvariant;
}

}  // namespace varcalc
