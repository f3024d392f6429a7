#include "varcalc/noether.hpp"

namespace varcalc {

const char* to_string(LawForm f)
{
    return f == LawForm::StrictConservation ? "StrictConservation" : "WeakEqualityOnly";
}

HorizontalForm noether_current(const ProjectableVectorField& u, const Lagrangian& l)
{
    const auto& chart = l.chart();
    const auto pc = poincare_cartan(l);
    HorizontalForm j{chart.base_dim() - 1, {}};
    for (int lambda = 0; lambda < chart.base_dim(); ++lambda) {
        Expr c = -(u.base_components()[lambda] * l.density());
        for (int i = 0; i < chart.fibre_dim(); ++i) c -= pc.momenta[i][lambda] * u.vertical_part(i);
        j.components.push_back(std::move(c));
    }
    return j;
}

HorizontalForm boundary_flux(const ProjectableVectorField& u, const Lagrangian& l)
{
    const auto field = u.on_y();
    return horizontalize(interior_product(std::span<const Expr>(field), poincare_cartan(l).assembled));
}

HorizontalForm corrected_current(const ProjectableVectorField& u, const Lagrangian& l,
                                 const TrivialityCertificate& cert)
{
    if (!cert.sigma) throw PreconditionError("corrected current needs sigma with d sigma = phi");
    HorizontalForm s = boundary_flux(u, l);
    const HorizontalForm hs = horizontalize(*cert.sigma);
    for (std::size_t lambda = 0; lambda < s.components.size(); ++lambda) s.components[lambda] -= hs.components[lambda];
    return s;
}

std::vector<Expr> characteristics(const ProjectableVectorField& u)
{
    std::vector<Expr> q;
    for (int i = 0; i < u.chart().fibre_dim(); ++i) q.push_back(-u.vertical_part(i));
    return q;
}

NoetherReport verify(const ProjectableVectorField& u, const Lagrangian& l)
{
    const auto& chart = l.chart();
    NoetherReport r{.euler_lagrange = euler_lagrange(l), .lie_density = lie_derivative_lagrangian(u, l).density()};
    if (r.lie_density.is_zero())
        r.classification = InvarianceClass::LagrangianInvariant;
    else if (is_variationally_trivial(Lagrangian(chart, r.lie_density)))
        r.classification = InvarianceClass::ELInvariantOnly;
    else
        r.classification = InvarianceClass::NotInvariant;
    if (r.classification == InvarianceClass::NotInvariant) return r;

    Expr residual;
    if (r.classification == InvarianceClass::LagrangianInvariant) {
        r.current = noether_current(u, l);
        HorizontalForm flux = *r.current;
        for (auto& c : flux.components) c = -c;
        residual = horizontal_divergence(flux, chart).components[0];
        r.law_form = LawForm::StrictConservation;
    } else {
        r.certificate = certify_trivial(Lagrangian(chart, r.lie_density));
        if (r.certificate->exact()) {
            r.current = corrected_current(u, l, *r.certificate);
            residual = horizontal_divergence(*r.current, chart).components[0];
            r.law_form = LawForm::StrictConservation;
        } else {
            r.current = boundary_flux(u, l);
            residual = horizontal_divergence(*r.current, chart).components[0] -
                       horizontalize(r.certificate->phi).components[0];
            r.law_form = LawForm::WeakEqualityOnly;
        }
    }
    r.characteristics = characteristics(u);

    Expr check = residual;
    for (int i = 0; i < chart.fibre_dim(); ++i) check -= (*r.characteristics)[i] * r.euler_lagrange.components[i];
    if (!check.is_zero())
        throw InternalError("certifying identity failed: residual - Q.E = " + to_string(check, chart.namer()));
    r.residual = std::move(residual);
    return r;
}

SameLawResult same_law_check(const Lagrangian& l, const Lagrangian& l0, const ProjectableVectorField& u)
{
    if (!is_variationally_trivial(l0)) throw PreconditionError("the added Lagrangian is not variationally trivial");
    const Lagrangian shifted = l + l0;
    SameLawResult out{
        .el_equal = euler_lagrange(shifted) == euler_lagrange(l), .original = verify(u, l), .shifted = verify(u, shifted)};
    out.characteristics_equal = out.original.characteristics == out.shifted.characteristics;
    return out;
}

}  // namespace varcalc
