#pragma once

#include "varcalc/symmetry.hpp"

#include <optional>
#include <vector>

namespace varcalc {

enum class LawForm {
    StrictConservation,  // d_lambda J^lambda = Q^i E_i
    WeakEqualityOnly,    // h0(phi) ~ h0 d(u -| H_L); no sigma available
};

const char* to_string(LawForm f);

/// Outcome of the conservation-law pipeline for one (u, L).
///
/// The weak conservation law is certified off shell: `residual` is the
/// horizontal divergence of the law's flux and equals sum_i Q^i E_i exactly.
/// For LagrangianInvariant, `current` is the bracket
/// pi^lambda_i (u^mu y^i_mu - u^i) - u^lambda L and residual is the divergence
/// of its negative, h0 d(u -| H_L). For ELInvariantOnly with sigma, `current`
/// is h0(u -| H_L - sigma) and residual its divergence. For WeakEqualityOnly,
/// `current` is h0(u -| H_L) and residual = div(current) - h0(phi).
struct NoetherReport {
    InvarianceClass classification = InvarianceClass::NotInvariant;
    EulerLagrangeOperator euler_lagrange;
    Expr lie_density;
    std::optional<HorizontalForm> current{};
    std::optional<TrivialityCertificate> certificate{};
    std::optional<std::vector<Expr>> characteristics{};
    std::optional<Expr> residual{};
    std::optional<LawForm> law_form{};
};

/// J^lambda = sum_i pi^lambda_i (sum_mu u^mu y^i_mu - u^i) - u^lambda L.
HorizontalForm noether_current(const ProjectableVectorField& u, const Lagrangian& l);

/// h0(u -| H_L), the boundary term of the first variational formula.
HorizontalForm boundary_flux(const ProjectableVectorField& u, const Lagrangian& l);

/// h0(u -| H_L) - h0(sigma). Throws PreconditionError without sigma.
HorizontalForm corrected_current(const ProjectableVectorField& u, const Lagrangian& l,
                                 const TrivialityCertificate& cert);

/// Q^i = -(u^i - y^i_mu u^mu).
std::vector<Expr> characteristics(const ProjectableVectorField& u);

/// Full pipeline. Throws InternalError if the certifying identity fails and
/// ReconstructionError if a trivial Lie derivative cannot be written as h0(phi).
NoetherReport verify(const ProjectableVectorField& u, const Lagrangian& l);

struct SameLawResult {
    bool el_equal = false;
    NoetherReport original;
    NoetherReport shifted;
    bool characteristics_equal = false;
};

/// Compares the laws of L and L + L0 for a variationally trivial L0.
SameLawResult same_law_check(const Lagrangian& l, const Lagrangian& l0, const ProjectableVectorField& u);

}  // namespace varcalc
