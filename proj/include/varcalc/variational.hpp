#pragma once

#include "varcalc/forms.hpp"
#include "varcalc/jet.hpp"

#include <optional>
#include <vector>

namespace varcalc {

class ProjectableVectorField;

/// First-order Lagrangian L = density * omega on J^1Y.
class Lagrangian {
public:
    /// Throws PreconditionError if the density has second-order jets or
    /// coordinates outside the chart.
    Lagrangian(BundleChart chart, Expr density);

    const BundleChart& chart() const { return chart_; }
    const Expr& density() const { return density_; }

    friend Lagrangian operator+(const Lagrangian& a, const Lagrangian& b);
    friend bool operator==(const Lagrangian&, const Lagrangian&) = default;

private:
    BundleChart chart_;
    Expr density_;
};

/// Components E_i of E_L = E_i theta^i ^ omega.
struct EulerLagrangeOperator {
    BundleChart chart;
    std::vector<Expr> components;

    bool is_zero() const;
    friend bool operator==(const EulerLagrangeOperator&, const EulerLagrangeOperator&) = default;
};

/// H_L = pi^lambda_i dy^i ^ omega_lambda + (L - y^i_lambda pi^lambda_i) omega.
struct PoincareCartanForm {
    BundleChart chart;
    std::vector<std::vector<Expr>> momenta;  // momenta[i][lambda] = dL/dy^i_lambda
    Expr rest;
    SemibasicForm assembled;
};

/// phi closed with h0(phi) = L0; sigma with d sigma = phi when it could be built.
struct TrivialityCertificate {
    FormOnY phi;
    std::optional<FormOnY> sigma;

    bool exact() const { return sigma.has_value(); }
};

/// The four parts of L_{J^1u} L = u_V -| E_L + h0 d(u -| H_L).
struct FirstVariation {
    Expr lie;
    Expr interior;
    std::vector<Expr> flux;
    Expr residual;
};

EulerLagrangeOperator euler_lagrange(const Lagrangian& l);

PoincareCartanForm poincare_cartan(const Lagrangian& l);

/// Throws InternalError if the residual is not identically zero.
FirstVariation first_variation_decompose(const ProjectableVectorField& u, const Lagrangian& l);

bool is_variationally_trivial(const Lagrangian& l0);

/// Raised when a density cannot be written as h0 of a form on Y.
class ReconstructionError : public Error {
public:
    ReconstructionError(const std::string& what, std::vector<Expr> unmatched)
        : Error(what), unmatched_(std::move(unmatched))
    {
    }
    /// Leftover jet monomials (with their coefficients) that no basis form produces.
    const std::vector<Expr>& unmatched() const { return unmatched_; }

private:
    std::vector<Expr> unmatched_;
};

/// The closed n-form phi on Y with h0(phi) = density of l0. Solves the
/// monomial-matching system over the n-form basis by exact elimination.
FormOnY reconstruct_phi(const Lagrangian& l0);

/// Radial homotopy operator on a star-shaped chart centred at the origin:
/// d(poincare_homotopy(phi)) = phi for closed polynomial phi of degree >= 1.
FormOnY poincare_homotopy(const FormOnY& phi, const BundleChart& chart);

/// reconstruct_phi followed by poincare_homotopy when the latter applies.
TrivialityCertificate certify_trivial(const Lagrangian& l0);

}  // namespace varcalc
