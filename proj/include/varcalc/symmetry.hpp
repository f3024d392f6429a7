#pragma once

#include "varcalc/variational.hpp"

#include <vector>

namespace varcalc {

/// u = u^lambda(x) d_lambda + u^i(x, y) d_i.
class ProjectableVectorField {
public:
    /// Throws PreconditionError unless base components depend on base
    /// coordinates only and fibre components on base and fibre coordinates.
    ProjectableVectorField(BundleChart chart, std::vector<Expr> base_components, std::vector<Expr> fibre_components);

    /// The zero field.
    explicit ProjectableVectorField(const BundleChart& chart);

    const BundleChart& chart() const { return chart_; }
    const std::vector<Expr>& base_components() const { return base_; }
    const std::vector<Expr>& fibre_components() const { return fibre_; }

    /// All n + m components in coframe order, for interior products.
    std::vector<Expr> on_y() const;

    /// u^i - y^i_mu u^mu, the coefficient of d_i in u_V.
    Expr vertical_part(int i) const;

    /// sum_lambda d u^lambda / d x^lambda
    Expr base_divergence() const;

private:
    BundleChart chart_;
    std::vector<Expr> base_;
    std::vector<Expr> fibre_;
};

/// J^1u or J^2u.
class ProlongedVectorField {
public:
    int order() const { return order_; }
    const std::vector<Expr>& base_components() const { return base_; }
    const std::vector<Expr>& fibre_components() const { return fibre_; }
    /// Coefficient of d/dy^i_lambda.
    const Expr& jet1(int i, int lambda) const { return jet1_[i][lambda]; }
    /// Coefficient of d/dy^i_{lambda mu}; order 2 only. Symmetric in (lambda, mu).
    const Expr& jet2(int i, int lambda, int mu) const;

    /// The prolonged field acting as a derivation on e.
    Expr apply(const Expr& e) const;

private:
    friend ProlongedVectorField prolong1(const ProjectableVectorField& u);
    friend ProlongedVectorField prolong2(const ProjectableVectorField& u);

    ProlongedVectorField() = default;

    int order_ = 1;
    int n_ = 0;
    std::vector<Expr> base_;
    std::vector<Expr> fibre_;
    std::vector<std::vector<Expr>> jet1_;  // [i][lambda]
    std::vector<std::vector<Expr>> jet2_;  // [i][pair index of lambda <= mu]
};

ProlongedVectorField prolong1(const ProjectableVectorField& u);
ProlongedVectorField prolong2(const ProjectableVectorField& u);

/// sum_lambda d_lambda(u^lambda L) + u^i d_i L + (jet1 coefficient) dL/dy^i_lambda,
/// with d_lambda the partial derivative.
Lagrangian lie_derivative_lagrangian(const ProjectableVectorField& u, const Lagrangian& l);

/// Lie derivative of E_i theta^i ^ omega along J^2u:
/// J^2u(E_i) + E_j d_i u^j + E_i d_lambda u^lambda.
EulerLagrangeOperator lie_derivative_el(const ProjectableVectorField& u, const EulerLagrangeOperator& e);

enum class InvarianceClass { LagrangianInvariant, ELInvariantOnly, NotInvariant };

const char* to_string(InvarianceClass c);

InvarianceClass invariance_class(const ProjectableVectorField& u, const Lagrangian& l);

}  // namespace varcalc
