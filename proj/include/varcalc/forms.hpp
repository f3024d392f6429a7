#pragma once

// Exterior forms over the coframe dx^0 < ... < dx^{n-1} < dy^0 < ... < dy^{m-1}.
// Basis elements are strictly increasing multi-indices into that order; the
// contact forms theta^i = dy^i - y^i_lambda dx^lambda are never stored.

#include "varcalc/errors.hpp"
#include "varcalc/expr.hpp"
#include "varcalc/jet.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace varcalc {

using MultiIndex = std::vector<int>;

/// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int normalize_index(MultiIndex& idx);

template <class Kind>
class BasicForm {
public:
    using Components = std::map<MultiIndex, Expr>;

    BasicForm(int base_dim, int fibre_dim, int degree) : n_(base_dim), m_(fibre_dim), degree_(degree)
    {
        if (degree < 0 || degree > n_ + m_) throw PreconditionError("form degree out of range");
    }
    BasicForm(const BundleChart& chart, int degree) : BasicForm(chart.base_dim(), chart.fibre_dim(), degree) {}

    /// coef * dz^{idx[0]} ^ ... ^ dz^{idx[p-1]}, idx in any order.
    static BasicForm term(const BundleChart& chart, MultiIndex idx, const Expr& coef)
    {
        BasicForm f(chart, static_cast<int>(idx.size()));
        f.add(std::move(idx), coef);
        return f;
    }

    int degree() const { return degree_; }
    int base_dim() const { return n_; }
    int fibre_dim() const { return m_; }
    const Components& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Expr coefficient(const MultiIndex& sorted) const
    {
        auto it = comps_.find(sorted);
        return it == comps_.end() ? Expr() : it->second;
    }

    /// Adds coef * dz^idx with sign normalization. Coefficients must respect
    /// the jet order of the form kind.
    void add(MultiIndex idx, const Expr& coef)
    {
        if (static_cast<int>(idx.size()) != degree_) throw PreconditionError("basis element of the wrong degree");
        for (int a : idx)
            if (a < 0 || a >= n_ + m_) throw PreconditionError("basis index out of range");
        if (jet_order(coef) > Kind::max_jet_order)
            throw PreconditionError(std::string("coefficient too high in jet order for a ") + Kind::name);
        const int sign = normalize_index(idx);
        if (sign == 0 || coef.is_zero()) return;
        Expr& slot = comps_[idx];
        slot += sign > 0 ? coef : -coef;
        if (slot.is_zero()) comps_.erase(idx);
    }

    BasicForm& operator+=(const BasicForm& b)
    {
        check_compatible(b);
        for (const auto& [idx, c] : b.comps_) add(idx, c);
        return *this;
    }
    BasicForm& operator-=(const BasicForm& b) { return *this += b * Expr(-1); }
    friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
    friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
    friend BasicForm operator*(const BasicForm& a, const Expr& s)
    {
        BasicForm out(a.n_, a.m_, a.degree_);
        for (const auto& [idx, c] : a.comps_) out.add(idx, c * s);
        return out;
    }

    friend bool operator==(const BasicForm& a, const BasicForm& b)
    {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }

    void check_compatible(const BasicForm& b) const
    {
        if (n_ != b.n_ || m_ != b.m_ || degree_ != b.degree_) throw PreconditionError("incompatible forms");
    }

private:
    int n_;
    int m_;
    int degree_;
    Components comps_;
};

struct OnYKind {
    static constexpr int max_jet_order = 0;
    static constexpr const char* name = "form on Y";
};
struct SemibasicKind {
    static constexpr int max_jet_order = 1;
    static constexpr const char* name = "semibasic form";
};

/// Coefficients in (x, y) only. Houses phi and sigma.
using FormOnY = BasicForm<OnYKind>;
/// Coefficients in (x, y, y_lambda); basis dx, dy only.
using SemibasicForm = BasicForm<SemibasicKind>;

SemibasicForm to_semibasic(const FormOnY& f);

/// Horizontal form on the omega basis. Degree n: one component (coefficient
/// of omega). Degree n-1: n components (coefficients of omega_lambda).
struct HorizontalForm {
    int degree = 0;
    std::vector<Expr> components;

    friend bool operator==(const HorizontalForm&, const HorizontalForm&) = default;
};

/// Graded-commutative product.
template <class Kind>
BasicForm<Kind> wedge(const BasicForm<Kind>& a, const BasicForm<Kind>& b)
{
    if (a.base_dim() != b.base_dim() || a.fibre_dim() != b.fibre_dim())
        throw PreconditionError("wedge of forms over different charts");
    if (a.degree() + b.degree() > a.base_dim() + a.fibre_dim()) throw PreconditionError("wedge degree too high");
    BasicForm<Kind> out(a.base_dim(), a.fibre_dim(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.components())
        for (const auto& [ib, cb] : b.components()) {
            MultiIndex idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add(std::move(idx), ca * cb);
        }
    return out;
}

/// Contraction u -| f with u given by its n+m components along d/dx^lambda, d/dy^i.
template <class Kind>
BasicForm<Kind> interior_product(std::span<const Expr> field, const BasicForm<Kind>& f)
{
    if (static_cast<int>(field.size()) != f.base_dim() + f.fibre_dim())
        throw PreconditionError("vector field has the wrong number of components");
    if (f.degree() < 1) throw PreconditionError("interior product of a 0-form");
    BasicForm<Kind> out(f.base_dim(), f.fibre_dim(), f.degree() - 1);
    for (const auto& [idx, c] : f.components())
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (field[idx[k]].is_zero()) continue;
            MultiIndex rest = idx;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
            out.add(std::move(rest), (k % 2 == 0 ? c : -c) * field[idx[k]]);
        }
    return out;
}

/// d on forms on Y; d(d f) = 0.
FormOnY exterior_derivative(const FormOnY& f);

/// The horizontal operator h0: dx -> dx, dy^i -> y^i_lambda dx^lambda.
/// Only degrees n-1 and n are supported.
HorizontalForm horizontalize(const SemibasicForm& f);
HorizontalForm horizontalize(const FormOnY& f);

/// sum_lambda d_lambda S^lambda for S of degree n-1; the result has degree n.
HorizontalForm horizontal_divergence(const HorizontalForm& s, const BundleChart& chart);

/// omega_lambda = d/dx^lambda -| dx^0 ^ ... ^ dx^{n-1} as a semibasic form.
SemibasicForm omega_lambda(const BundleChart& chart, int lambda);
SemibasicForm omega(const BundleChart& chart);

/// Human-readable form, e.g. "1/2*x*dy - 1/2*y*dx", "dx^dy", "0".
template <class Kind>
std::string to_string(const BasicForm<Kind>& f, const BundleChart& chart);

}  // namespace varcalc
