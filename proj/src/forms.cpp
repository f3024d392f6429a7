#include "varcalc/forms.hpp"

#include <algorithm>

namespace varcalc {

int normalize_index(MultiIndex& idx)
{
    int sign = 1;
    // Insertion sort counting transpositions; degrees are tiny.
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

SemibasicForm to_semibasic(const FormOnY& f)
{
    SemibasicForm out(f.base_dim(), f.fibre_dim(), f.degree());
    for (const auto& [idx, c] : f.components()) out.add(idx, c);
    return out;
}

FormOnY exterior_derivative(const FormOnY& f)
{
    const int dim = f.base_dim() + f.fibre_dim();
    if (f.degree() == dim) return FormOnY(f.base_dim(), f.fibre_dim(), dim);
    FormOnY out(f.base_dim(), f.fibre_dim(), f.degree() + 1);
    for (const auto& [idx, c] : f.components())
        for (int a = 0; a < dim; ++a) {
            const Coord z = a < f.base_dim() ? Coord::base(a) : Coord::fibre(a - f.base_dim());
            Expr d = diff(c, z);
            if (d.is_zero()) continue;
            MultiIndex next{a};
            next.insert(next.end(), idx.begin(), idx.end());
            out.add(std::move(next), d);
        }
    return out;
}

namespace {

// h0 applied to a single basis 1-form, as a semibasic 1-form over dx only.
SemibasicForm horizontal_image(int a, int n, int m)
{
    SemibasicForm out(n, m, 1);
    if (a < n) {
        out.add({a}, Expr(1));
    } else {
        for (int lambda = 0; lambda < n; ++lambda) out.add({lambda}, jet1_coord(a - n, lambda));
    }
    return out;
}

}  // namespace

HorizontalForm horizontalize(const SemibasicForm& f)
{
    const int n = f.base_dim();
    const int m = f.fibre_dim();
    if (f.degree() != n && f.degree() != n - 1)
        throw UnsupportedError("h0 is only modelled on forms of degree n-1 and n");

    SemibasicForm flat(n, m, f.degree());
    for (const auto& [idx, c] : f.components()) {
        SemibasicForm product(n, m, 0);
        product.add({}, c);
        for (int a : idx) product = wedge(product, horizontal_image(a, n, m));
        flat += product;
    }

    HorizontalForm out;
    out.degree = f.degree();
    if (f.degree() == n) {
        MultiIndex all(n);
        for (int l = 0; l < n; ++l) all[l] = l;
        out.components = {flat.coefficient(all)};
        return out;
    }
    // dx^0 ^ .. (no dx^lambda) .. ^ dx^{n-1} = (-1)^lambda omega_lambda
    out.components.resize(n);
    for (int lambda = 0; lambda < n; ++lambda) {
        MultiIndex rest;
        for (int l = 0; l < n; ++l)
            if (l != lambda) rest.push_back(l);
        const Expr c = flat.coefficient(rest);
        out.components[lambda] = lambda % 2 == 0 ? c : -c;
    }
    return out;
}

HorizontalForm horizontalize(const FormOnY& f) { return horizontalize(to_semibasic(f)); }

HorizontalForm horizontal_divergence(const HorizontalForm& s, const BundleChart& chart)
{
    const int n = chart.base_dim();
    if (s.degree != n - 1 || static_cast<int>(s.components.size()) != n)
        throw PreconditionError("horizontal divergence needs a form of degree n-1");
    Expr div;
    for (int lambda = 0; lambda < n; ++lambda) div += total_derivative(s.components[lambda], lambda, chart);
    return HorizontalForm{n, {div}};
}

SemibasicForm omega_lambda(const BundleChart& chart, int lambda)
{
    const int n = chart.base_dim();
    MultiIndex rest;
    for (int l = 0; l < n; ++l)
        if (l != lambda) rest.push_back(l);
    return SemibasicForm::term(chart, rest, Expr(lambda % 2 == 0 ? 1 : -1));
}

SemibasicForm omega(const BundleChart& chart)
{
    MultiIndex all(chart.base_dim());
    for (int l = 0; l < chart.base_dim(); ++l) all[l] = l;
    return SemibasicForm::term(chart, all, Expr(1));
}

template <class Kind>
std::string to_string(const BasicForm<Kind>& f, const BundleChart& chart)
{
    if (f.is_zero()) return "0";
    const auto namer = chart.namer();
    std::string out;
    for (const auto& [idx, c] : f.components()) {
        std::string basis;
        for (int a : idx) {
            if (!basis.empty()) basis += "^";
            basis += "d" + chart.name(chart.basis_coord(a));
        }
        std::string term;
        bool negative = false;
        if (c.size() == 1) {
            const auto& [mono, coef] = *c.terms().begin();
            negative = coef < 0;
            const Expr mag = negative ? -c : c;
            if (basis.empty())
                term = to_string(mag, namer);
            else if (mag == Expr(1))
                term = basis;
            else
                term = to_string(mag, namer) + "*" + basis;
        } else {
            term = basis.empty() ? to_string(c, namer) : "(" + to_string(c, namer) + ")*" + basis;
        }
        if (out.empty())
            out = (negative ? "-" : "") + term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out;
}

template std::string to_string(const FormOnY&, const BundleChart&);
template std::string to_string(const SemibasicForm&, const BundleChart&);

}  // namespace varcalc
