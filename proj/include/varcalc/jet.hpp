#pragma once

#include "varcalc/expr.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace varcalc {

/// Coordinates (x^lambda, y^i) of a bundle Y -> X over a single chart.
class BundleChart {
public:
    /// Throws PreconditionError on empty lists, duplicates or malformed names.
    BundleChart(std::vector<std::string> base_names, std::vector<std::string> fibre_names);

    int base_dim() const { return static_cast<int>(base_.size()); }
    int fibre_dim() const { return static_cast<int>(fibre_.size()); }
    /// n + m, the number of 1-form basis elements dx^lambda, dy^i on Y.
    int total_dim() const { return base_dim() + fibre_dim(); }

    const std::vector<std::string>& base_names() const { return base_; }
    const std::vector<std::string>& fibre_names() const { return fibre_; }

    /// Printed name: t, y, y_t, y_tx (second-order suffix in declaration order).
    std::string name(const Coord& c) const;
    CoordNamer namer() const;

    struct Resolved {
        std::optional<Coord> coord;
        std::string error;  // set when coord is empty
    };
    /// Parses the underscore jet convention. Suffixes of two base names are
    /// normalized to sorted order.
    Resolved resolve(std::string_view identifier) const;

    /// Coordinate number a in the basis order x^0..x^{n-1}, y^0..y^{m-1}.
    Coord basis_coord(int a) const { return a < base_dim() ? Coord::base(a) : Coord::fibre(a - base_dim()); }

    /// Indices within range, no auxiliary parameters.
    bool contains(const Coord& c) const;

    friend bool operator==(const BundleChart&, const BundleChart&) = default;

private:
    std::vector<std::string> base_;
    std::vector<std::string> fibre_;
};

Expr base_coord(int lambda);
Expr fibre_coord(int i);
Expr jet1_coord(int i, int lambda);
Expr jet2_coord(int i, int lambda, int mu);

/// Highest jet order among the coordinates of e (0 when none are jets).
int jet_order(const Expr& e);

/// d_lambda = d/dx^lambda + y^i_lambda d/dy^i + y^i_{lambda mu} d/dy^i_mu.
/// Throws UnsupportedError if e already has second-order jet coordinates.
Expr total_derivative(const Expr& e, int lambda, const BundleChart& chart);

}  // namespace varcalc
