#include "varcalc/jet.hpp"

#include "varcalc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace varcalc {

namespace {

bool valid_name(const std::string& s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    if (!std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)); }))
        return false;
    return s != "sin" && s != "cos" && s != "exp" && s != "ln";
}

}  // namespace

BundleChart::BundleChart(std::vector<std::string> base_names, std::vector<std::string> fibre_names)
    : base_(std::move(base_names)), fibre_(std::move(fibre_names))
{
    if (base_.empty()) throw PreconditionError("a bundle chart needs at least one base coordinate");
    if (fibre_.empty()) throw PreconditionError("a bundle chart needs at least one fibre coordinate");
    std::set<std::string> seen;
    for (const auto* names : {&base_, &fibre_})
        for (const auto& s : *names) {
            if (!valid_name(s)) throw PreconditionError("invalid coordinate name '" + s + "'");
            if (!seen.insert(s).second) throw PreconditionError("duplicate coordinate name '" + s + "'");
        }
}

std::string BundleChart::name(const Coord& c) const
{
    if (!contains(c)) return default_name(c);
    switch (c.kind) {
    case CoordKind::Base: return base_[c.index];
    case CoordKind::Fibre: return fibre_[c.index];
    case CoordKind::Jet1: return fibre_[c.index] + "_" + base_[c.d1];
    case CoordKind::Jet2: return fibre_[c.index] + "_" + base_[c.d1] + base_[c.d2];
    case CoordKind::Param: break;
    }
    return default_name(c);
}

CoordNamer BundleChart::namer() const
{
    return [chart = *this](const Coord& c) { return chart.name(c); };
}

bool BundleChart::contains(const Coord& c) const
{
    auto in_base = [&](int l) { return l >= 0 && l < base_dim(); };
    switch (c.kind) {
    case CoordKind::Base: return in_base(c.index);
    case CoordKind::Fibre: return c.index >= 0 && c.index < fibre_dim();
    case CoordKind::Jet1: return c.index >= 0 && c.index < fibre_dim() && in_base(c.d1);
    case CoordKind::Jet2: return c.index >= 0 && c.index < fibre_dim() && in_base(c.d1) && in_base(c.d2) && c.d1 <= c.d2;
    case CoordKind::Param: return false;
    }
    return false;
}

BundleChart::Resolved BundleChart::resolve(std::string_view id) const
{
    auto find = [](const std::vector<std::string>& v, std::string_view s) -> int {
        auto it = std::find(v.begin(), v.end(), s);
        return it == v.end() ? -1 : static_cast<int>(it - v.begin());
    };
    const auto sep = id.find('_');
    if (sep == std::string_view::npos) {
        if (int l = find(base_, id); l >= 0) return {Coord::base(l), {}};
        if (int i = find(fibre_, id); i >= 0) return {Coord::fibre(i), {}};
        return {std::nullopt, "unknown coordinate '" + std::string(id) + "'"};
    }
    const std::string_view head = id.substr(0, sep);
    const std::string_view suffix = id.substr(sep + 1);
    const int i = find(fibre_, head);
    if (i < 0) return {std::nullopt, "'" + std::string(head) + "' is not a fibre coordinate"};
    if (suffix.find('_') != std::string_view::npos || suffix.empty())
        return {std::nullopt, "malformed jet suffix in '" + std::string(id) + "'"};

    std::vector<Coord> matches;
    if (int l = find(base_, suffix); l >= 0) matches.push_back(Coord::jet1(i, l));
    for (std::size_t cut = 1; cut < suffix.size(); ++cut) {
        const int l = find(base_, suffix.substr(0, cut));
        const int m = find(base_, suffix.substr(cut));
        if (l >= 0 && m >= 0) matches.push_back(Coord::jet2(i, l, m));
    }
    if (matches.empty()) {
        // Three or more base names would be a third-order coordinate.
        for (std::size_t a = 1; a < suffix.size(); ++a)
            for (std::size_t b = a + 1; b < suffix.size(); ++b)
                if (find(base_, suffix.substr(0, a)) >= 0 && find(base_, suffix.substr(a, b - a)) >= 0)
                    return {std::nullopt, "jet coordinate '" + std::string(id) + "' exceeds order 2"};
        return {std::nullopt, "unknown jet suffix '" + std::string(suffix) + "'"};
    }
    std::sort(matches.begin(), matches.end());
    matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
    if (matches.size() > 1) return {std::nullopt, "ambiguous jet suffix '" + std::string(suffix) + "'"};
    return {matches.front(), {}};
}

Expr base_coord(int lambda) { return Expr::coord(Coord::base(lambda)); }
Expr fibre_coord(int i) { return Expr::coord(Coord::fibre(i)); }
Expr jet1_coord(int i, int lambda) { return Expr::coord(Coord::jet1(i, lambda)); }
Expr jet2_coord(int i, int lambda, int mu) { return Expr::coord(Coord::jet2(i, lambda, mu)); }

int jet_order(const Expr& e)
{
    int order = 0;
    all_coords(e, [&](const Coord& c) {
        if (c.kind == CoordKind::Jet1) order = std::max(order, 1);
        if (c.kind == CoordKind::Jet2) order = 2;
        return true;
    });
    return order;
}

Expr total_derivative(const Expr& e, int lambda, const BundleChart& chart)
{
    if (jet_order(e) > 1)
        throw UnsupportedError("total derivative of a second-order expression needs third-order jets");
    Expr out = diff(e, Coord::base(lambda));
    for (int i = 0; i < chart.fibre_dim(); ++i) {
        if (Expr d = diff(e, Coord::fibre(i)); !d.is_zero()) out += jet1_coord(i, lambda) * d;
        for (int mu = 0; mu < chart.base_dim(); ++mu)
            if (Expr d = diff(e, Coord::jet1(i, mu)); !d.is_zero()) out += jet2_coord(i, lambda, mu) * d;
    }
    return out;
}

}  // namespace varcalc
