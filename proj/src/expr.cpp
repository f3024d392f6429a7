#include "varcalc/expr.hpp"

#include "varcalc/errors.hpp"

#include <algorithm>
#include <utility>

namespace varcalc {

const char* func_name(Func f)
{
    switch (f) {
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sin: return "sin";
    }
    return "?";
}

Atom::Atom(Func f, Expr arg) : v_(FuncApp{f, std::make_shared<const Expr>(std::move(arg))}) {}

std::strong_ordering operator<=>(const Atom& a, const Atom& b)
{
    if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
    if (a.is_coord()) return a.coord() <=> b.coord();
    const auto& fa = std::get<Atom::FuncApp>(a.v_);
    const auto& fb = std::get<Atom::FuncApp>(b.v_);
    if (fa.func != fb.func) return fa.func <=> fb.func;
    if (fa.arg == fb.arg) return std::strong_ordering::equal;
    return *fa.arg <=> *fb.arg;
}

namespace {

long long degree(const Monomial& m)
{
    long long d = 0;
    for (const auto& f : m) d += f.exponent;
    return d;
}

// Lexicographic: the smaller atom, or the larger power of the same atom, comes first.
std::strong_ordering lex(const Monomial& a, const Monomial& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (auto c = a[k].atom <=> b[k].atom; c != 0) return c;
        if (a[k].exponent != b[k].exponent) return b[k].exponent <=> a[k].exponent;
    }
    return a.size() <=> b.size();
}

}  // namespace

std::strong_ordering compare(const Monomial& a, const Monomial& b)
{
    if (auto da = degree(a), db = degree(b); da != db) return db <=> da;
    return lex(a, b);
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

Monomial multiply(const Monomial& a, const Monomial& b)
{
    Monomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->atom < j->atom)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->atom < i->atom) {
            out.push_back(*j++);
        } else {
            if (int e = i->exponent + j->exponent; e != 0) out.push_back({i->atom, e});
            ++i;
            ++j;
        }
    }
    return out;
}

namespace {

Monomial with_exponent_delta(Monomial m, const Atom& atom, int delta)
{
    auto it = std::lower_bound(m.begin(), m.end(), atom, [](const Factor& f, const Atom& a) { return f.atom < a; });
    if (it != m.end() && it->atom == atom) {
        it->exponent += delta;
        if (it->exponent == 0) m.erase(it);
    } else if (delta != 0) {
        m.insert(it, Factor{atom, delta});
    }
    return m;
}

}  // namespace

Expr::Expr(const Rational& c)
{
    if (c != 0) terms_.emplace(Monomial{}, c);
}

// Merges one term, applying sin(a)^2 -> 1 - cos(a)^2 until no sine power
// above one remains.
void Expr::accumulate(Monomial m, const Rational& c)
{
    if (c == 0) return;
    for (const auto& f : m) {
        if (!f.atom.is_coord() && f.atom.func() == Func::Sin && f.exponent >= 2) {
            const Atom sine = f.atom;
            const Atom cosine(Func::Cos, sine.arg());
            Monomial lowered = with_exponent_delta(std::move(m), sine, -2);
            Monomial with_cos = with_exponent_delta(lowered, cosine, 2);
            accumulate(std::move(lowered), c);
            accumulate(std::move(with_cos), -c);
            return;
        }
    }
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Expr Expr::atom(const Atom& a, int exponent)
{
    Expr e;
    if (exponent == 0) return Expr(1);
    e.accumulate(Monomial{Factor{a, exponent}}, 1);
    return e;
}

Expr Expr::function(Func f, const Expr& arg)
{
    if (arg.is_zero()) {
        switch (f) {
        case Func::Sin: return Expr(0);
        case Func::Cos: return Expr(1);
        case Func::Exp: return Expr(1);
        case Func::Ln: break;
        }
    }
    return atom(Atom(f, arg));
}

Expr Expr::from_terms(const TermMap& terms)
{
    Expr e;
    for (const auto& [m, c] : terms) e.accumulate(m, c);
    return e;
}

bool Expr::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

std::optional<Rational> Expr::constant_value() const
{
    if (terms_.empty()) return Rational(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
}

Expr& Expr::operator+=(const Expr& b)
{
    for (const auto& [m, c] : b.terms_) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Expr& Expr::operator-=(const Expr& b) { return *this += -b; }

Expr& Expr::operator*=(const Expr& b) { return *this = *this * b; }

Expr operator*(const Expr& a, const Expr& b)
{
    Expr out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.accumulate(multiply(ma, mb), ca * cb);
    return out;
}

Expr operator-(const Expr& a)
{
    Expr out = a;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Expr operator/(const Expr& a, const Rational& b)
{
    if (b == 0) throw PreconditionError("division by zero");
    Expr out = a;
    for (auto& [m, c] : out.terms_) c /= b;
    return out;
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b)
{
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
        if (auto c = compare(i->first, j->first); c != 0) return c;
        if (i->second != j->second) return i->second < j->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
}

Expr pow_int(const Expr& a, int k)
{
    if (k < 0) {
        if (a.size() != 1 || a.is_constant()) {
            if (auto c = a.constant_value(); c && *c != 0) return pow_int(Expr(Rational(1) / *c), -k);
            throw UnsupportedError("negative power of a compound expression (rational functions are not supported)");
        }
        const auto& [m, c] = *a.terms().begin();
        Monomial inv = m;
        for (auto& f : inv) f.exponent = -f.exponent;
        Expr::TermMap t;
        t.emplace(std::move(inv), Rational(1) / c);
        return pow_int(Expr::from_terms(t), -k);
    }
    Expr result(1);
    Expr base = a;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

namespace {

Expr atom_derivative(const Atom& atom, const Coord& c)
{
    if (atom.is_coord()) return atom.coord() == c ? Expr(1) : Expr(0);
    Expr inner = diff(atom.arg(), c);
    if (inner.is_zero()) return inner;
    switch (atom.func()) {
    case Func::Sin: return Expr::function(Func::Cos, atom.arg()) * inner;
    case Func::Cos: return -(Expr::function(Func::Sin, atom.arg()) * inner);
    case Func::Exp: return Expr::function(Func::Exp, atom.arg()) * inner;
    case Func::Ln:
        if (atom.arg().size() != 1)
            throw UnsupportedError("derivative of ln of a compound argument needs rational functions");
        return pow_int(atom.arg(), -1) * inner;
    }
    return Expr(0);
}

}  // namespace

Expr diff(const Expr& e, const Coord& c)
{
    Expr out;
    for (const auto& [m, coef] : e.terms()) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            Expr d = atom_derivative(m[k].atom, c);
            if (d.is_zero()) continue;
            Monomial rest = with_exponent_delta(m, m[k].atom, -1);
            Expr::TermMap t;
            t.emplace(std::move(rest), coef * m[k].exponent);
            out += Expr::from_terms(t) * d;
        }
    }
    return out;
}

Expr substitute(const Expr& e, const Atom& a, const Expr& r)
{
    Expr out;
    for (const auto& [m, coef] : e.terms()) {
        Expr term(coef);
        Monomial untouched;
        for (const auto& f : m) {
            if (f.atom == a) {
                term *= pow_int(r, f.exponent);
            } else if (!f.atom.is_coord()) {
                Expr arg = substitute(f.atom.arg(), a, r);
                if (arg == f.atom.arg())
                    untouched.push_back(f);
                else
                    term *= pow_int(Expr::function(f.atom.func(), arg), f.exponent);
            } else {
                untouched.push_back(f);
            }
        }
        Expr::TermMap t;
        t.emplace(std::move(untouched), 1);
        out += term * Expr::from_terms(t);
    }
    return out;
}

bool contains(const Expr& e, const Coord& c)
{
    return !all_coords(e, [&](const Coord& x) { return x != c; });
}

bool all_coords(const Expr& e, const std::function<bool(const Coord&)>& pred)
{
    for (const auto& [m, coef] : e.terms())
        for (const auto& f : m) {
            if (f.atom.is_coord() ? !pred(f.atom.coord()) : !all_coords(f.atom.arg(), pred)) return false;
        }
    return true;
}

bool is_polynomial(const Expr& e)
{
    for (const auto& [m, coef] : e.terms())
        for (const auto& f : m)
            if (!f.atom.is_coord() || f.exponent < 0) return false;
    return true;
}

Expr integrate_param(const Expr& e, const Coord& t)
{
    Expr out;
    for (const auto& [m, coef] : e.terms()) {
        int k = 0;
        Monomial rest;
        for (const auto& f : m) {
            if (f.atom.is_coord() && f.atom.coord() == t) {
                k = f.exponent;
            } else {
                if (!f.atom.is_coord() && contains(f.atom.arg(), t))
                    throw UnsupportedError("integration parameter occurs inside a function argument");
                rest.push_back(f);
            }
        }
        if (k < 0) throw UnsupportedError("integrand has a negative power of the integration parameter");
        Expr::TermMap term;
        term.emplace(std::move(rest), coef / (k + 1));
        out += Expr::from_terms(term);
    }
    return out;
}

std::string to_string(const Rational& q)
{
    std::string s = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1) s += "/" + boost::multiprecision::denominator(q).str();
    return s;
}

std::string default_name(const Coord& c)
{
    switch (c.kind) {
    case CoordKind::Base: return "x" + std::to_string(c.index);
    case CoordKind::Fibre: return "y" + std::to_string(c.index);
    case CoordKind::Jet1: return "y" + std::to_string(c.index) + "_x" + std::to_string(c.d1);
    case CoordKind::Jet2:
        return "y" + std::to_string(c.index) + "_x" + std::to_string(c.d1) + "x" + std::to_string(c.d2);
    case CoordKind::Param: return "t" + std::to_string(c.index);
    }
    return "?";
}

std::string to_string(const Monomial& m, const CoordNamer& namer)
{
    std::string s;
    for (const auto& f : m) {
        if (!s.empty()) s += "*";
        if (f.atom.is_coord())
            s += namer(f.atom.coord());
        else
            s += std::string(func_name(f.atom.func())) + "(" + to_string(f.atom.arg(), namer) + ")";
        if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
    }
    return s;
}

std::string to_string(const Expr& e, const CoordNamer& namer)
{
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first)
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        first = false;
        if (m.empty()) {
            s += to_string(mag);
        } else if (mag == 1) {
            s += to_string(m, namer);
        } else {
            s += to_string(mag) + "*" + to_string(m, namer);
        }
    }
    return s;
}

}  // namespace varcalc
