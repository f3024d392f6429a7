#pragma once

// Exact multivariate (Laurent) polynomials over the rationals in an open set
// of atoms. Every Expr is kept in canonical form, so structural equality is
// mathematical equality on the polynomial fragment.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace varcalc {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

enum class CoordKind : std::uint8_t { Base, Fibre, Jet1, Jet2, Param };

/// A coordinate symbol. The defaulted ordering (kind first, then indices)
/// is the atom order used for canonical forms and printing.
struct Coord {
    CoordKind kind = CoordKind::Base;
    int index = 0;  // base index for Base, fibre index for Fibre/Jet*, slot for Param
    int d1 = -1;    // derivative directions of jet coordinates, d1 <= d2
    int d2 = -1;

    static Coord base(int lambda) { return {CoordKind::Base, lambda, -1, -1}; }
    static Coord fibre(int i) { return {CoordKind::Fibre, i, -1, -1}; }
    static Coord jet1(int i, int lambda) { return {CoordKind::Jet1, i, lambda, -1}; }
    static Coord jet2(int i, int lambda, int mu)
    {
        return lambda <= mu ? Coord{CoordKind::Jet2, i, lambda, mu} : Coord{CoordKind::Jet2, i, mu, lambda};
    }
    static Coord param(int slot) { return {CoordKind::Param, slot, -1, -1}; }

    friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Elementary functions, declared in name order (which is their atom order).
enum class Func : std::uint8_t { Cos, Exp, Ln, Sin };

const char* func_name(Func f);

class Expr;

/// Either a coordinate or an elementary function applied to a canonical Expr.
class Atom {
public:
    Atom(Coord c) : v_(c) {}  // NOLINT(google-explicit-constructor)
    Atom(Func f, Expr arg);

    bool is_coord() const { return std::holds_alternative<Coord>(v_); }
    const Coord& coord() const { return std::get<Coord>(v_); }
    Func func() const { return std::get<FuncApp>(v_).func; }
    const Expr& arg() const { return *std::get<FuncApp>(v_).arg; }

    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
    friend bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

private:
    struct FuncApp {
        Func func;
        std::shared_ptr<const Expr> arg;
    };
    std::variant<Coord, FuncApp> v_;
};

struct Factor {
    Atom atom;
    int exponent;  // nonzero
};

/// Factors sorted by atom, atoms distinct, exponents nonzero.
using Monomial = std::vector<Factor>;

/// Graded order: higher total degree first, then lexicographic on factors.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

std::strong_ordering compare(const Monomial& a, const Monomial& b);
Monomial multiply(const Monomial& a, const Monomial& b);

using CoordNamer = std::function<std::string(const Coord&)>;

class Expr {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    Expr() = default;
    Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
    Expr(long long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Expr(int c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static Expr atom(const Atom& a, int exponent = 1);
    static Expr coord(const Coord& c) { return atom(Atom(c)); }
    /// Applies f, folding the rewrite table (sin(0), cos(0), exp(0)).
    static Expr function(Func f, const Expr& arg);
    /// Rebuilds the canonical form term by term.
    static Expr from_terms(const TermMap& terms);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::optional<Rational> constant_value() const;
    std::size_t size() const { return terms_.size(); }

    Expr& operator+=(const Expr& b);
    Expr& operator-=(const Expr& b);
    Expr& operator*=(const Expr& b);

    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    /// Division by a nonzero rational; anything else is not representable.
    friend Expr operator/(const Expr& a, const Rational& b);

    friend bool operator==(const Expr& a, const Expr& b);
    friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

private:
    void accumulate(Monomial m, const Rational& c);

    TermMap terms_;
};

Expr pow_int(const Expr& a, int k);

/// Formal partial derivative with respect to a coordinate atom.
Expr diff(const Expr& e, const Coord& c);

/// Replaces every occurrence of `a` (also inside function arguments) by `r`.
Expr substitute(const Expr& e, const Atom& a, const Expr& r);

/// Definite integral over t in [0, 1]; e must be polynomial in t.
Expr integrate_param(const Expr& e, const Coord& t);

/// True when the coordinate occurs anywhere, including function arguments.
bool contains(const Expr& e, const Coord& c);

/// True when `pred` holds for every coordinate occurring in e.
bool all_coords(const Expr& e, const std::function<bool(const Coord&)>& pred);

/// No function atoms and no negative exponents.
bool is_polynomial(const Expr& e);

std::string to_string(const Rational& q);
std::string to_string(const Expr& e, const CoordNamer& namer);
std::string to_string(const Monomial& m, const CoordNamer& namer);

/// Fallback names: x0.., y0.., y0_x0.., t0...
std::string default_name(const Coord& c);

}  // namespace varcalc
