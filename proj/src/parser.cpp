#include "varcalc/parser.hpp"

#include <cctype>
#include <optional>

namespace varcalc {

namespace {

class Parser {
public:
    Parser(std::string_view text, const BundleChart& chart) : text_(text), chart_(chart) {}

    Expr parse()
    {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("syntax", "unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& code, const std::string& msg) const { throw ParseError(pos_, code, msg); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) fail("syntax", std::string("expected '") + c + "'");
    }

    Expr expr()
    {
        Expr e = term();
        for (;;) {
            if (accept('+'))
                e += term();
            else if (accept('-'))
                e -= term();
            else
                return e;
        }
    }

    Expr term()
    {
        Expr e = factor();
        for (;;) {
            if (accept('*')) {
                e *= factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                const Expr d = factor();
                auto q = d.constant_value();
                if (!q) throw ParseError(at, "non-rational-divisor", "division is only defined by rational constants");
                if (*q == 0) throw ParseError(at, "division-by-zero", "division by zero");
                e = e / *q;
            } else {
                return e;
            }
        }
    }

    Expr factor()
    {
        Expr b = base();
        if (!accept('^')) return b;
        const bool negative = accept('-');
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("syntax", "expected an integer exponent");
        if (pos_ - start > 6) fail("syntax", "exponent too large");
        const int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
        try {
            return pow_int(b, negative ? -k : k);
        } catch (const UnsupportedError& e) {
            throw ParseError(start, "unsupported", e.what());
        }
    }

    Expr base()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("syntax", "unexpected end of expression");
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Expr(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view id = text_.substr(start, pos_ - start);
            if (auto f = function(id)) {
                expect('(');
                Expr arg = expr();
                expect(')');
                return Expr::function(*f, arg);
            }
            auto r = chart_.resolve(id);
            if (!r.coord) {
                pos_ = start;
                fail("unknown-coordinate", r.error);
            }
            return Expr::coord(*r.coord);
        }
        fail("syntax", "unexpected '" + std::string(1, c) + "'");
    }

    static std::optional<Func> function(std::string_view id)
    {
        if (id == "sin") return Func::Sin;
        if (id == "cos") return Func::Cos;
        if (id == "exp") return Func::Exp;
        if (id == "ln") return Func::Ln;
        return std::nullopt;
    }

    std::string_view text_;
    const BundleChart& chart_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const BundleChart& chart) { return Parser(text, chart).parse(); }

}  // namespace varcalc
