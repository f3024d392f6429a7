#pragma once

#include "varcalc/errors.hpp"
#include "varcalc/expr.hpp"
#include "varcalc/jet.hpp"

#include <string>
#include <string_view>

namespace varcalc {

/// Syntax or resolution failure inside one expression.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string code, const std::string& message)
        : Error(message), offset_(offset), code_(std::move(code))
    {
    }
    /// 0-based character offset into the parsed text.
    std::size_t offset() const { return offset_; }
    const std::string& code() const { return code_; }

private:
    std::size_t offset_;
    std::string code_;
};

/// Recursive-descent parser for
///
///   expr   := term (("+" | "-") term)*
///   term   := factor (("*" | "/") factor)*
///   factor := base ("^" "-"? unsigned-integer)?
///   base   := integer | identifier | function "(" expr ")" | "(" expr ")" | "-" factor
///
/// Identifiers are resolved against the chart's jet naming convention.
/// Division is only accepted by a nonzero rational constant.
Expr parse_expr(std::string_view text, const BundleChart& chart);

}  // namespace varcalc
