#pragma once

// Line-oriented model files:
//
//   # comment
//   [bundle]
//   base = t
//   fiber = y
//   [lagrangian L]
//   density = 1/2*y_t^2
//   [field boost]
//   y = t
//   [trivial L0]
//   density = y_t
//   [case galilean]
//   command = verify boost L
//   expect.current.t = t*y_t - y

#include "varcalc/symmetry.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace varcalc {

struct Diagnostic {
    int line = 0;
    int column = 0;
    std::string code;
    std::string message;

    /// "file:line:column: code: message"
    std::string format(std::string_view file) const;
};

class ModelError : public Error {
public:
    explicit ModelError(Diagnostic d) : Error(d.message), diag_(std::move(d)) {}
    const Diagnostic& diagnostic() const { return diag_; }

private:
    Diagnostic diag_;
};

/// A regression case: a command line plus expected report fields.
struct CaseSpec {
    std::string name;
    std::string command;
    std::vector<std::pair<std::string, std::string>> expectations;  // dotted path -> value
    std::optional<int> exit_code;
    int line = 0;
};

struct ModelFile {
    BundleChart chart;
    std::map<std::string, Lagrangian> lagrangians;
    std::map<std::string, ProjectableVectorField> fields;
    std::map<std::string, Lagrangian> trivials;  // checked variationally trivial
    std::vector<CaseSpec> cases;

    /// Looks in lagrangians, then trivials.
    const Lagrangian* find_lagrangian(const std::string& name) const;
    const ProjectableVectorField* find_field(const std::string& name) const;
};

/// Throws ModelError with a distinct diagnostic code per failure kind:
/// syntax, malformed-section, duplicate-section, duplicate-name, missing-bundle,
/// missing-key, unknown-key, invalid-chart, unknown-coordinate,
/// non-rational-divisor, division-by-zero, unsupported, jet-order,
/// dependency-violation, not-trivial, no-lagrangian.
ModelFile parse_model(std::string_view text);

}  // namespace varcalc
