#pragma once

#include "varcalc/model.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace varcalc::cli {

using Report = nlohmann::ordered_json;

enum ExitCode : int { Success = 0, VerificationFailed = 1, InputError = 2 };

struct Options {
    int order = 1;
    bool json = false;
};

struct CommandResult {
    Report report;
    int exit_code = Success;
    std::string diagnostic;  // "code: message" when the command was rejected
};

/// Runs one of el, prolong, lie, decompose, trivial, current, verify,
/// identity, samelaw against a parsed model.
CommandResult run_command(const std::string& command, const ModelFile& model, const std::vector<std::string>& args,
                          const Options& opts);

/// Indented "key: value" rendering with the same fields as the JSON form.
std::string render_text(const Report& report);

/// Runs every [case] of every *.model file in dir (sorted by file name).
int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err);

/// Full command-line entry point; returns the process exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace varcalc::cli
