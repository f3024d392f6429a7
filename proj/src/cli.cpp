#include "varcalc/cli.hpp"

#include "varcalc/noether.hpp"
#include "varcalc/parser.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

namespace varcalc::cli {

namespace {

class Rejected : public Error {
public:
    Rejected(int exit_code, std::string code, const std::string& message)
        : Error(message), exit_code_(exit_code), code_(std::move(code))
    {
    }
    int exit_code() const { return exit_code_; }
    const std::string& code() const { return code_; }

private:
    int exit_code_;
    std::string code_;
};

class Renderer {
public:
    explicit Renderer(const BundleChart& chart) : chart_(chart), namer_(chart.namer()) {}

    std::string operator()(const Expr& e) const { return to_string(e, namer_); }

    Report by_fibre(const std::vector<Expr>& v) const
    {
        Report j = Report::object();
        for (int i = 0; i < chart_.fibre_dim(); ++i) j[chart_.fibre_names()[i]] = (*this)(v[i]);
        return j;
    }

    Report by_base(const std::vector<Expr>& v) const
    {
        Report j = Report::object();
        for (int l = 0; l < chart_.base_dim(); ++l) j[chart_.base_names()[l]] = (*this)(v[l]);
        return j;
    }

    Report verify_report(const NoetherReport& r) const
    {
        Report j;
        j["classification"] = to_string(r.classification);
        if (r.law_form) j["law"] = to_string(*r.law_form);
        j["euler_lagrange"] = by_fibre(r.euler_lagrange.components);
        j["lie_density"] = (*this)(r.lie_density);
        if (r.certificate) {
            j["phi"] = to_string(r.certificate->phi, chart_);
            j["sigma"] = r.certificate->sigma ? Report(to_string(*r.certificate->sigma, chart_)) : Report(nullptr);
        }
        if (r.current) j["current"] = by_base(r.current->components);
        if (r.characteristics) j["characteristics"] = by_fibre(*r.characteristics);
        if (r.residual) {
            j["residual"] = (*this)(*r.residual);
            j["identity"] = "OK";
        }
        if (r.law_form == LawForm::WeakEqualityOnly) {
            j["weak_equality"]["h0_phi"] = (*this)(horizontalize(r.certificate->phi).components[0]);
            j["weak_equality"]["divergence"] = (*this)(horizontal_divergence(*r.current, chart_).components[0]);
        }
        return j;
    }

private:
    const BundleChart& chart_;
    CoordNamer namer_;
};

const Lagrangian& lagrangian(const ModelFile& model, const std::string& name)
{
    if (const auto* l = model.find_lagrangian(name)) return *l;
    throw Rejected(InputError, "unknown-name", "no Lagrangian named '" + name + "'");
}

const ProjectableVectorField& field(const ModelFile& model, const std::string& name)
{
    if (const auto* u = model.find_field(name)) return *u;
    throw Rejected(InputError, "unknown-name", "no field named '" + name + "'");
}

void arity(const std::string& command, const std::vector<std::string>& args, std::size_t n, const char* usage)
{
    if (args.size() != n)
        throw Rejected(InputError, "usage", command + " expects " + std::to_string(n) + " name(s): " + usage);
}

Report dispatch(const std::string& command, const ModelFile& model, const std::vector<std::string>& args,
                const Options& opts, int& exit_code)
{
    const Renderer str(model.chart);
    const auto& chart = model.chart;
    Report j;
    j["command"] = command;

    if (command == "el") {
        arity(command, args, 1, "<L>");
        const auto& l = lagrangian(model, args[0]);
        j["lagrangian"] = args[0];
        j["density"] = str(l.density());
        j["euler_lagrange"] = str.by_fibre(euler_lagrange(l).components);
    } else if (command == "prolong") {
        arity(command, args, 1, "<u>");
        const auto& u = field(model, args[0]);
        const auto p = opts.order == 2 ? prolong2(u) : prolong1(u);
        j["field"] = args[0];
        j["order"] = p.order();
        j["base"] = str.by_base(p.base_components());
        j["fibre"] = str.by_fibre(p.fibre_components());
        for (int i = 0; i < chart.fibre_dim(); ++i)
            for (int l = 0; l < chart.base_dim(); ++l) j["jet1"][chart.name(Coord::jet1(i, l))] = str(p.jet1(i, l));
        if (p.order() == 2)
            for (int i = 0; i < chart.fibre_dim(); ++i)
                for (int l = 0; l < chart.base_dim(); ++l)
                    for (int m = l; m < chart.base_dim(); ++m)
                        j["jet2"][chart.name(Coord::jet2(i, l, m))] = str(p.jet2(i, l, m));
    } else if (command == "lie") {
        arity(command, args, 2, "<u> <L>");
        const auto& u = field(model, args[0]);
        const auto& l = lagrangian(model, args[1]);
        j["field"] = args[0];
        j["lagrangian"] = args[1];
        j["density"] = str(lie_derivative_lagrangian(u, l).density());
    } else if (command == "decompose") {
        arity(command, args, 2, "<u> <L>");
        const auto fv = first_variation_decompose(field(model, args[0]), lagrangian(model, args[1]));
        j["field"] = args[0];
        j["lagrangian"] = args[1];
        j["lie"] = str(fv.lie);
        j["interior"] = str(fv.interior);
        j["flux"] = str.by_base(fv.flux);
        j["residual"] = str(fv.residual);
        j["identity"] = "OK";
    } else if (command == "trivial") {
        arity(command, args, 1, "<L0>");
        const auto& l = lagrangian(model, args[0]);
        const auto e = euler_lagrange(l);
        j["lagrangian"] = args[0];
        j["trivial"] = e.is_zero();
        j["euler_lagrange"] = str.by_fibre(e.components);
        if (e.is_zero()) {
            const auto cert = certify_trivial(l);
            j["phi"] = to_string(cert.phi, chart);
            j["sigma"] = cert.sigma ? Report(to_string(*cert.sigma, chart)) : Report(nullptr);
        } else {
            exit_code = VerificationFailed;
        }
    } else if (command == "current") {
        arity(command, args, 2, "<u> <L>");
        const auto& u = field(model, args[0]);
        const auto& l = lagrangian(model, args[1]);
        const auto cls = invariance_class(u, l);
        j["field"] = args[0];
        j["lagrangian"] = args[1];
        j["classification"] = to_string(cls);
        j["current"] = str.by_base(noether_current(u, l).components);
        if (cls == InvarianceClass::NotInvariant) exit_code = VerificationFailed;
    } else if (command == "verify") {
        arity(command, args, 2, "<u> <L>");
        const auto r = verify(field(model, args[0]), lagrangian(model, args[1]));
        j["field"] = args[0];
        j["lagrangian"] = args[1];
        j.update(str.verify_report(r));
        if (r.classification == InvarianceClass::NotInvariant) exit_code = VerificationFailed;
    } else if (command == "identity") {
        arity(command, args, 2, "<u> <L>");
        const auto& u = field(model, args[0]);
        const auto& l = lagrangian(model, args[1]);
        const auto direct = lie_derivative_el(u, euler_lagrange(l));
        const auto via_lagrangian = euler_lagrange(lie_derivative_lagrangian(u, l));
        std::vector<Expr> difference;
        for (int i = 0; i < chart.fibre_dim(); ++i)
            difference.push_back(direct.components[i] - via_lagrangian.components[i]);
        const bool ok = direct == via_lagrangian;
        j["field"] = args[0];
        j["lagrangian"] = args[1];
        j["lie_of_el"] = str.by_fibre(direct.components);
        j["el_of_lie"] = str.by_fibre(via_lagrangian.components);
        j["difference"] = str.by_fibre(difference);
        j["identity"] = ok ? "OK" : "FAILED";
        if (!ok) exit_code = VerificationFailed;
    } else if (command == "samelaw") {
        arity(command, args, 3, "<L> <L0> <u>");
        const auto& l = lagrangian(model, args[0]);
        const auto& l0 = lagrangian(model, args[1]);
        if (!is_variationally_trivial(l0))
            throw Rejected(InputError, "not-trivial", "'" + args[1] + "' is not variationally trivial");
        const auto r = same_law_check(l, l0, field(model, args[2]));
        j["lagrangian"] = args[0];
        j["trivial"] = args[1];
        j["field"] = args[2];
        j["el_equal"] = r.el_equal;
        j["characteristics_equal"] = r.characteristics_equal;
        j["original"] = str.verify_report(r.original);
        j["shifted"] = str.verify_report(r.shifted);
        if (!r.el_equal || !r.characteristics_equal) exit_code = VerificationFailed;
    } else {
        throw Rejected(InputError, "unknown-command", "unknown command '" + command + "'");
    }
    return j;
}

void render(const Report& j, int indent, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        out += pad + key + ":";
        if (value.is_object()) {
            out += "\n";
            render(value, indent + 2, out);
        } else if (value.is_string()) {
            out += " " + value.get<std::string>() + "\n";
        } else if (value.is_null()) {
            out += " none\n";
        } else {
            out += " " + value.dump() + "\n";
        }
    }
}

std::vector<std::string> tokenize(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CaseOutcome {
    std::string label;
    std::string failure;  // empty on success
};

bool same_value(const std::string& expected, const std::string& actual, const BundleChart& chart)
{
    if (expected == actual) return true;
    try {
        return parse_expr(expected, chart) == parse_expr(actual, chart);
    } catch (const Error&) {
        return false;
    }
}

CaseOutcome run_case(const std::string& label, const ModelFile& model, const CaseSpec& spec)
{
    CaseOutcome outcome{label, {}};
    auto words = tokenize(spec.command);
    Options opts;
    std::vector<std::string> args;
    for (std::size_t k = 1; k < words.size(); ++k) {
        if (words[k] == "--order" && k + 1 < words.size())
            opts.order = words[++k] == "2" ? 2 : 1;
        else if (words[k] == "--format" && k + 1 < words.size())
            ++k;
        else
            args.push_back(words[k]);
    }
    const auto result = run_command(words.empty() ? "" : words[0], model, args, opts);
    const int want_exit = spec.exit_code.value_or(Success);
    if (result.exit_code != want_exit) {
        outcome.failure = "exit code " + std::to_string(result.exit_code) + ", expected " + std::to_string(want_exit);
        if (!result.diagnostic.empty()) outcome.failure += " (" + result.diagnostic + ")";
        return outcome;
    }
    for (const auto& [path, expected] : spec.expectations) {
        const Report* node = &result.report;
        std::istringstream segs(path);
        for (std::string seg; std::getline(segs, seg, '.');) {
            if (!node->is_object() || !node->contains(seg)) {
                outcome.failure = "missing field '" + path + "'";
                return outcome;
            }
            node = &(*node)[seg];
        }
        const std::string actual = node->is_string() ? node->get<std::string>() : node->is_null() ? "none" : node->dump();
        if (!same_value(expected, actual, model.chart)) {
            outcome.failure = path + ": expected '" + expected + "', got '" + actual + "'";
            return outcome;
        }
    }
    return outcome;
}

}  // namespace

CommandResult run_command(const std::string& command, const ModelFile& model, const std::vector<std::string>& args,
                          const Options& opts)
{
    CommandResult result;
    try {
        result.report = dispatch(command, model, args, opts, result.exit_code);
    } catch (const Rejected& e) {
        result.exit_code = e.exit_code();
        result.diagnostic = e.code() + ": " + e.what();
    } catch (const ReconstructionError& e) {
        result.exit_code = VerificationFailed;
        result.diagnostic = std::string("reconstruction: ") + e.what();
    } catch (const InternalError& e) {
        result.exit_code = VerificationFailed;
        result.diagnostic = std::string("internal: ") + e.what();
    } catch (const UnsupportedError& e) {
        result.exit_code = InputError;
        result.diagnostic = std::string("unsupported: ") + e.what();
    } catch (const PreconditionError& e) {
        result.exit_code = InputError;
        result.diagnostic = std::string("precondition: ") + e.what();
    }
    return result;
}

std::string render_text(const Report& report)
{
    std::string out;
    render(report, 0, out);
    return out;
}

int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        err << dir << ":0:0: io: not a directory\n";
        return InputError;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".model") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    int failed = 0;
    std::vector<std::pair<std::string, ModelFile>> models;
    for (const auto& path : files) {
        const std::string file = path.filename().string();
        try {
            const auto text = read_file(path.string());
            if (!text) throw ModelError(Diagnostic{0, 0, "io", "cannot read file"});
            models.emplace_back(file, parse_model(*text));
        } catch (const ModelError& e) {
            out << "FAIL " << file << ": " << e.diagnostic().format(file) << "\n";
            ++failed;
        }
    }

    // Cases run concurrently; results are reported in declaration order.
    std::vector<std::future<CaseOutcome>> pending;
    for (const auto& [file, model] : models)
        for (const auto& spec : model.cases)
            pending.push_back(
                std::async(std::launch::async, run_case, file + "/" + spec.name, std::cref(model), std::cref(spec)));
    for (auto& f : pending) {
        const auto outcome = f.get();
        if (outcome.failure.empty()) {
            out << "PASS " << outcome.label << "\n";
        } else {
            out << "FAIL " << outcome.label << ": " << outcome.failure << "\n";
            ++failed;
        }
    }
    out << pending.size() << " cases, " << failed << " failed\n";
    if (pending.empty() && failed == 0) {
        err << dir << ":0:0: io: no [case] sections found\n";
        return InputError;
    }
    return failed == 0 ? Success : VerificationFailed;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Variational calculus on jet bundles: Euler-Lagrange operators, symmetries, conservation laws"};
    std::string command;
    std::vector<std::string> positional;
    Options opts;
    std::string format = "text";
    std::string corpus;
    app.add_option("command", command,
                   "el | prolong | lie | decompose | trivial | current | verify | identity | samelaw | corpus")
        ->required();
    app.add_option("args", positional, "model file followed by object names");
    app.add_option("--order", opts.order, "prolongation order")->check(CLI::IsMember({1, 2}));
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--corpus", corpus, "corpus directory");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "varcalc: usage: " << e.what() << "\n";
        return InputError;
    }
    opts.json = format == "json";

    if (command == "corpus") {
        if (corpus.empty() && !positional.empty()) corpus = positional.front();
        if (corpus.empty()) {
            err << "varcalc: usage: corpus needs --corpus <dir>\n";
            return InputError;
        }
        return run_corpus(corpus, out, err);
    }
    if (positional.empty()) {
        err << "varcalc: usage: " << command << " needs a model file\n";
        return InputError;
    }
    const std::string file = positional.front();
    const auto text = read_file(file);
    if (!text) {
        err << file << ":0:0: io: cannot read file\n";
        return InputError;
    }
    std::optional<ModelFile> model;
    try {
        model = parse_model(*text);
    } catch (const ModelError& e) {
        err << e.diagnostic().format(file) << "\n";
        return InputError;
    }
    const std::vector<std::string> names(positional.begin() + 1, positional.end());
    const auto result = run_command(command, *model, names, opts);
    if (!result.report.is_null()) out << (opts.json ? result.report.dump(2) + "\n" : render_text(result.report));
    if (!result.diagnostic.empty()) err << file << ":0:0: " << result.diagnostic << "\n";
    return result.exit_code;
}

}  // namespace varcalc::cli
