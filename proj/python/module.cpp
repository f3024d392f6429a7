#include "varcalc/cli.hpp"
#include "varcalc/parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace varcalc;

namespace {

ModelFile load_text(const std::string& text, const std::string& origin)
{
    try {
        return parse_model(text);
    } catch (const ModelError& e) {
        throw py::value_error(e.diagnostic().format(origin));
    }
}

BundleChart chart_of(const std::vector<std::string>& base, const std::vector<std::string>& fibre)
{
    try {
        return BundleChart(base, fibre);
    } catch (const PreconditionError& e) {
        throw py::value_error(e.what());
    }
}

Expr parse_or_raise(const std::string& text, const BundleChart& chart)
{
    try {
        return parse_expr(text, chart);
    } catch (const ParseError& e) {
        throw py::value_error(std::to_string(e.offset() + 1) + ": " + e.code() + ": " + e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact variational calculus on jet bundles";

    py::class_<ModelFile>(m, "Model")
        .def_static(
            "from_text", [](const std::string& text) { return load_text(text, "<string>"); }, py::arg("text"))
        .def_static(
            "from_file",
            [](const std::string& path) {
                std::ifstream in(path, std::ios::binary);
                if (!in) throw py::value_error(path + ":0:0: io: cannot read file");
                std::ostringstream s;
                s << in.rdbuf();
                return load_text(s.str(), path);
            },
            py::arg("path"))
        .def_property_readonly("base", [](const ModelFile& mf) { return mf.chart.base_names(); })
        .def_property_readonly("fibre", [](const ModelFile& mf) { return mf.chart.fibre_names(); })
        .def_property_readonly("lagrangians",
                               [](const ModelFile& mf) {
                                   std::vector<std::string> names;
                                   for (const auto& [k, v] : mf.lagrangians) names.push_back(k);
                                   for (const auto& [k, v] : mf.trivials) names.push_back(k);
                                   return names;
                               })
        .def_property_readonly("fields",
                               [](const ModelFile& mf) {
                                   std::vector<std::string> names;
                                   for (const auto& [k, v] : mf.fields) names.push_back(k);
                                   return names;
                               })
        .def(
            "run_json",
            [](const ModelFile& mf, const std::string& command, const std::vector<std::string>& args, int order) {
                if (order != 1 && order != 2) throw py::value_error("order must be 1 or 2");
                cli::CommandResult r;
                {
                    py::gil_scoped_release release;
                    r = cli::run_command(command, mf, args, cli::Options{order, true});
                }
                return py::make_tuple(r.exit_code, r.report.is_null() ? std::string("null") : r.report.dump(),
                                      r.diagnostic);
            },
            py::arg("command"), py::arg("args"), py::arg("order") = 1);

    m.def(
        "canonical",
        [](const std::string& text, const std::vector<std::string>& base, const std::vector<std::string>& fibre) {
            const auto chart = chart_of(base, fibre);
            return to_string(parse_or_raise(text, chart), chart.namer());
        },
        py::arg("text"), py::arg("base"), py::arg("fibre"));

    m.def(
        "euler_lagrange",
        [](const std::string& density, const std::vector<std::string>& base, const std::vector<std::string>& fibre) {
            const auto chart = chart_of(base, fibre);
            std::vector<std::string> out;
            try {
                for (const auto& e : varcalc::euler_lagrange(Lagrangian(chart, parse_or_raise(density, chart))).components)
                    out.push_back(to_string(e, chart.namer()));
            } catch (const PreconditionError& e) {
                throw py::value_error(e.what());
            }
            return out;
        },
        py::arg("density"), py::arg("base"), py::arg("fibre"));
}
