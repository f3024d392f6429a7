#include "varcalc/model.hpp"

#include "varcalc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace varcalc {

std::string Diagnostic::format(std::string_view file) const
{
    return std::string(file) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + code + ": " +
           message;
}

const Lagrangian* ModelFile::find_lagrangian(const std::string& name) const
{
    if (auto it = lagrangians.find(name); it != lagrangians.end()) return &it->second;
    if (auto it = trivials.find(name); it != trivials.end()) return &it->second;
    return nullptr;
}

const ProjectableVectorField* ModelFile::find_field(const std::string& name) const
{
    auto it = fields.find(name);
    return it == fields.end() ? nullptr : &it->second;
}

namespace {

[[noreturn]] void fail(int line, int column, std::string code, std::string message)
{
    throw ModelError(Diagnostic{line, column, std::move(code), std::move(message)});
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Entry {
    std::string key;
    std::string value;
    int line;
    int key_column;
    int value_column;
};

struct Section {
    std::string kind;
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
};

std::vector<std::string> split_names(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || is_space(c)) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

class Reader {
public:
    ModelFile read(std::string_view text)
    {
        std::vector<Section> sections = split(text);
        for (const auto& s : sections) {
            if (s.kind == "bundle") {
                if (chart_) fail(s.line, 1, "duplicate-section", "more than one [bundle] section");
                chart_ = read_bundle(s);
            }
        }
        if (!chart_) fail(1, 1, "missing-bundle", "no [bundle] section");

        ModelFile model{*chart_, {}, {}, {}, {}};
        std::set<std::string> lagrangian_names;
        for (const auto& s : sections) {
            if (s.kind == "bundle") continue;
            if (s.kind == "lagrangian" || s.kind == "trivial") {
                if (!lagrangian_names.insert(s.name).second)
                    fail(s.line, 1, "duplicate-name", "Lagrangian '" + s.name + "' declared twice");
                Lagrangian l = read_lagrangian(s);
                if (s.kind == "trivial") {
                    if (!is_variationally_trivial(l))
                        fail(s.line, 1, "not-trivial", "'" + s.name + "' has a nonzero Euler-Lagrange operator");
                    model.trivials.emplace(s.name, std::move(l));
                } else {
                    model.lagrangians.emplace(s.name, std::move(l));
                }
            } else if (s.kind == "field") {
                if (model.fields.count(s.name)) fail(s.line, 1, "duplicate-name", "field '" + s.name + "' declared twice");
                model.fields.emplace(s.name, read_field(s));
            } else if (s.kind == "case") {
                auto same = [&](const CaseSpec& c) { return c.name == s.name; };
                if (std::any_of(model.cases.begin(), model.cases.end(), same))
                    fail(s.line, 1, "duplicate-name", "case '" + s.name + "' declared twice");
                model.cases.push_back(read_case(s));
            }
        }
        if (model.lagrangians.empty() && model.trivials.empty())
            fail(1, 1, "no-lagrangian", "a model needs at least one Lagrangian");
        return model;
    }

private:
    static std::vector<Section> split(std::string_view text)
    {
        std::vector<Section> sections;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(pos, end - pos));
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::size_t first = 0;
            while (first < line.size() && is_space(line[first])) ++first;
            std::size_t last = line.size();
            while (last > first && is_space(line[last - 1])) --last;
            if (first == last) continue;
            const std::string body = line.substr(first, last - first);
            const int col = static_cast<int>(first) + 1;

            if (body.front() == '[') {
                if (body.back() != ']') fail(line_no, col, "malformed-section", "section header must end with ']'");
                const auto words = split_names(body.substr(1, body.size() - 2));
                if (words.empty()) fail(line_no, col, "malformed-section", "empty section header");
                const std::string& kind = words[0];
                static const std::set<std::string> named{"lagrangian", "field", "trivial", "case"};
                if (kind == "bundle") {
                    if (words.size() != 1) fail(line_no, col, "malformed-section", "[bundle] takes no name");
                } else if (named.count(kind)) {
                    if (words.size() != 2)
                        fail(line_no, col, "malformed-section", "[" + kind + "] needs exactly one name");
                } else {
                    fail(line_no, col, "malformed-section", "unknown section kind '" + kind + "'");
                }
                sections.push_back(Section{kind, words.size() > 1 ? words[1] : "", line_no, {}});
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos) fail(line_no, col, "syntax", "expected 'key = value'");
            if (sections.empty()) fail(line_no, col, "syntax", "entry outside of any section");
            std::string key = body.substr(0, eq);
            while (!key.empty() && is_space(key.back())) key.pop_back();
            std::size_t v = eq + 1;
            while (v < body.size() && is_space(body[v])) ++v;
            if (key.empty()) fail(line_no, col, "syntax", "missing key");
            auto& entries = sections.back().entries;
            if (std::any_of(entries.begin(), entries.end(), [&](const Entry& e) { return e.key == key; }))
                fail(line_no, col, "duplicate-name", "key '" + key + "' given twice");
            entries.push_back(Entry{key, body.substr(v), line_no, col, col + static_cast<int>(v)});
        }
        return sections;
    }

    static BundleChart read_bundle(const Section& s)
    {
        std::optional<std::vector<std::string>> base, fibre;
        for (const auto& e : s.entries) {
            if (e.key == "base")
                base = split_names(e.value);
            else if (e.key == "fiber" || e.key == "fibre")
                fibre = split_names(e.value);
            else
                fail(e.line, e.key_column, "unknown-key", "unknown [bundle] key '" + e.key + "'");
        }
        if (!base) fail(s.line, 1, "missing-key", "[bundle] needs 'base'");
        if (!fibre) fail(s.line, 1, "missing-key", "[bundle] needs 'fiber'");
        try {
            return BundleChart(*base, *fibre);
        } catch (const PreconditionError& err) {
            fail(s.line, 1, "invalid-chart", err.what());
        }
    }

    Expr expression(const Entry& e) const
    {
        try {
            return parse_expr(e.value, *chart_);
        } catch (const ParseError& err) {
            fail(e.line, e.value_column + static_cast<int>(err.offset()), err.code(), err.what());
        }
    }

    Lagrangian read_lagrangian(const Section& s) const
    {
        const Entry* density = nullptr;
        for (const auto& e : s.entries) {
            if (e.key != "density") fail(e.line, e.key_column, "unknown-key", "unknown key '" + e.key + "'");
            density = &e;
        }
        if (!density) fail(s.line, 1, "missing-key", "[" + s.kind + " " + s.name + "] needs 'density'");
        Expr d = expression(*density);
        if (jet_order(d) > 1)
            fail(density->line, density->value_column, "jet-order", "Lagrangian density exceeds jet order 1");
        return Lagrangian(*chart_, std::move(d));
    }

    ProjectableVectorField read_field(const Section& s) const
    {
        const auto& chart = *chart_;
        std::vector<Expr> base(chart.base_dim());
        std::vector<Expr> fibre(chart.fibre_dim());
        for (const auto& e : s.entries) {
            auto r = chart.resolve(e.key);
            if (!r.coord || (r.coord->kind != CoordKind::Base && r.coord->kind != CoordKind::Fibre))
                fail(e.line, e.key_column, "unknown-coordinate", "'" + e.key + "' is not a coordinate of Y");
            Expr value = expression(e);
            if (r.coord->kind == CoordKind::Base) {
                if (!all_coords(value, [](const Coord& c) { return c.kind == CoordKind::Base; }))
                    fail(e.line, e.value_column, "dependency-violation",
                         "base component '" + e.key + "' may only depend on base coordinates");
                base[r.coord->index] = std::move(value);
            } else {
                if (jet_order(value) > 0)
                    fail(e.line, e.value_column, "dependency-violation",
                         "fibre component '" + e.key + "' may not depend on jet coordinates");
                fibre[r.coord->index] = std::move(value);
            }
        }
        return ProjectableVectorField(chart, std::move(base), std::move(fibre));
    }

    static CaseSpec read_case(const Section& s)
    {
        CaseSpec c{s.name, {}, {}, std::nullopt, s.line};
        for (const auto& e : s.entries) {
            if (e.key == "command") {
                c.command = e.value;
            } else if (e.key == "exit") {
                if (e.value.empty() || e.value.size() > 3 ||
                    !std::all_of(e.value.begin(), e.value.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; }))
                    fail(e.line, e.value_column, "syntax", "exit code must be an integer");
                c.exit_code = std::stoi(e.value);
            } else if (e.key.rfind("expect.", 0) == 0 && e.key.size() > 7) {
                c.expectations.emplace_back(e.key.substr(7), e.value);
            } else {
                fail(e.line, e.key_column, "unknown-key", "unknown [case] key '" + e.key + "'");
            }
        }
        if (c.command.empty()) fail(s.line, 1, "missing-key", "[case " + s.name + "] needs 'command'");
        return c;
    }

    std::optional<BundleChart> chart_;
};

}  // namespace

ModelFile parse_model(std::string_view text) { return Reader().read(text); }

}  // namespace varcalc
