#include "gies/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gies::io {

namespace {

VertexSet vertex_list(const json& j, std::string_view what) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
    std::vector<Vertex> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw Error(ErrorKind::ParseError, std::string(what) + " must hold integers");
        out.push_back(x.get<int>());
    }
    return out;
}

Edge edge_from_json(const json& j) {
    const VertexSet e = vertex_list(j, "edge");
    if (e.size() != 2) throw Error(ErrorKind::ParseError, "edge must have two endpoints");
    return {e[0], e[1]};
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

double parse_double(const std::string& cell, std::size_t line) {
    const std::string t = trim(cell);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + t + "'");
    }
    return x;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json graph_to_json(const Graph& g) {
    json arrows = json::array(), lines = json::array();
    for (auto [a, b] : g.arrows()) arrows.push_back({a, b});
    for (auto [a, b] : g.lines()) lines.push_back({a, b});
    return json{{"p", g.p()}, {"arrows", arrows}, {"lines", lines}};
}

Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j["p"].is_number_integer()) {
        throw Error(ErrorKind::ParseError, "graph needs an integer field 'p'");
    }
    const int p = j["p"].get<int>();
    if (p < 0) throw Error(ErrorKind::ParseError, "negative vertex count");
    Graph g(p);
    auto add = [&](const char* key, bool line) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) throw Error(ErrorKind::ParseError, std::string(key) + " must be an array");
        for (const auto& e : j[key]) {
            const auto [a, b] = edge_from_json(e);
            if (!g.valid_vertex(a) || !g.valid_vertex(b) || a == b) {
                throw Error(ErrorKind::ParseError, "edge endpoints out of range");
            }
            if (g.is_adjacent(a, b)) throw Error(ErrorKind::ParseError, "pair listed twice");
            line ? g.set_line(a, b) : g.set_arrow(a, b);
        }
    };
    add("arrows", false);
    add("lines", true);
    return g;
}

json family_to_json(const TargetFamily& family) {
    json out = json::array();
    for (const Target& t : family) out.push_back(t);
    return out;
}

TargetFamily family_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "target family must be an array of arrays");
    std::vector<Target> targets;
    for (const auto& t : j) targets.push_back(vertex_list(t, "target"));
    return TargetFamily(std::move(targets));
}

TargetFamily parse_targets(std::string_view text) {
    const std::string t = trim(text);
    if (t.rfind("[[", 0) == 0) {
        try {
            return family_from_json(json::parse(t));
        } catch (const json::exception&) {
            throw Error(ErrorKind::ParseError, "bad target family '" + t + "'");
        }
    }
    std::vector<Target> targets;
    for (const std::string& part : split(t, ';')) {
        try {
            targets.push_back(vertex_list(json::parse(trim(part)), "target"));
        } catch (const json::exception&) {
            throw Error(ErrorKind::ParseError, "bad target '" + trim(part) + "'");
        }
    }
    return TargetFamily(std::move(targets));
}

json model_to_json(const GaussianModel& model) {
    json B = json::array();
    for (Eigen::Index i = 0; i < model.B.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < model.B.cols(); ++k) row.push_back(model.B(i, k));
        B.push_back(row);
    }
    json s = json::array();
    for (Eigen::Index i = 0; i < model.sigma2.size(); ++i) s.push_back(model.sigma2(i));
    return json{{"B", B}, {"sigma2", s}};
}

json report_to_json(const EvaluationReport& r) {
    return json{{"shd", r.vs_dag.shd},
                {"fp", r.vs_dag.skeleton_fp},
                {"fn", r.vs_dag.skeleton_fn},
                {"wo", r.vs_dag.wrongly_oriented},
                {"shd_vs_essential", r.shd_vs_essential},
                {"non_essential_true", r.non_essential_true}};
}

json trace_step_to_json(const TraceStep& step) {
    return json{{"phase", to_string(step.phase)}, {"kind", to_string(step.move.kind)},
                {"u", step.move.u},                {"v", step.move.v},
                {"C", step.move.C},                {"delta", step.move.delta},
                {"score", step.score}};
}

void write_trace(std::ostream& out, const SearchTrace& trace) {
    for (const TraceStep& step : trace.steps) out << trace_step_to_json(step).dump() << '\n';
}

void write_dataset_csv(std::ostream& out, const InterventionalDataset& data) {
    for (int v = 1; v <= data.p(); ++v) out << 'x' << v << ',';
    out << "target\n";
    for (int i = 0; i < data.n(); ++i) {
        for (int v = 0; v < data.p(); ++v) out << format_double(data.X(i, v)) << ',';
        const Target& t = data.targets[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < t.size(); ++k) out << (k ? ";" : "") << t[k];
        out << '\n';
    }
}

InterventionalDataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty dataset file");
    const auto header = split(trim(line), ',');
    if (header.size() < 2 || unquote(header.back()) != "target") {
        throw Error(ErrorKind::ParseError, "last header column must be 'target'");
    }
    const int p = static_cast<int>(header.size()) - 1;
    for (int v = 1; v <= p; ++v) {
        if (unquote(header[static_cast<std::size_t>(v - 1)]) != "x" + std::to_string(v)) {
            throw Error(ErrorKind::ParseError, "header column " + std::to_string(v) + " must be x" + std::to_string(v));
        }
    }
    std::vector<std::vector<double>> rows;
    InterventionalDataset data;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": expected " +
                                                   std::to_string(header.size()) + " cells");
        }
        std::vector<double> row;
        for (int v = 0; v < p; ++v) row.push_back(parse_double(cells[static_cast<std::size_t>(v)], number));
        rows.push_back(std::move(row));
        Target t;
        const std::string cell = unquote(cells.back());
        if (!cell.empty()) {
            for (const std::string& id : split(cell, ';')) {
                char* end = nullptr;
                const std::string s = trim(id);
                const long x = std::strtol(s.c_str(), &end, 10);
                if (s.empty() || end != s.c_str() + s.size() || x < 1 || x > p) {
                    throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": bad target '" + cell + "'");
                }
                t.push_back(static_cast<Vertex>(x));
            }
        }
        data.targets.push_back(make_set(std::move(t)));
    }
    data.X.resize(static_cast<Eigen::Index>(rows.size()), p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int v = 0; v < p; ++v) data.X(static_cast<Eigen::Index>(i), v) = rows[i][static_cast<std::size_t>(v)];
    }
    return data;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << j.dump() << '\n';
}

InterventionalDataset read_dataset_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return read_dataset_csv(in);
}

void write_dataset_file(const std::filesystem::path& path, const InterventionalDataset& data) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    write_dataset_csv(out, data);
}

}  // namespace gies::io
