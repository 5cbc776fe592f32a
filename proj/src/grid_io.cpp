#include "swingnet/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace swingnet {

namespace {

std::string strip(std::string s) {
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) fields.push_back(strip(cur));
    return fields;
}

double parse_number(const std::string& s, int line) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw GridParseError(line, "expected a number, got '" + s + "'");
    }
}

long parse_integer(const std::string& s, int line) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw GridParseError(line, "expected an integer, got '" + s + "'");
    }
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << v;
    return os.str();
}

}  // namespace

GridTopology parse_grid(std::istream& in) {
    enum class Section { Header, Nodes, Edges };
    Section section = Section::Header;
    bool version_seen = false;
    std::optional<double> def_inertia, def_damping, def_coupling;
    std::vector<GridNode> nodes;
    std::vector<GridEdge> edges;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[nodes]") {
                section = Section::Nodes;
            } else if (line == "[edges]") {
                section = Section::Edges;
            } else {
                throw GridParseError(lineno, "unknown section " + line);
            }
            if (!version_seen) throw GridParseError(lineno, "missing 'grid v1' header line");
            continue;
        }

        if (section == Section::Header) {
            std::istringstream is(line);
            std::string word;
            is >> word;
            if (word == "grid") {
                std::string ver;
                is >> ver;
                if (ver != "v1") throw GridParseError(lineno, "unsupported grid version '" + ver + "'");
                version_seen = true;
            } else if (word == "default") {
                std::string key, value;
                is >> key >> value;
                double v = parse_number(value, lineno);
                if (key == "inertia") def_inertia = v;
                else if (key == "damping") def_damping = v;
                else if (key == "coupling") def_coupling = v;
                else throw GridParseError(lineno, "unknown default '" + key + "'");
            } else {
                throw GridParseError(lineno, "unexpected header line '" + line + "'");
            }
            continue;
        }

        auto fields = split_csv(line);
        if (section == Section::Nodes) {
            if (fields.size() < 2 || fields.size() > 4)
                throw GridParseError(lineno, "node rows take 2-4 fields: id, power[, inertia[, damping]]");
            GridNode n;
            n.id = static_cast<NodeId>(parse_integer(fields[0], lineno));
            n.power = parse_number(fields[1], lineno);
            if (fields.size() >= 3) n.inertia = parse_number(fields[2], lineno);
            else if (def_inertia) n.inertia = *def_inertia;
            else throw GridParseError(lineno, "node " + fields[0] + " has no inertia and no default");
            if (fields.size() >= 4) n.damping = parse_number(fields[3], lineno);
            else if (def_damping) n.damping = *def_damping;
            else throw GridParseError(lineno, "node " + fields[0] + " has no damping and no default");
            nodes.push_back(n);
        } else {
            if (fields.size() < 2 || fields.size() > 3)
                throw GridParseError(lineno, "edge rows take 2-3 fields: a, b[, coupling]");
            GridEdge e;
            e.a = static_cast<NodeId>(parse_integer(fields[0], lineno));
            e.b = static_cast<NodeId>(parse_integer(fields[1], lineno));
            if (fields.size() == 3) e.coupling = parse_number(fields[2], lineno);
            else if (def_coupling) e.coupling = *def_coupling;
            else throw GridParseError(lineno, "edge (" + fields[0] + ", " + fields[1] +
                                                  ") has no coupling and no default");
            edges.push_back(e);
        }
    }
    if (!version_seen) throw GridParseError(lineno == 0 ? 1 : lineno, "missing 'grid v1' header line");
    return GridTopology(std::move(nodes), std::move(edges));
}

GridTopology parse_grid(const std::string& text) {
    std::istringstream is(text);
    return parse_grid(is);
}

std::string emit_grid(const GridTopology& g) {
    std::ostringstream os;
    os << "grid v1\n";
    os << "[nodes]\n";
    for (const auto& n : g.nodes()) {
        os << n.id << ", " << format_number(n.power) << ", " << format_number(n.inertia) << ", "
           << format_number(n.damping) << "\n";
    }
    os << "[edges]\n";
    for (const auto& e : g.edges()) {
        os << e.a << ", " << e.b << ", " << format_number(e.coupling) << "\n";
    }
    return os.str();
}

GridTopology load_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GridError("cannot open grid file " + path.string());
    GridTopology g = parse_grid(in);
    auto violations = validate_grid(g);
    if (!violations.empty()) {
        std::ostringstream os;
        os << path.string() << ": invalid grid:";
        for (const auto& v : violations) os << "\n  [" << v.rule << "] " << v.detail;
        throw GridValidationError(os.str(), violations);
    }
    return g;
}

void save_grid(const GridTopology& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw GridError("cannot write grid file " + path.string());
    out << emit_grid(g);
}

}  // namespace swingnet
