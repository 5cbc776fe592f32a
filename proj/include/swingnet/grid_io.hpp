#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "swingnet/grid.hpp"

namespace swingnet {

/// Parse failure; carries the 1-based line number of the offending line.
class GridParseError : public std::runtime_error {
public:
    GridParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// Thrown by load_grid when the parsed grid fails validate_grid.
class GridValidationError : public std::runtime_error {
public:
    GridValidationError(std::string what, std::vector<Violation> violations)
        : std::runtime_error(std::move(what)), violations_(std::move(violations)) {}
    [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Grid file grammar (version 1), described in the README:
//
//   grid v1
//   default inertia 1        # optional, applies to nodes without an explicit value
//   default damping 0.6
//   default coupling 1.63    # applies to edges without an explicit value
//   [nodes]
//   id, power[, inertia[, damping]]
//   [edges]
//   a, b[, coupling]
//
// '#' starts a comment anywhere on a line. Unknown section names are rejected.

/// Parse a grid document. Does not validate beyond syntax.
[[nodiscard]] GridTopology parse_grid(std::istream& in);
[[nodiscard]] GridTopology parse_grid(const std::string& text);

/// Emit a fully explicit document (no defaults); parse(emit(g)) == g exactly.
[[nodiscard]] std::string emit_grid(const GridTopology& g);

/// Parse + validate a grid file. Throws GridParseError or GridValidationError.
[[nodiscard]] GridTopology load_grid(const std::filesystem::path& path);

void save_grid(const GridTopology& g, const std::filesystem::path& path);

}  // namespace swingnet
