#pragma once

#include <stdexcept>
#include <string>

namespace fsi {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionTooSmall : Error {
    using Error::Error;
};

struct NonpositiveLength : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

// 1+eta dropped below delta0 somewhere; carries the offending value and node.
struct AdmissibilityViolated : Error {
    AdmissibilityViolated(double min_value, int node_index)
        : Error("admissibility violated: min(1+eta) = " + std::to_string(min_value) +
                " at node " + std::to_string(node_index)),
          min_one_plus_eta(min_value),
          node(node_index) {}
    double min_one_plus_eta;
    int node;
};

struct NonpositiveDensity : Error {
    using Error::Error;
};

struct CoefficientOutOfBounds : Error {
    using Error::Error;
};

struct LinearSolveDiverged : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, int line_number)
        : Error(what + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
    int line;
};

struct ValidationError : Error {
    ValidationError(const std::string& field_name, const std::string& what)
        : Error("invalid value for '" + field_name + "': " + what), field(field_name) {}
    std::string field;
};

struct WindowUnderflow : Error {
    using Error::Error;
};

}  // namespace fsi
