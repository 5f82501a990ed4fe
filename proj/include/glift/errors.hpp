#pragma once

#include <stdexcept>
#include <string>

namespace glift {

// Input documents, catalog keys, malformed data.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Mathematical inconsistency in otherwise well-formed input: non-cocycle
// transition data, broken extension maps, values outside the expected
// subgroup.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric result missed its stated tolerance (integration defect,
// residual beyond threshold).
struct ToleranceError : std::runtime_error {
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

struct BranchCutError : MathError {
    explicit BranchCutError(const std::string& what) : MathError(what) {}
};

}  // namespace glift
