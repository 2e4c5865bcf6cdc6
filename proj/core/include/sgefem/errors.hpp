#pragma once

#include <stdexcept>
#include <string>

namespace sgefem {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid physical or numerical parameter (rejected before any work starts).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Bad run configuration: unknown quadrature id, unknown config key, missing tags.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Mesh generation or element geometry failure (degenerate element, infeasible
// fan layout, point-location miss).
class MeshError : public Error {
public:
    using Error::Error;
};

// Enrichment layout violation: crack tip is not a node of the element.
class EnrichmentError : public Error {
public:
    using Error::Error;
};

// Linear solver failure (singular factorization, unconstrained rigid modes).
class SolverError : public Error {
public:
    using Error::Error;
};

// Asymptotic field derivatives requested at the crack tip itself.
class TipSingularityError : public Error {
public:
    using Error::Error;
};

} // namespace sgefem
