#ifndef ASTMESH_ERROR_HPP
#define ASTMESH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace astmesh {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid parameters (degrees, domain size, mismatched meshes, bad marks).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// An element was expected to be part of a mesh but is not.
class ElementNotFoundError : public Error {
public:
    explicit ElementNotFoundError(const std::string& msg) : Error(msg) {}
};

/// The domain is too small for the requested degrees (empty active region).
class DomainTooSmallError : public Error {
public:
    explicit DomainTooSmallError(const std::string& msg) : Error(msg) {}
};

/// Refinement would exceed the maximum supported level.
class LevelOverflowError : public Error {
public:
    explicit LevelOverflowError(const std::string& msg) : Error(msg) {}
};

/// Malformed or unsupported mesh document.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

/// A T-junction extension could not extract enough global indices.
class IndexExtractionError : public Error {
public:
    explicit IndexExtractionError(const std::string& msg) : Error(msg) {}
};

} // namespace astmesh

#endif
