#pragma once

#include <stdexcept>
#include <string>

namespace billiard {

// Invalid obstacle configuration (too few disks, overlap, eclipse failure,
// stale cache, bad config file).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Periodic-ray solver did not converge or produced an inadmissible ray.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A solved object violates a geometric postcondition.
class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Caller passed arguments outside an operation's domain.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed persisted file.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace billiard
