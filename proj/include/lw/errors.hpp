#pragma once

#include <stdexcept>
#include <string>

namespace lw {

/// Invalid or inconsistent input: malformed state descriptions, bad
/// parameters, ill-formed density matrices.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested momentum grid cannot resolve the state (too few nodes, or an
/// odd node count).
class NyquistError : public std::runtime_error {
public:
    explicit NyquistError(const std::string& what) : std::runtime_error(what) {}
};

/// File read/write failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal numerical failure: series that cannot converge within the term
/// cap, overflow, or an imaginary residue above tolerance where a real
/// result is required.
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lw
