#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mvop {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Index outside the support or basis range.
class DomainError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

// n does not divide dim V, so V^n has no free M_n(C)-basis.
class FreeModuleError : public Error {
public:
    using Error::Error;
};

class UnsupportedLayoutError : public Error {
public:
    using Error::Error;
};

// Zero coupling where a Jacobi operator needs a strictly positive one.
class DegenerateOperatorError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class SingularAlternantError : public Error {
public:
    SingularAlternantError(const std::string& what, std::vector<int> offending)
        : Error(what), offending_j_(std::move(offending)) {}

    const std::vector<int>& offending_j() const noexcept { return offending_j_; }

private:
    std::vector<int> offending_j_;
};

}  // namespace mvop
