#pragma once

#include <stdexcept>
#include <string>

namespace mcport {

/// Malformed or insufficient input data (price files, manifests, windows).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs that disagree with each other (ticker order, dimensions).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace mcport
