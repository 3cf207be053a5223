#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace btl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A stated hypothesis of an operation does not hold for the given input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An iterative procedure (Neumann series, eigensolver, R growth) did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

enum class Flavor { Classical, Tilde };
enum class Family { Besov, TriebelLizorkin };
enum class Mode { Homogeneous, Inhomogeneous };

const char* to_string(Flavor f);
const char* to_string(Family f);
const char* to_string(Mode m);

}  // namespace btl
