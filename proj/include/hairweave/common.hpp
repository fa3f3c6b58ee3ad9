#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace hairweave {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Flattened latent tensors and strand vectors.
using Tensor = Eigen::VectorXd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data: bad files, broken invariants, out-of-range arguments.
class DataError : public Error {
public:
    using Error::Error;
};

// Non-finite values or numerical breakdown during a computation.
class NumericError : public Error {
public:
    using Error::Error;
};

// Bad command-line usage.
class UsageError : public Error {
public:
    using Error::Error;
};

inline constexpr double kDefaultRootTolerance = 1e-3;  // meters
inline constexpr int kDefaultStrandLength = 100;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace hairweave
