#pragma once

#include <Eigen/Dense>

namespace rootframe {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute per-coordinate tolerance for vector matching.
inline constexpr double kMatchTolerance = 1e-9;
/// Relative floor for the smallest frame-operator eigenvalue.
inline constexpr double kFrameTolerance = 1e-9;

/// The two user-tunable tolerances. Every other threshold is fixed.
struct Tolerances {
    double match = kMatchTolerance;
    double frame = kFrameTolerance;

    /// Both knobs set to the same value (the CLI `--tol` flag).
    static Tolerances uniform(double tol) { return {tol, tol}; }
};

} // namespace rootframe
