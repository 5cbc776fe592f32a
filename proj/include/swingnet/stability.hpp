#pragma once

#include <string>

#include "swingnet/equilibrium.hpp"

namespace swingnet {

enum class StabilityVerdict { AsymptoticallyStable, MarginallyStable, Unstable };

[[nodiscard]] std::string to_string(StabilityVerdict v);

/// Spectrum of the Hesse matrix at an equilibrium plus the stability verdict.
/// One eigenvalue is the structural zero that comes from the uniform phase
/// shift symmetry; the verdict is decided by the smallest remaining real part.
struct StabilityReport {
    Vector eigen_real_parts;   // ascending
    int structural_zero_index = 0;  // index into eigen_real_parts
    double lambda2 = 0.0;           // smallest real part excluding the structural zero
    StabilityVerdict verdict = StabilityVerdict::MarginallyStable;
};

inline constexpr double kStabilityZeroTol = 1e-8;

/// Hesse matrix of the potential at the equilibrium: H = -jacobian.
[[nodiscard]] Matrix hessian(const GridTopology& g, const Equilibrium& eq);

/// Classify per the spectrum of H. The structural zero is the eigenvalue whose
/// eigenvector is most nearly parallel to the all-ones direction, which stays
/// robust when lambda2 itself is close to zero. Throws on eigensolver failure.
[[nodiscard]] StabilityReport classify_stability(const Matrix& H,
                                                 double zero_tol = kStabilityZeroTol);

}  // namespace swingnet
