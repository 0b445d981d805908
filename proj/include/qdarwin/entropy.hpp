#pragma once

#include <span>

namespace qdarwin {

// All entropies are in nats. 0·ln 0 is taken as 0 throughout.

/// Tolerance within which a probability outside [0,1] is clamped rather than rejected.
inline constexpr double kProbabilityTolerance = 1e-12;

/// x·ln x with the 0·ln 0 = 0 convention.
double xlogx(double x);

/// h(x) = −x ln x − (1−x) ln(1−x). Throws std::domain_error if x is outside
/// [0,1] by more than kProbabilityTolerance.
double binary_entropy(double x);

/// −Σ p ln p. Entries must be nonnegative (within 1e−12) and sum to 1 within 1e−9.
double shannon_entropy(std::span<const double> dist);

/// Entropy of a density-matrix spectrum. Eigenvalues may be as low as −1e−9 and
/// must sum to 1 within 1e−6; they are clipped at zero and renormalized.
double von_neumann_entropy(std::span<const double> spectrum);

}  // namespace qdarwin
