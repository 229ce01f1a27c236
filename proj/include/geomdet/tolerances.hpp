#pragma once

// Every numeric tolerance used by the library lives here.

namespace geomdet::tol {

// |sum of coords| allowed for a point of the zero-sum hyperplane, scaled by
// max(1, max |coord|).
inline constexpr double hyperplane = 1e-9;

// Prior components must sum to 1 within this.
inline constexpr double prior_sum = 1e-12;

// Each transition-matrix row must sum to 1 within this.
inline constexpr double row_sum = 1e-9;

// Two candidates are tied when their squared-distance offsets differ by at
// most tie_relative * max(1, max |coord of the observation point|).
inline constexpr double tie_relative = 1e-9;

// Orthonormality of the plane basis.
inline constexpr double basis = 1e-12;

// Project/unproject round trip and isometry.
inline constexpr double projection = 1e-9;

// Two polyline slopes belong to the same linear piece when they differ by at
// most this, relative to max(1, slope norm).
inline constexpr double slope = 1e-9;

// Neglected probability mass of the truncated quadrature domain.
inline constexpr double truncation_mass = 1e-10;

}  // namespace geomdet::tol
