#pragma once

namespace wl::tol {

// Global numeric policy. Relative comparisons scale by max(1, |reference|).
inline constexpr double rel = 1e-9;
inline constexpr double abs_floor = 1e-12;

// Structural detection thresholds.
inline constexpr double euler_detect = 1e-7;     // ad-spectrum snap to {-1,0,1}
inline constexpr double root_cluster = 1e-7;     // eigenvalue clustering for root functionals
inline constexpr double root_gap = 1e-6;         // minimal admissible gap between clusters
inline constexpr double kernel_eig = 1e-7;       // eigenvalue match for analytic kernels
inline constexpr double principal_angle = 1e-7;  // subspace agreement

// Cone and domain margins.
inline constexpr double cone_margin = 1e-9;      // strict-interior slack
inline constexpr double boundary_band = 1e-6;    // indeterminate band around decision surfaces

inline double scale(double reference) { return reference < 1.0 ? 1.0 : reference; }

}  // namespace wl::tol
