#pragma once

#include <vector>

namespace hsk {

// Tabulated solution of the radial heat equation on S^{n-1},
//   du/dt = u'' + (n-2) cot(theta) u',
// started from a discrete point source at theta = 0 and normalized so that
//   sum_i u(theta_i) A_{S^{n-2}} sin^{n-2}(theta_i) dtheta = 1.
// This is a finite-difference + eigendecomposition path with no Gegenbauer
// content; it serves as an independent oracle for the spectral series.
struct RadialHeatSolution {
  int n = 0;
  double t = 0.0;
  std::vector<double> theta;   // cell centers (i + 1/2) pi / N
  std::vector<double> values;  // u(theta_i; t)

  double total_mass() const;  // the conserved discrete integral above
};

// grid_points >= 500 (GridTooCoarse otherwise). The operator is discretized
// in flux form with the sin^{n-2} volume weight, symmetrized by W^{1/2}
// similarity, and exponentiated exactly through its top eigenpairs.
RadialHeatSolution pde_oracle(int n, double t, int grid_points);

// Richardson extrapolation of the oracle: solves at N and 3N (cell centers
// nest for odd refinement) and combines (9 u_{3N} - u_N) / 8 on the coarse
// centers, cancelling the leading O(h^2) discretization error.
RadialHeatSolution pde_oracle_refined(int n, double t, int grid_points);

}  // namespace hsk
