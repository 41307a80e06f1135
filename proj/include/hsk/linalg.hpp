#pragma once

#include <vector>

namespace hsk {

// Largest `count` eigenvalues (ascending) of the symmetric tridiagonal matrix
// with the given diagonal and subdiagonal (LAPACK dstevr).
std::vector<double> tridiag_top_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& subdiag, int count);

// All eigenvalues (ascending) of a dense symmetric matrix given row-major
// (LAPACK dsyev, values only).
std::vector<double> sym_eigenvalues(const std::vector<double>& a, int n);

}  // namespace hsk
