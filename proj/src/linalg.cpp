#include "hsk/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <limits>
#include <string>

#include "hsk/errors.hpp"

namespace hsk {

std::vector<double> tridiag_top_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& subdiag, int count) {
  const int n = static_cast<int>(diag.size());
  require(n >= 2 && subdiag.size() + 1 == diag.size(), Errc::InvalidArgument,
          "tridiag_top_eigenvalues: inconsistent sizes");
  count = std::clamp(count, 1, n);
  std::vector<double> d = diag, e = subdiag;
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<lapack_int> iblock(static_cast<std::size_t>(n)), isplit(static_cast<std::size_t>(n));
  lapack_int found = 0, nsplit = 0;
  const lapack_int il = n - count + 1, iu = n;
  // Bisection with a tiny abstol: the default tolerance scales with the
  // matrix norm, which for strongly graded operators is many orders above
  // the eigenvalues of interest and would merge them into one interval.
  const double abstol = 2.0 * std::numeric_limits<double>::min();
  lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, il, iu, abstol, d.data(), e.data(),
                                   &found, &nsplit, values.data(), iblock.data(), isplit.data());
  require(info == 0 && found == count, Errc::InvalidArgument,
          "dstebz failed, info=" + std::to_string(info));
  return {values.begin(), values.begin() + count};
}

std::vector<double> sym_eigenvalues(const std::vector<double>& a, int n) {
  require(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) == a.size(),
          Errc::InvalidArgument, "sym_eigenvalues: size mismatch");
  std::vector<double> work = a;
  std::vector<double> w(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data(), n, w.data());
  require(info == 0, Errc::InvalidArgument, "dsyev failed, info=" + std::to_string(info));
  return w;
}

}  // namespace hsk
