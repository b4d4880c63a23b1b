#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace arnold::tridiagonal {

/// Number of eigenvalues strictly below x of the symmetric tridiagonal matrix
/// (diag, off), from the signs of the LDL^T pivots.
int sturm_count(std::span<const double> diag, std::span<const double> off, double x);

/// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin(std::span<const double> diag, std::span<const double> off);

/// The k-th smallest eigenvalue (k = 0 based), bisected to machine precision.
double eigenvalue(std::span<const double> diag, std::span<const double> off, int k);

struct Eigenpairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm
};

/// Lowest `count` eigenpairs: Sturm bisection for the values, inverse
/// iteration (partial-pivoting LU) for the vectors, with Gram-Schmidt against
/// the vectors already found. Deterministic for a given seed.
Eigenpairs lowest_eigenpairs(std::span<const double> diag, std::span<const double> off, int count,
                             std::uint32_t seed = 5489u);

}  // namespace arnold::tridiagonal
