#pragma once

#include <complex>
#include <vector>

#include "digraphon/matrix.hpp"

namespace digraphon {

using Complex = std::complex<double>;

/// All n eigenvalues of a real square matrix, repeated by algebraic
/// multiplicity: balancing, Householder reduction to upper Hessenberg form,
/// then Francis double-shift QR with deflation. Complex eigenvalues come in
/// exactly conjugate pairs. Throws kNumerical (with the offending subdiagonal
/// as residual) if 50*n QR sweeps do not suffice.
std::vector<Complex> eigenvalues(const RealMatrix& m);

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
/// Only the upper triangle is read.
std::vector<double> symmetric_eigenvalues(const RealMatrix& m);

}  // namespace digraphon
