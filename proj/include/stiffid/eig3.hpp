#pragma once

#include <array>

#include "stiffid/linalg.hpp"

namespace stiffid {

/// Real spectrum of a general (possibly non-symmetric) 3x3 matrix.
///
/// Eigenvalues are sorted by ascending magnitude. Each eigenvector is unit
/// length with its largest-magnitude component positive. A defective matrix
/// (fewer independent eigenvectors than the multiplicity) repeats the
/// available eigenvector.
struct Eigen3 {
    std::array<double, 3> values{};
    std::array<Vec3, 3> vectors{};

    /// Eigenvectors as the columns of a matrix.
    Mat3 vector_matrix() const { return from_columns(vectors[0], vectors[1], vectors[2]); }
};

/// Closed-form (Cardano) roots of the characteristic polynomial, polished by
/// Newton steps, with eigenvectors from row cross products refined by one
/// inverse-iteration step. Throws ComplexSpectrum when a conjugate pair has
/// imaginary part above 1e-6 * ||M||.
Eigen3 eig3_real(const Mat3& m);

}  // namespace stiffid
