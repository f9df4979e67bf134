#pragma once

#include <Eigen/Dense>

#include <vector>

#include "githeight/rational.hpp"

namespace githeight {

/// Dense matrix of exact rationals, row-major.
struct RatMat {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rat(0)) {}

    Rat& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static RatMat identity(int n);
    static RatMat from_columns(const std::vector<RatVec>& cols);
    RatVec column(int j) const;
};

/// Exact rank over Q via fraction-free (Bareiss) elimination.
int rank(const RatMat& m);

/// Exact determinant. Throws Error on non-square input.
Rat det(const RatMat& m);

/// True iff v lies in the exact rational span of `basis`.
bool span_membership(const RatVec& v, const std::vector<RatVec>& basis);

/// Solve M x = b exactly; empty result when inconsistent.
/// M must have full column rank for a unique solution.
std::vector<RatVec> solve_columns(const RatMat& m, const std::vector<RatVec>& rhs);

using ComplexMatrix = Eigen::MatrixXcd;

/// Unitary-column factor of a full-column-rank matrix (thin QR).
/// Throws Error when the input is rank deficient (relative 1e-12).
ComplexMatrix complex_qr_orthogonalize(const ComplexMatrix& m);

} // namespace githeight
