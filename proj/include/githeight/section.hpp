#pragma once

#include <vector>

#include "githeight/configuration.hpp"

namespace githeight {

struct BasisDecomposition;

/// SL-invariant section used to normalize local heights: a product of
/// squared brackets (determinants of N+1 configuration points),
///     s = prod_T det(points of T)^(2 e_T).
/// Induced by a basis decomposition with e_T = mu * a_T, mu the lcm of the
/// coefficient denominators; its degree in Chow coordinates is m_z = 2 mu.
/// For the invertible square model this is the squared determinant
/// (m_z = 2). Local heights divide -log|s| by d * m_z.
struct InvariantSection {
    struct Bracket {
        std::vector<int> points; ///< N+1 indices into the configuration
        long exponent = 1;       ///< e_T; the square is implied
    };
    std::vector<Bracket> brackets;
    long m_z = 0;

    static InvariantSection determinant(const Configuration& config);
    static InvariantSection from_decomposition(const Configuration& config,
                                               const BasisDecomposition& dec);

    /// log|s| evaluated on unit-normalized representatives (double).
    double log_abs_at_unit_model(const Configuration& config) const;

    /// p-adic valuation of s on the given model vectors (one per
    /// configuration point, p-integral with unit content).
    long valuation_at(const std::vector<RatVec>& model_vectors, const Int& p) const;

    /// Exact value of s on the given model vectors.
    Rat value_at(const std::vector<RatVec>& model_vectors) const;
};

} // namespace githeight
