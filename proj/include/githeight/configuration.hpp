#pragma once

#include <utility>
#include <vector>

#include "githeight/rational.hpp"

namespace githeight {

/// One projective direction with a positive rational multiplicity.
/// The stored vector is the canonical primitive-integer representative.
struct ProjPoint {
    RatVec vec;
    Rat mult;
};

/// A zero-cycle model: a merged, canonically sorted multiset of projective
/// points in P^ambient with positive rational multiplicities.
class Configuration {
public:
    /// Canonicalizes, merges projectively equal directions (multiplicities
    /// add) and sorts. Throws Error on zero vectors, nonpositive
    /// multiplicities or ragged lengths. `index_map`, when given, receives
    /// for each input the index of the merged point it landed on.
    static Configuration make(int ambient, const std::vector<std::pair<RatVec, Rat>>& raw,
                              std::vector<int>* index_map = nullptr);

    /// Points must already be canonical, distinct and sorted (internal use).
    static Configuration from_canonical(int ambient, std::vector<ProjPoint> pts);

    int ambient() const { return ambient_; }
    int dim_vectors() const { return ambient_ + 1; }
    const std::vector<ProjPoint>& points() const { return points_; }
    const ProjPoint& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
    int distinct_count() const { return static_cast<int>(points_.size()); }
    const Rat& degree() const { return degree_; }

    /// True when every multiplicity is 1, there are exactly ambient+1
    /// points and they are linearly independent (the invertible-matrix
    /// model whose height theory is exact).
    bool is_unit_basis_model() const;

    /// Stable content hash of the canonical serialization.
    std::string digest() const;

    bool operator==(const Configuration& o) const;

private:
    int ambient_ = 0;
    std::vector<ProjPoint> points_;
    Rat degree_ = 0;
};

/// Formal sum: multiplicities of shared directions add.
Configuration add_configurations(const Configuration& a, const Configuration& b);

} // namespace githeight
