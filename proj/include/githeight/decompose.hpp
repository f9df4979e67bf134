#pragma once

#include <optional>
#include <vector>

#include "githeight/configuration.hpp"
#include "githeight/kempf_ness.hpp"
#include "githeight/stability.hpp"

namespace githeight {

/// Nonnegative rational combination of full bases whose weighted multiset
/// sum reproduces a configuration exactly.
struct BasisDecomposition {
    struct Term {
        Rat coeff;              ///< positive
        std::vector<int> basis; ///< N+1 dictionary indices, linearly independent
    };
    std::vector<RatVec> dictionary;
    std::vector<Term> terms;
};

/// Some candidate subspace whose mass is exactly d k/(N+1); smallest
/// dimension first, then enumeration order. Empty for stable configs.
std::optional<SubspaceWitness> find_tight_subspace(const Configuration& config);

struct RestrictedConfig {
    Configuration config;          ///< inside W, in exact coordinates of W.basis
    std::vector<int> parent_index; ///< per point, index into the parent configuration
};

struct QuotientConfig {
    Configuration config;                 ///< image in Q^{N+1}/W, echelon-complement coordinates
    std::vector<std::vector<int>> preimages; ///< per point, parent indices mapping onto it
};

/// Sub-configuration inside a tight subspace, written in the exact basis
/// W.basis (ambient dimension k-1). Throws Error when W is not tight.
RestrictedConfig restrict_to(const Configuration& config, const SubspaceWitness& w);

/// Image of the outside points in Q^{N+1}/W using the fixed
/// echelon-complement coordinates (non-pivot coordinates of the residue).
/// Projectively equal images merge. Throws Error when W is not tight.
QuotientConfig quotient_by(const Configuration& config, const SubspaceWitness& w);

/// Largest t >= 0 such that subtracting t from each indicated multiplicity
/// keeps all multiplicities nonnegative and every subset-span inequality
/// satisfied (all constraints are affine in t, so t is an exact rational
/// minimum). Throws Error when the indicated vectors are dependent.
Rat max_basis_multiple(const Configuration& config, const std::vector<int>& basis_indices);

/// Decomposes a semistable configuration: tight subspaces split the problem
/// into restriction and quotient, otherwise a maximal multiple of a greedily
/// chosen basis is subtracted. Unstable input throws UnstableError carrying
/// the violating subspace.
BasisDecomposition decompose(const Configuration& config);

/// Reconstructs the weighted multiset sum of a decomposition (for checking).
Configuration reconstruct(const BasisDecomposition& dec, int ambient);

struct WitnessSplit {
    std::vector<int> witness; ///< N+1 point indices: independent, not pairwise orthogonal
    Configuration remainder;  ///< config minus 1/(N+1)^2 of each witness point
};

/// For a stable configuration and a minimizing scaling, selects N+1 points
/// that are linearly independent over Q but, after applying the scaling's
/// square root, not pairwise orthogonal (tolerance 1e-9), and returns the
/// semistable remainder. The remainder's semistability is re-checked
/// exactly; selection falls back to an exhaustive scan if the greedy choice
/// fails it. Throws Error when the config is not stable.
WitnessSplit stable_witness_split(const Configuration& config, const HermitianScaling& scaling);

} // namespace githeight
