#pragma once

#include <optional>
#include <string>
#include <vector>

#include "githeight/configuration.hpp"
#include "githeight/section.hpp"

namespace githeight {

/// Certified bracket of one local height term.
struct LocalHeightInterval {
    bool archimedean = false;
    Int prime = 0; ///< meaningful when !archimedean
    double lower = 0.0;
    double upper = 0.0;
    enum class Certificate {
        ExactResidual,   ///< residually semistable model found; value exact
        ExactDeterminant,///< invertible square model; value exactly 0
        SearchDepth,     ///< only an upper bound within the search budget
        Trivial,         ///< prime outside the bad set; exactly 0
        ArchExact,       ///< archimedean base case; exactly 0
        ArchKempfNess,   ///< archimedean minimizer with residual-based slack
        ArchTightSplit   ///< archimedean tight-subspace recursion
    };
    Certificate certificate = Certificate::Trivial;
    int search_depth = 0;
    std::string note;

    std::string place_name() const { return archimedean ? "inf" : prime.get_str(); }
};

std::string to_string(LocalHeightInterval::Certificate c);

/// Scales v by a power of p so entries are p-integral with some entry a
/// p-unit.
RatVec p_primitive(const RatVec& v, const Int& p);

/// Per-vector p-primitive rescaling of the stored representatives. Stored
/// canonical representatives are integer vectors of unit content, so this
/// is the identity on them; exposed for raw inputs.
Configuration primitive_model(const Configuration& config, const Int& p);

struct ResidualReduction {
    bool semistable = false;
    /// distinct reductions (monic canonical representatives in F_p) with
    /// merged multiplicities
    std::vector<std::pair<std::vector<Int>, Rat>> reduced_points;
};

/// Reduces the p-primitive model mod p, merges projectively equal
/// reductions, and applies the mass criterion over F_p subset-spans.
ResidualReduction residually_semistable(const Configuration& config, const Int& p);

/// Local height at p. Invertible square models are exactly 0
/// (ExactDeterminant). Otherwise a breadth-first search over neighboring
/// lattices (directed by violating residual subspaces, up to `depth` steps)
/// looks for a residually semistable model; at such a model the infimum is
/// attained and the value v_p(s) log p / (d m_z) is exact (ExactResidual).
/// Failing that, [0, best value seen] with SearchDepth.
LocalHeightInterval nonarch_local_height(const Configuration& config,
                                         const InvariantSection& section, const Int& p,
                                         int depth);

/// Superset of primes with possibly nonzero local term: prime factors of
/// the maximal minors of the distinct-point matrix, plus primes where two
/// distinct points collide mod p. Any rank drop mod p divides some nonzero
/// maximal minor, so all other primes are certified Trivial.
std::vector<Int> bad_primes(const Configuration& config);

} // namespace githeight
