#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "githeight/configuration.hpp"
#include "githeight/errors.hpp"
#include "githeight/field.hpp"

namespace githeight {

/// A proper subspace W of Q^{N+1} spanned by configuration vectors, with the
/// total multiplicity of the configuration inside it.
struct SubspaceWitness {
    std::vector<RatVec> basis; ///< reduced echelon basis of W
    int dim = 0;
    Rat mass;
    std::vector<int> span_points; ///< indices of config points spanning W

    std::string describe() const;
};

enum class Stability { Stable, StrictlySemistable, Unstable };

std::string to_string(Stability s);

struct StabilityVerdict {
    Stability status = Stability::Stable;
    std::optional<SubspaceWitness> witness; ///< violating (Unstable) or tight (StrictlySemistable)

    bool semistable() const { return status != Stability::Unstable; }
};

/// Semistable-precondition violation; carries the violating subspace.
struct UnstableError : Error {
    SubspaceWitness witness;
    explicit UnstableError(SubspaceWitness w)
        : Error("configuration is unstable: " + w.describe()), witness(std::move(w)) {}
};

/// Total multiplicity of configuration vectors lying in span(W.basis).
Rat mass_in_subspace(const Configuration& config, const SubspaceWitness& w);

/// All distinct spans of subsets of configuration vectors with dimension
/// 1..N, each with its exact mass. Subset-spans suffice for the mass
/// criterion: any subspace may be shrunk to the span of the configuration
/// vectors it contains without losing mass, and that span is a subset-span
/// of no greater dimension, so the worst inequality is always realized here.
/// Throws EnumerationLimitError when there are more than 20 distinct points.
std::vector<SubspaceWitness> candidate_subspaces(const Configuration& config);

/// Hilbert-Mumford mass criterion: unstable iff some subspace holds mass
/// > d k/(N+1); strictly semistable iff no violation but equality occurs;
/// stable iff every inequality is strict.
StabilityVerdict check_stability(const Configuration& config);

// Generic core over an arbitrary exact field, shared by the rational
// criterion above and the residual (mod p) criterion.
namespace detail {

template <class F>
struct FieldPoints {
    int ambient;
    std::vector<std::vector<typename F::Elem>> vecs; ///< distinct directions
    std::vector<Rat> mults;
    Rat degree() const {
        Rat d(0);
        for (const auto& m : mults) d += m;
        return d;
    }
};

template <class F>
struct FieldWitness {
    EchelonBasis<F> basis;
    int dim;
    Rat mass;
    std::vector<int> span_points;
};

inline constexpr int kMaxDistinctForEnumeration = 20;

template <class F>
std::vector<FieldWitness<F>> field_candidates(const F& f, const FieldPoints<F>& pts) {
    const int l = static_cast<int>(pts.vecs.size());
    const int n = pts.ambient + 1;
    if (l > kMaxDistinctForEnumeration)
        throw EnumerationLimitError("instance too large for exact enumeration (" +
                                    std::to_string(l) + " distinct points, limit 20)");
    std::vector<FieldWitness<F>> out;
    std::map<std::string, int> seen;
    const int max_size = std::min(pts.ambient, l);
    std::vector<int> idx;
    // iterate subsets of each size via combinations
    for (int size = 1; size <= max_size; ++size) {
        idx.assign(size, 0);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            std::vector<std::vector<typename F::Elem>> rows;
            rows.reserve(size);
            for (int i : idx) rows.push_back(pts.vecs[i]);
            EchelonBasis<F> e = echelon_basis(f, std::move(rows));
            if (e.dim() == size) { // dependent subsets reappear as smaller spans
                const std::string key = echelon_key(f, e);
                if (!seen.count(key)) {
                    seen[key] = 1;
                    FieldWitness<F> w;
                    w.dim = size;
                    w.span_points = idx;
                    Rat mass(0);
                    for (int i = 0; i < l; ++i)
                        if (in_span(f, e, pts.vecs[i])) mass += pts.mults[i];
                    w.mass = mass;
                    w.basis = std::move(e);
                    out.push_back(std::move(w));
                }
            }
            // next combination
            int k = size - 1;
            while (k >= 0 && idx[k] == l - size + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

template <class F>
struct FieldVerdict {
    Stability status;
    std::optional<FieldWitness<F>> witness;
};

template <class F>
FieldVerdict<F> field_check_stability(const F& f, const FieldPoints<F>& pts) {
    const Rat d = pts.degree();
    const int n = pts.ambient + 1;
    FieldVerdict<F> v{Stability::Stable, std::nullopt};
    std::optional<FieldWitness<F>> worst;
    Rat worst_margin(0);
    std::optional<FieldWitness<F>> tight;
    for (auto& w : field_candidates(f, pts)) {
        const Rat bound = d * w.dim / n;
        const Rat margin = w.mass - bound; // > 0 violates
        if (sgn(margin) > 0) {
            if (!worst || margin > worst_margin) {
                worst = w;
                worst_margin = margin;
            }
        } else if (sgn(margin) == 0 && !tight) {
            tight = w; // enumeration ascends in dimension: first tie has least dim
        }
    }
    if (worst) {
        v.status = Stability::Unstable;
        v.witness = std::move(worst);
    } else if (tight) {
        v.status = Stability::StrictlySemistable;
        v.witness = std::move(tight);
    }
    return v;
}

FieldPoints<QField> rational_points(const Configuration& config);
SubspaceWitness to_witness(const FieldWitness<QField>& w);

} // namespace detail

} // namespace githeight
