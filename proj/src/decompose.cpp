#include "githeight/decompose.hpp"

#include <algorithm>
#include <deque>

#include "githeight/field.hpp"
#include "githeight/linalg.hpp"

namespace githeight {

namespace {

bool is_tight(const Configuration& c, const SubspaceWitness& w) {
    return mass_in_subspace(c, w) * (c.ambient() + 1) == c.degree() * w.dim;
}

} // namespace

std::optional<SubspaceWitness> find_tight_subspace(const Configuration& config) {
    const Rat d = config.degree();
    const int n = config.dim_vectors();
    for (const auto& w : candidate_subspaces(config))
        if (w.mass * n == d * w.dim) return w;
    return std::nullopt;
}

RestrictedConfig restrict_to(const Configuration& config, const SubspaceWitness& w) {
    if (!is_tight(config, w)) throw Error("restrict_to: subspace is not tight");
    QField f;
    auto e = echelon_basis(f, w.basis);
    if (e.dim() != w.dim) throw Error("restrict_to: witness basis is dependent");
    std::vector<RatVec> basis_cols;
    for (const auto& row : e.rows) basis_cols.push_back(row);
    const RatMat b = RatMat::from_columns(basis_cols); // (N+1) x k
    std::vector<std::pair<RatVec, Rat>> raw;
    std::vector<int> parents;
    std::vector<RatVec> members;
    for (int i = 0; i < config.distinct_count(); ++i) {
        const auto& p = config.point(i);
        if (!in_span(f, e, p.vec)) continue;
        members.push_back(p.vec);
        parents.push_back(i);
        raw.emplace_back(RatVec(), p.mult);
    }
    const auto coords = solve_columns(b, members);
    if (coords.size() != members.size()) throw Error("restrict_to: coordinate solve failed");
    for (std::size_t i = 0; i < members.size(); ++i) raw[i].first = coords[i];
    std::vector<int> map;
    RestrictedConfig out{Configuration::make(w.dim - 1, raw, &map), {}};
    // coordinates are an injective linear map, so no merging happened and
    // the index map is a bijection
    out.parent_index.assign(out.config.distinct_count(), -1);
    for (std::size_t i = 0; i < parents.size(); ++i) out.parent_index[map[i]] = parents[i];
    return out;
}

QuotientConfig quotient_by(const Configuration& config, const SubspaceWitness& w) {
    if (!is_tight(config, w)) throw Error("quotient_by: subspace is not tight");
    QField f;
    auto e = echelon_basis(f, w.basis);
    const int n = config.dim_vectors();
    std::vector<int> nonpivot;
    {
        std::vector<bool> is_pivot(n, false);
        for (int p : e.pivots) is_pivot[p] = true;
        for (int j = 0; j < n; ++j)
            if (!is_pivot[j]) nonpivot.push_back(j);
    }
    std::vector<std::pair<RatVec, Rat>> raw;
    std::vector<int> parents;
    for (int i = 0; i < config.distinct_count(); ++i) {
        const auto& p = config.point(i);
        RatVec residue = echelon_residue(f, e, p.vec);
        RatVec img;
        img.reserve(nonpivot.size());
        for (int j : nonpivot) img.push_back(residue[j]);
        if (is_zero_vec(img)) continue; // point lies inside W
        raw.emplace_back(std::move(img), p.mult);
        parents.push_back(i);
    }
    std::vector<int> map;
    QuotientConfig out{Configuration::make(static_cast<int>(nonpivot.size()) - 1, raw, &map), {}};
    out.preimages.assign(out.config.distinct_count(), {});
    for (std::size_t i = 0; i < parents.size(); ++i) out.preimages[map[i]].push_back(parents[i]);
    return out;
}

Rat max_basis_multiple(const Configuration& config, const std::vector<int>& basis_indices) {
    const int n = config.dim_vectors();
    if (static_cast<int>(basis_indices.size()) != n)
        throw Error("max_basis_multiple: need exactly N+1 indices");
    std::vector<RatVec> cols;
    for (int i : basis_indices) cols.push_back(config.point(i).vec);
    if (rank(RatMat::from_columns(cols)) != n)
        throw Error("max_basis_multiple: indicated vectors are dependent");

    Rat t = config.point(basis_indices[0]).mult;
    for (int i : basis_indices) t = std::min(t, config.point(i).mult);

    QField f;
    const Rat d = config.degree();
    for (const auto& w : candidate_subspaces(config)) {
        auto e = echelon_basis(f, w.basis);
        int inside = 0;
        for (int i : basis_indices)
            if (in_span(f, e, config.point(i).vec)) ++inside;
        if (inside >= w.dim) continue; // mass and bound drop at the same rate or faster
        // mass - t*inside <= (d - n t) k / n  =>  t <= (dk/n - mass) / (k - inside)
        const Rat slackw = d * w.dim / n - w.mass;
        const Rat bound = slackw / (w.dim - inside);
        t = std::min(t, bound);
    }
    return t;
}

namespace {

using Term = BasisDecomposition::Term;

std::vector<Term> decompose_worker(const Configuration& c, int depth, int guard);

std::vector<Term> recombine(const Configuration& c, const SubspaceWitness& w, int depth,
                            int guard) {
    RestrictedConfig inside = restrict_to(c, w);
    QuotientConfig quot = quotient_by(c, w);
    if (!check_stability(inside.config).semistable() || !check_stability(quot.config).semistable())
        throw Error("decompose: tight split produced a non-semistable piece");
    auto in_terms = decompose_worker(inside.config, depth + 1, guard);
    auto out_terms = decompose_worker(quot.config, depth + 1, guard);
    for (auto& t : in_terms)
        for (int& i : t.basis) i = inside.parent_index[i];

    // Merge the two coefficient streams; quotient points draw their lifts
    // from a per-point supply of parent multiplicities.
    std::vector<std::deque<std::pair<int, Rat>>> supply(quot.config.distinct_count());
    for (int q = 0; q < quot.config.distinct_count(); ++q)
        for (int parent : quot.preimages[q])
            supply[q].emplace_back(parent, c.point(parent).mult);

    std::deque<Term> inq(in_terms.begin(), in_terms.end());
    std::deque<Term> outq(out_terms.begin(), out_terms.end());
    std::vector<Term> out;
    while (!inq.empty() && !outq.empty()) {
        Rat step = std::min(inq.front().coeff, outq.front().coeff);
        for (int q : outq.front().basis) step = std::min(step, supply[q].front().second);
        Term t;
        t.coeff = step;
        t.basis = inq.front().basis;
        for (int q : outq.front().basis) t.basis.push_back(supply[q].front().first);
        out.push_back(std::move(t));
        inq.front().coeff -= step;
        if (sgn(inq.front().coeff) == 0) inq.pop_front();
        outq.front().coeff -= step;
        for (int q : outq.front().basis) {
            supply[q].front().second -= step;
            if (sgn(supply[q].front().second) == 0) supply[q].pop_front();
        }
        if (sgn(outq.front().coeff) == 0) outq.pop_front();
    }
    if (!inq.empty() || !outq.empty())
        throw Error("decompose: coefficient streams did not balance");
    return out;
}

std::vector<Term> decompose_worker(const Configuration& c, int depth, int guard) {
    if (depth > guard) throw Error("decompose: recursion guard exceeded");
    const int n = c.dim_vectors();
    if (n == 1) return {Term{c.degree(), {0}}};

    if (auto tight = find_tight_subspace(c)) return recombine(c, *tight, depth, guard);

    // no tight subspace: subtract the largest admissible multiple of a
    // greedily chosen basis (descending multiplicity, canonical order ties)
    std::vector<int> order(c.distinct_count());
    for (int i = 0; i < c.distinct_count(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return c.point(a).mult > c.point(b).mult; });
    QField f;
    EchelonBasis<QField> span;
    std::vector<int> basis;
    for (int i : order) {
        if (static_cast<int>(basis.size()) == n) break;
        if (in_span(f, span, c.point(i).vec)) continue;
        std::vector<std::vector<Rat>> rows;
        for (int b : basis) rows.push_back(c.point(b).vec);
        rows.push_back(c.point(i).vec);
        span = echelon_basis(f, rows);
        basis.push_back(i);
    }
    if (static_cast<int>(basis.size()) != n)
        throw Error("decompose: configuration does not span (should be unstable)");
    std::sort(basis.begin(), basis.end());

    const Rat t = max_basis_multiple(c, basis);
    if (sgn(t) <= 0) throw Error("decompose: zero step without a tight subspace");

    std::vector<ProjPoint> kept;
    std::vector<int> kept_parent;
    for (int i = 0; i < c.distinct_count(); ++i) {
        Rat m = c.point(i).mult;
        if (std::find(basis.begin(), basis.end(), i) != basis.end()) m -= t;
        if (sgn(m) == 0) continue;
        kept.push_back({c.point(i).vec, m});
        kept_parent.push_back(i);
    }
    std::vector<Term> terms{Term{t, basis}};
    if (!kept.empty()) {
        Configuration rest = Configuration::from_canonical(c.ambient(), std::move(kept));
        auto rest_terms = decompose_worker(rest, depth + 1, guard);
        for (auto& rt : rest_terms) {
            for (int& i : rt.basis) i = kept_parent[i];
            terms.push_back(std::move(rt));
        }
    }
    return terms;
}

} // namespace

BasisDecomposition decompose(const Configuration& config) {
    auto verdict = check_stability(config);
    if (verdict.status == Stability::Unstable) throw UnstableError(*verdict.witness);
    const int guard = 10 * config.distinct_count() + 10;
    BasisDecomposition dec;
    for (const auto& p : config.points()) dec.dictionary.push_back(p.vec);
    dec.terms = decompose_worker(config, 0, guard);
    return dec;
}

Configuration reconstruct(const BasisDecomposition& dec, int ambient) {
    std::vector<std::pair<RatVec, Rat>> raw;
    for (const auto& t : dec.terms)
        for (int i : t.basis) raw.emplace_back(dec.dictionary[i], t.coeff);
    return Configuration::make(ambient, raw);
}

WitnessSplit stable_witness_split(const Configuration& config, const HermitianScaling& scaling) {
    auto verdict = check_stability(config);
    if (verdict.status != Stability::Stable)
        throw Error("stable_witness_split: configuration is not stable (" +
                    to_string(verdict.status) + ")");
    const int n = config.dim_vectors();
    const int l = config.distinct_count();
    constexpr double kOrthTol = 1e-9;

    const Eigen::MatrixXcd root = scaling.sqrt();
    std::vector<Eigen::VectorXcd> dirs(l);
    for (int i = 0; i < l; ++i) {
        Eigen::VectorXcd v(n);
        for (int j = 0; j < n; ++j) v(j) = to_double(config.point(i).vec[j]);
        Eigen::VectorXcd w = root * v;
        dirs[i] = w / w.norm();
    }
    const auto nonorthogonal = [&](int a, int b) {
        return std::abs(dirs[a].dot(dirs[b])) > kOrthTol;
    };

    const Rat sub = Rat(1, n) / n; // 1/(N+1)^2
    const auto make_remainder = [&](const std::vector<int>& witness) {
        std::vector<ProjPoint> kept;
        for (int i = 0; i < l; ++i) {
            Rat m = config.point(i).mult;
            if (std::find(witness.begin(), witness.end(), i) != witness.end()) m -= sub;
            if (sgn(m) < 0) return std::optional<Configuration>();
            if (sgn(m) > 0) kept.push_back({config.point(i).vec, m});
        }
        if (kept.empty()) return std::optional<Configuration>();
        return std::optional<Configuration>(
            Configuration::from_canonical(config.ambient(), std::move(kept)));
    };

    std::vector<int> order(l);
    for (int i = 0; i < l; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return config.point(a).mult > config.point(b).mult;
    });

    QField f;
    const auto greedy_from = [&](int start_pos) -> std::optional<std::vector<int>> {
        const int first = order[start_pos];
        std::vector<int> picked{first};
        EchelonBasis<QField> span = echelon_basis(f, {config.point(first).vec});
        // second pick must break orthogonality; the rest only extend the rank
        for (int pos = 0; pos < l && static_cast<int>(picked.size()) < n; ++pos) {
            const int i = order[pos];
            if (i == first) continue;
            if (in_span(f, span, config.point(i).vec)) continue;
            if (picked.size() == 1 && !nonorthogonal(first, i)) continue;
            std::vector<std::vector<Rat>> rows;
            for (int b : picked) rows.push_back(config.point(b).vec);
            rows.push_back(config.point(i).vec);
            span = echelon_basis(f, rows);
            picked.push_back(i);
        }
        if (static_cast<int>(picked.size()) != n) return std::nullopt;
        std::sort(picked.begin(), picked.end());
        return picked;
    };

    const auto admissible = [&](const std::vector<int>& witness)
        -> std::optional<WitnessSplit> {
        bool pair_found = false;
        for (std::size_t a = 0; a < witness.size() && !pair_found; ++a)
            for (std::size_t b = a + 1; b < witness.size(); ++b)
                if (nonorthogonal(witness[a], witness[b])) { pair_found = true; break; }
        if (!pair_found) return std::nullopt;
        auto rem = make_remainder(witness);
        if (!rem || !check_stability(*rem).semistable()) return std::nullopt;
        return WitnessSplit{witness, *rem};
    };

    for (int start = 0; start < l; ++start) {
        auto picked = greedy_from(start);
        if (!picked) continue;
        if (auto split = admissible(*picked)) return *split;
    }

    // exhaustive fallback over independent N+1-subsets
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        std::vector<RatVec> cols;
        for (int i : idx) cols.push_back(config.point(i).vec);
        if (rank(RatMat::from_columns(cols)) == n)
            if (auto split = admissible(idx)) return *split;
        int k = n - 1;
        while (k >= 0 && idx[k] == l - n + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    throw Error("stable_witness_split: no admissible witness found");
}

} // namespace githeight
