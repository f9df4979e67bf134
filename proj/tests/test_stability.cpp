#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "githeight/linalg.hpp"
#include "githeight/stability.hpp"

using namespace githeight;

namespace {

Configuration from_cols(int ambient, std::vector<std::pair<RatVec, Rat>> pts) {
    return Configuration::make(ambient, std::move(pts));
}

RatVec ev(int n, int i) {
    RatVec v(n, Rat(0));
    v[i] = 1;
    return v;
}

// Brute-force oracle: Hilbert-Mumford inequality over the span of every
// nonempty subset of points, using only rank/span from core linear algebra.
Stability oracle_verdict(const Configuration& c) {
    const int l = c.distinct_count();
    const int n = c.dim_vectors();
    const Rat d = c.degree();
    bool tie = false;
    for (unsigned mask = 1; mask < (1u << l); ++mask) {
        std::vector<RatVec> subset;
        for (int i = 0; i < l; ++i)
            if (mask & (1u << i)) subset.push_back(c.point(i).vec);
        const int k = rank(RatMat::from_columns(subset));
        if (k >= n) continue;
        Rat mass(0);
        for (int i = 0; i < l; ++i)
            if (span_membership(c.point(i).vec, subset)) mass += c.point(i).mult;
        const Rat diff = mass * n - d * k;
        if (sgn(diff) > 0) return Stability::Unstable;
        if (sgn(diff) == 0) tie = true;
    }
    return tie ? Stability::StrictlySemistable : Stability::Stable;
}

Configuration random_config(std::mt19937_64& rng, int max_ambient, int max_points) {
    static const std::vector<Rat> mult_choices{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
    const int ambient = 1 + static_cast<int>(rng() % max_ambient);
    const int npts = 1 + static_cast<int>(rng() % max_points);
    std::vector<std::pair<RatVec, Rat>> raw;
    for (int i = 0; i < npts; ++i) {
        RatVec v(ambient + 1);
        bool nz = false;
        for (auto& x : v) {
            const long e = static_cast<long>(rng() % 5) - 2;
            x = Rat(e);
            nz = nz || e != 0;
        }
        if (!nz) v[rng() % v.size()] = 1;
        raw.emplace_back(std::move(v), mult_choices[rng() % mult_choices.size()]);
    }
    return Configuration::make(ambient, raw);
}

} // namespace

TEST_CASE("configuration canonicalization merges equal directions") {
    const Configuration c = from_cols(
        1, {{{Rat(2), Rat(4)}, Rat(1)}, {{Rat(1), Rat(2)}, Rat(1, 2)}, {{Rat(-1), Rat(-2)}, Rat(1)}});
    CHECK(c.distinct_count() == 1);
    CHECK(c.degree() == Rat(5, 2));
    CHECK(c.point(0).vec == RatVec{Rat(1), Rat(2)});
}

TEST_CASE("mass_in_subspace") {
    const Configuration id3 =
        from_cols(2, {{ev(3, 0), Rat(1)}, {ev(3, 1), Rat(1)}, {ev(3, 2), Rat(1)}});
    SubspaceWitness w;
    w.basis = {ev(3, 0), ev(3, 1)};
    w.dim = 2;
    CHECK(mass_in_subspace(id3, w) == 2);

    const Configuration tri = from_cols(
        1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
    SubspaceWitness line;
    line.basis = {ev(2, 0)};
    line.dim = 1;
    CHECK(mass_in_subspace(tri, line) == 1);

    const Configuration halves =
        from_cols(1, {{ev(2, 0), Rat(3, 2)}, {ev(2, 1), Rat(1, 2)}});
    CHECK(mass_in_subspace(halves, line) == Rat(3, 2));
}

TEST_CASE("candidate subspaces") {
    const Configuration id2 = from_cols(1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}});
    CHECK(candidate_subspaces(id2).size() == 2);

    // 3 generic points spanning Q^3, pairwise independent: 3 lines + 3 planes
    const Configuration generic = from_cols(
        2, {{ev(3, 0), Rat(1)}, {ev(3, 1), Rat(1)}, {{Rat(1), Rat(1), Rat(1)}, Rat(1)}});
    CHECK(candidate_subspaces(generic).size() == 6);

    const Configuration single = from_cols(2, {{{Rat(1), Rat(2), Rat(3)}, Rat(1)}});
    CHECK(candidate_subspaces(single).size() == 1);

    const Configuration tri = from_cols(
        1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
    const auto cands = candidate_subspaces(tri);
    CHECK(cands.size() == 3);
    std::set<int> dims;
    for (const auto& w : cands) dims.insert(w.dim);
    CHECK(dims == std::set<int>{1});
}

TEST_CASE("enumeration guard") {
    std::vector<std::pair<RatVec, Rat>> raw;
    for (int i = 0; i < 21; ++i) {
        RatVec v(3);
        v[0] = 1;
        v[1] = i;
        v[2] = Rat(i) * i;
        raw.emplace_back(v, Rat(1));
    }
    const Configuration big = Configuration::make(2, raw);
    CHECK_THROWS_AS(candidate_subspaces(big), EnumerationLimitError);
}

TEST_CASE("check_stability spec cases") {
    // N+1 coordinate points: every coordinate k-subspace is tight
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::pair<RatVec, Rat>> raw;
        for (int i = 0; i <= n; ++i) raw.emplace_back(ev(n + 1, i), Rat(1));
        CHECK(check_stability(Configuration::make(n, raw)).status ==
              Stability::StrictlySemistable);
    }

    // 3 distinct points in P^1: every line has mass 1 < 3/2
    const Configuration tri = from_cols(
        1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
    CHECK(check_stability(tri).status == Stability::Stable);

    // doubled point in a degree-3 cycle: 2 > 3/2
    const Configuration doubled = from_cols(
        1, {{ev(2, 0), Rat(2)}, {ev(2, 1), Rat(1)}});
    const auto verdict = check_stability(doubled);
    REQUIRE(verdict.status == Stability::Unstable);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->dim == 1);
    CHECK(mass_in_subspace(doubled, *verdict.witness) == 2);

    // all vectors inside a proper subspace: unstable
    const Configuration flat = from_cols(
        2, {{ev(3, 0), Rat(1)}, {ev(3, 1), Rat(1)}, {{Rat(1), Rat(1), Rat(0)}, Rat(1)}});
    CHECK(check_stability(flat).status == Stability::Unstable);
}

TEST_CASE("stability agrees with the brute-force oracle") {
    std::mt19937_64 rng(42);
    int unstable = 0, strict = 0, stable = 0;
    for (int iter = 0; iter < 900; ++iter) {
        const Configuration c = random_config(rng, 3, 6);
        const auto verdict = check_stability(c);
        REQUIRE(verdict.status == oracle_verdict(c));
        if (verdict.status == Stability::Unstable) {
            ++unstable;
            REQUIRE(verdict.witness.has_value());
            REQUIRE(mass_in_subspace(c, *verdict.witness) * c.dim_vectors() >
                    c.degree() * verdict.witness->dim);
        } else if (verdict.status == Stability::StrictlySemistable) {
            ++strict;
            REQUIRE(verdict.witness.has_value());
            REQUIRE(mass_in_subspace(c, *verdict.witness) * c.dim_vectors() ==
                    c.degree() * verdict.witness->dim);
        } else {
            ++stable;
        }
    }
    // the family must exercise all three verdicts
    CHECK(unstable > 50);
    CHECK(strict > 50);
    CHECK(stable > 50);
}

TEST_CASE("verdict invariances") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 120; ++iter) {
        const Configuration c = random_config(rng, 2, 5);
        const auto base = check_stability(c).status;

        // permuting points and rescaling vectors
        std::vector<std::pair<RatVec, Rat>> scaled;
        for (const auto& p : c.points()) {
            Rat s(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4));
            s.canonicalize();
            if (sgn(s) == 0) s = Rat(5);
            RatVec v = p.vec;
            for (auto& x : v) x *= s;
            scaled.emplace_back(std::move(v), p.mult);
        }
        std::shuffle(scaled.begin(), scaled.end(), rng);
        CHECK(check_stability(Configuration::make(c.ambient(), scaled)).status == base);

        // determinant-1 rational change of basis
        const int n = c.dim_vectors();
        RatMat g = RatMat::identity(n);
        for (int rep = 0; rep < 4; ++rep) {
            const int i = static_cast<int>(rng() % n);
            int j = static_cast<int>(rng() % n);
            if (i == j) j = (j + 1) % n;
            const Rat f(static_cast<long>(rng() % 5) - 2);
            for (int col = 0; col < n; ++col) g.at(i, col) += f * g.at(j, col);
        }
        REQUIRE(det(g) == 1);
        std::vector<std::pair<RatVec, Rat>> transformed;
        for (const auto& p : c.points()) {
            RatVec v(n, Rat(0));
            for (int r = 0; r < n; ++r)
                for (int k = 0; k < n; ++k) v[r] += g.at(r, k) * p.vec[k];
            transformed.emplace_back(std::move(v), p.mult);
        }
        CHECK(check_stability(Configuration::make(c.ambient(), transformed)).status == base);

        // splitting a point into two equal-direction copies changes nothing
        std::vector<std::pair<RatVec, Rat>> split;
        for (const auto& p : c.points()) split.emplace_back(p.vec, p.mult);
        RatVec dup = c.point(0).vec;
        for (auto& x : dup) x *= 3;
        split.emplace_back(dup, split[0].second / 2);
        split[0].second /= 2;
        CHECK(check_stability(Configuration::make(c.ambient(), split)).status == base);
    }
}
