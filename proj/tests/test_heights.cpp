#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "githeight/heights.hpp"
#include "githeight/json_io.hpp"
#include "githeight/linalg.hpp"

using namespace githeight;

namespace {

RatVec ev(int n, int i) {
    RatVec v(n, Rat(0));
    v[i] = 1;
    return v;
}

Configuration from_cols(int ambient, std::vector<std::pair<RatVec, Rat>> pts) {
    return Configuration::make(ambient, std::move(pts));
}

Configuration identity_config(int n) {
    std::vector<std::pair<RatVec, Rat>> raw;
    for (int i = 0; i <= n; ++i) raw.emplace_back(ev(n + 1, i), Rat(1));
    return Configuration::make(n, raw);
}

Configuration stable_triple() {
    return from_cols(1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
}

} // namespace

TEST_CASE("base case: identity models have exactly zero height") {
    for (int n = 1; n <= 3; ++n) {
        const HeightEstimate h = global_height(identity_config(n));
        CHECK(h.lower == 0.0);
        CHECK(h.upper == 0.0);
        CHECK(h.places.size() == 1); // no bad primes
        CHECK(h.places[0].certificate == LocalHeightInterval::Certificate::ArchExact);
    }
}

TEST_CASE("product formula: any invertible rational square model sums to zero") {
    std::mt19937_64 rng(123);
    int tested = 0;
    while (tested < 25) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<std::pair<RatVec, Rat>> raw;
        for (int i = 0; i < n; ++i) {
            RatVec v(n);
            for (auto& x : v) {
                Rat q(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
                q.canonicalize();
                x = q;
            }
            if (is_zero_vec(v)) v[0] = 1;
            raw.emplace_back(std::move(v), Rat(1));
        }
        std::vector<RatVec> cols;
        for (auto& [v, m] : raw) cols.push_back(v);
        if (rank(RatMat::from_columns(cols)) != n) continue;
        const Configuration c = Configuration::make(n - 1, raw);
        if (c.distinct_count() != n) continue;
        ++tested;
        const HeightEstimate h = global_height(c);
        CAPTURE(c.digest());
        REQUIRE(h.lower == 0.0);
        REQUIRE(h.upper == 0.0);
        for (const auto& pl : h.places)
            REQUIRE((pl.certificate == LocalHeightInterval::Certificate::ArchExact ||
                     pl.certificate == LocalHeightInterval::Certificate::ExactDeterminant));
    }
}

TEST_CASE("frozen global heights") {
    // stable triple in P^1: archimedean only,
    // value = (log2)/3 - (log3)/4 + (log2)/6
    const HeightEstimate tri = global_height(stable_triple());
    const double expected = std::log(2.0) / 3.0 - std::log(3.0) / 4.0 + std::log(2.0) / 6.0;
    CHECK(tri.places.size() == 1);
    CHECK(tri.upper == doctest::Approx(expected).epsilon(1e-8));
    CHECK(tri.upper - tri.lower < 1e-6);
    CHECK(tri.lower > 0.07);

    // {e0, e1, (1,1), (1,-1)}: global height log(2)/4, independent of the
    // section split between places
    const Configuration four = from_cols(1, {{ev(2, 0), Rat(1)},
                                             {ev(2, 1), Rat(1)},
                                             {{Rat(1), Rat(1)}, Rat(1)},
                                             {{Rat(1), Rat(-1)}, Rat(1)}});
    const HeightEstimate hf = global_height(four);
    CHECK(hf.upper == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-9));
    CHECK(hf.upper - hf.lower < 1e-6);

    // strictly semistable tie: {e0, e1, (1,1):2} has height exactly 0
    const Configuration sss =
        from_cols(1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(2)}});
    const HeightEstimate hs = global_height(sss);
    CHECK(std::abs(hs.upper) < 1e-10);
    CHECK(std::abs(hs.lower) < 1e-10);
}

TEST_CASE("unstable input carries the witness") {
    const Configuration bad = from_cols(1, {{ev(2, 0), Rat(2)}, {ev(2, 1), Rat(1)}});
    try {
        global_height(bad);
        FAIL("expected UnstableError");
    } catch (const UnstableError& e) {
        CHECK(e.witness.dim == 1);
        CHECK(mass_in_subspace(bad, e.witness) == 2);
    }
}

TEST_CASE("total equals the componentwise sum of places") {
    const Configuration four = from_cols(1, {{ev(2, 0), Rat(1)},
                                             {ev(2, 1), Rat(1)},
                                             {{Rat(1), Rat(3)}, Rat(1)},
                                             {{Rat(2), Rat(-1)}, Rat(1)}});
    const HeightEstimate h = global_height(four);
    double lo = 0.0, up = 0.0;
    for (const auto& pl : h.places) {
        lo += pl.lower;
        up += pl.upper;
    }
    CHECK(h.lower == lo);
    CHECK(h.upper == up);
}

TEST_CASE("determinism and scale invariance of serialized heights") {
    const Configuration four = from_cols(1, {{ev(2, 0), Rat(1)},
                                             {ev(2, 1), Rat(1)},
                                             {{Rat(1), Rat(1)}, Rat(1)},
                                             {{Rat(1), Rat(-1)}, Rat(1)}});
    HeightOptions opts;
    opts.seed = 7;
    const std::string a = height_to_json(global_height(four, opts)).dump();
    const std::string b = height_to_json(global_height(four, opts)).dump();
    CHECK(a == b);

    // rescaling input vectors canonicalizes to the same configuration
    const Configuration scaled = from_cols(1, {{{Rat(3), Rat(0)}, Rat(1)},
                                               {{Rat(0), Rat(-7)}, Rat(1)},
                                               {{Rat(2, 3), Rat(2, 3)}, Rat(1)},
                                               {{Rat(-5), Rat(5)}, Rat(1)}});
    CHECK(scaled == four);
    CHECK(height_to_json(global_height(scaled, opts)).dump() == a);
}

TEST_CASE("global height is invariant under rational SL changes of basis") {
    std::mt19937_64 rng(31415);
    const std::vector<Configuration> bases = {
        stable_triple(),
        from_cols(1, {{ev(2, 0), Rat(1)},
                      {ev(2, 1), Rat(1)},
                      {{Rat(1), Rat(1)}, Rat(1)},
                      {{Rat(1), Rat(-1)}, Rat(1)}}),
        from_cols(2, {{ev(3, 0), Rat(1)},
                      {ev(3, 1), Rat(1)},
                      {ev(3, 2), Rat(1)},
                      {{Rat(1), Rat(1), Rat(1)}, Rat(1)}}),
    };
    for (const Configuration& c : bases) {
        const HeightEstimate base = global_height(c);
        const int n = c.dim_vectors();
        for (int iter = 0; iter < 3; ++iter) {
            RatMat g = RatMat::identity(n);
            for (int rep = 0; rep < 3; ++rep) {
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
            const HeightEstimate moved =
                global_height(Configuration::make(c.ambient(), transformed));
            CAPTURE(c.digest());
            REQUIRE(std::abs(moved.upper - base.upper) < 1e-6);
            REQUIRE(std::abs(moved.lower - base.lower) < 1e-6);
        }
    }
}

TEST_CASE("subadditivity checks") {
    // equal summands: minimizers coincide, equality case
    const SubadditivityReport eq = subadditivity_check(identity_config(1), identity_config(1));
    CHECK(eq.pass);
    CHECK(eq.weighted_sum_upper == doctest::Approx(eq.weighted_parts_lower).epsilon(1e-9));

    const SubadditivityReport mix = subadditivity_check(identity_config(1), stable_triple());
    CHECK(mix.pass);

    std::mt19937_64 rng(2026);
    static const std::vector<Rat> mult_choices{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
    int done = 0;
    while (done < 8) {
        const int ambient = 1 + static_cast<int>(rng() % 2);
        const auto draw = [&]() {
            std::vector<std::pair<RatVec, Rat>> raw;
            const int npts = 2 + static_cast<int>(rng() % 3);
            for (int i = 0; i < npts; ++i) {
                RatVec v(ambient + 1);
                bool nz = false;
                for (auto& x : v) {
                    const long e = static_cast<long>(rng() % 5) - 2;
                    x = Rat(e);
                    nz = nz || e != 0;
                }
                if (!nz) v[0] = 1;
                raw.emplace_back(std::move(v), mult_choices[rng() % mult_choices.size()]);
            }
            return Configuration::make(ambient, raw);
        };
        const Configuration c1 = draw();
        const Configuration c2 = draw();
        if (!check_stability(c1).semistable() || !check_stability(c2).semistable()) continue;
        ++done;
        const SubadditivityReport rep = subadditivity_check(c1, c2);
        CAPTURE(c1.digest());
        CAPTURE(c2.digest());
        REQUIRE(rep.pointwise_ok);
        REQUIRE(rep.interval_ok);
    }
}

TEST_CASE("positivity suite passes on a small family") {
    FamilySpec family = FamilySpec::default_family();
    family.count = 25;
    family.seed = 11;
    const SuiteReport rep = positivity_suite(family);
    for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        for (const auto& ce : c.counterexamples) CAPTURE(ce);
        REQUIRE(c.pass());
    }
    CHECK(rep.stable + rep.strictly_semistable + rep.unstable == 25);
}
