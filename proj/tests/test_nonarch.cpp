#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "githeight/decompose.hpp"
#include "githeight/nonarch.hpp"
#include "githeight/stability.hpp"

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

InvariantSection section_of(const Configuration& c) {
    if (c.is_unit_basis_model()) return InvariantSection::determinant(c);
    return InvariantSection::from_decomposition(c, decompose(c));
}

bool contains_prime(const std::vector<Int>& primes, long p) {
    for (const auto& q : primes)
        if (q == p) return true;
    return false;
}

} // namespace

TEST_CASE("p-primitive rescaling") {
    CHECK(p_primitive({Rat(2), Rat(4)}, 2) == RatVec{Rat(1), Rat(2)});
    CHECK(p_primitive({Rat(1, 3), Rat(1)}, 3) == RatVec{Rat(1), Rat(3)});
    CHECK(p_primitive({Rat(1), Rat(1)}, 5) == RatVec{Rat(1), Rat(1)});
    // only the p-part moves
    CHECK(p_primitive({Rat(6), Rat(10)}, 2) == RatVec{Rat(3), Rat(5)});
}

TEST_CASE("residual semistability") {
    for (long p : {2L, 3L, 7L}) {
        CHECK(residually_semistable(identity_config(2), p).semistable);
    }

    // (1,0) and (1,p) collide mod p: mass 2 in a line, d=2
    for (long p : {2L, 5L}) {
        const Configuration c =
            from_cols(1, {{ev(2, 0), Rat(1)}, {{Rat(1), Rat(p)}, Rat(1)}});
        const ResidualReduction r = residually_semistable(c, p);
        CHECK_FALSE(r.semistable);
        CHECK(r.reduced_points.size() == 1);
        CHECK(r.reduced_points[0].second == 2);
    }

    const Configuration tri =
        from_cols(1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
    CHECK(residually_semistable(tri, 7).semistable);
    // mod 2 the three reductions stay distinct in P^1(F_2)
    CHECK(residually_semistable(tri, 2).semistable);
}

TEST_CASE("nonarch local height: invertible square models are exactly zero") {
    for (long p : {2L, 3L, 5L}) {
        const auto li =
            nonarch_local_height(identity_config(2), section_of(identity_config(2)), p, 3);
        CHECK(li.lower == 0.0);
        CHECK(li.upper == 0.0);
        CHECK(li.certificate == LocalHeightInterval::Certificate::ExactDeterminant);
    }
    const Configuration skew = from_cols(1, {{ev(2, 0), Rat(1)}, {{Rat(1), Rat(2)}, Rat(1)}});
    const auto li = nonarch_local_height(skew, section_of(skew), 2, 3);
    CHECK(li.upper == 0.0);
    CHECK(li.certificate == LocalHeightInterval::Certificate::ExactDeterminant);
}

TEST_CASE("nonarch local height: residually semistable standard model") {
    const Configuration tri =
        from_cols(1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
    const InvariantSection s = section_of(tri);
    const auto li = nonarch_local_height(tri, s, 2, 3);
    CHECK(li.certificate == LocalHeightInterval::Certificate::ExactResidual);
    CHECK(li.lower == li.upper);
    CHECK(li.lower == 0.0); // all brackets are odd determinants
}

TEST_CASE("nonarch local height: positive exact value at a residual tie") {
    // {e0, e1, (1,1), (1,-1)}: reductions mod 2 merge (1,1),(1,-1) into a
    // tight line; the standard model is residually semistable. With the
    // explicit section (det(e0,e1) det((1,1),(1,-1)))^2 the second bracket
    // contributes v_2 = 1, so the term is 2 log 2 / (4*2).
    const Configuration four = from_cols(1, {{ev(2, 0), Rat(1)},
                                             {ev(2, 1), Rat(1)},
                                             {{Rat(1), Rat(1)}, Rat(1)},
                                             {{Rat(1), Rat(-1)}, Rat(1)}});
    REQUIRE(check_stability(four).status == Stability::Stable);
    // canonical order: (0,1), (1,-1), (1,0), (1,1)
    REQUIRE(four.point(0).vec == RatVec{Rat(0), Rat(1)});
    REQUIRE(four.point(1).vec == RatVec{Rat(1), Rat(-1)});
    REQUIRE(four.point(2).vec == RatVec{Rat(1), Rat(0)});
    REQUIRE(four.point(3).vec == RatVec{Rat(1), Rat(1)});
    InvariantSection s;
    s.m_z = 2;
    s.brackets = {{{2, 0}, 1}, {{3, 1}, 1}};
    const auto li = nonarch_local_height(four, s, 2, 3);
    CHECK(li.certificate == LocalHeightInterval::Certificate::ExactResidual);
    CHECK(li.lower == li.upper);
    CHECK(li.lower == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-12));

    // the decomposition-induced section puts the factor of 2 at the
    // archimedean place instead; its finite term here is 0
    const auto li2 = nonarch_local_height(four, section_of(four), 2, 3);
    CHECK(li2.certificate == LocalHeightInterval::Certificate::ExactResidual);
    CHECK(li2.lower == 0.0);
}

TEST_CASE("lattice search walks to a residually semistable model") {
    // (1,0),(1,4),(1,8) all collide mod 2; three steps along the violating
    // line reach a distinct-reduction model where every bracket is odd
    const Configuration c = from_cols(
        1, {{ev(2, 0), Rat(1)}, {{Rat(1), Rat(4)}, Rat(1)}, {{Rat(1), Rat(8)}, Rat(1)}});
    REQUIRE(check_stability(c).status == Stability::Stable);
    const InvariantSection s = section_of(c);
    REQUIRE(s.m_z == 4);

    const auto exact = nonarch_local_height(c, s, 2, 3);
    CHECK(exact.certificate == LocalHeightInterval::Certificate::ExactResidual);
    CHECK(exact.lower == exact.upper);
    CHECK(exact.lower == 0.0);

    // shallower searches certify only upper bounds, non-increasing in depth
    const double log2 = std::log(2.0);
    const auto d0 = nonarch_local_height(c, s, 2, 0);
    CHECK(d0.certificate == LocalHeightInterval::Certificate::SearchDepth);
    CHECK(d0.lower == 0.0);
    CHECK(d0.upper == doctest::Approx(14.0 * log2 / 12.0).epsilon(1e-12));
    const auto d1 = nonarch_local_height(c, s, 2, 1);
    CHECK(d1.upper == doctest::Approx(8.0 * log2 / 12.0).epsilon(1e-12));
    const auto d2 = nonarch_local_height(c, s, 2, 2);
    CHECK(d2.upper == doctest::Approx(2.0 * log2 / 12.0).epsilon(1e-12));
    CHECK(d0.upper >= d1.upper);
    CHECK(d1.upper >= d2.upper);
    CHECK(d2.upper >= exact.upper);
}

TEST_CASE("bad primes") {
    CHECK(bad_primes(identity_config(1)).empty());
    CHECK(bad_primes(identity_config(3)).empty());

    const Configuration skew = from_cols(1, {{ev(2, 0), Rat(1)}, {{Rat(1), Rat(2)}, Rat(1)}});
    const auto primes = bad_primes(skew);
    REQUIRE(primes.size() == 1);
    CHECK(primes[0] == 2);

    const Configuration tri =
        from_cols(1, {{ev(2, 0), Rat(1)}, {ev(2, 1), Rat(1)}, {{Rat(1), Rat(1)}, Rat(1)}});
    CHECK(bad_primes(tri).empty());

    const Configuration four = from_cols(1, {{ev(2, 0), Rat(1)},
                                             {ev(2, 1), Rat(1)},
                                             {{Rat(1), Rat(1)}, Rat(1)},
                                             {{Rat(1), Rat(-1)}, Rat(1)}});
    CHECK(contains_prime(bad_primes(four), 2));

    // a large prime factor appears via the pair-collision gcd
    const Configuration bigp =
        from_cols(1, {{ev(2, 0), Rat(1)}, {{Rat(1), Rat(101)}, Rat(1)}, {ev(2, 1), Rat(1)}});
    CHECK(contains_prime(bad_primes(bigp), 101));
}

TEST_CASE("good primes have identical residual structure") {
    // for p outside bad_primes the reduction keeps all subset ranks, so the
    // residual verdict matches the rational one
    std::mt19937_64 rng(515);
    int tested = 0;
    while (tested < 40) {
        const int ambient = 1 + static_cast<int>(rng() % 2);
        const int npts = 2 + static_cast<int>(rng() % 3);
        std::vector<std::pair<RatVec, Rat>> raw;
        for (int i = 0; i < npts; ++i) {
            RatVec v(ambient + 1);
            bool nz = false;
            for (auto& x : v) {
                const long e = static_cast<long>(rng() % 7) - 3;
                x = Rat(e);
                nz = nz || e != 0;
            }
            if (!nz) v[0] = 1;
            raw.emplace_back(std::move(v), Rat(1));
        }
        const Configuration c = Configuration::make(ambient, raw);
        if (!check_stability(c).semistable()) continue;
        ++tested;
        const auto bad = bad_primes(c);
        for (long p : {2L, 3L, 5L, 7L, 11L}) {
            if (contains_prime(bad, p)) continue;
            CAPTURE(c.digest());
            CAPTURE(p);
            REQUIRE(residually_semistable(c, p).semistable);
        }
    }
}

TEST_CASE("finite local terms are nonnegative across the family") {
    std::mt19937_64 rng(616);
    static const std::vector<Rat> mult_choices{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
    int tested = 0;
    while (tested < 30) {
        const int ambient = 1 + static_cast<int>(rng() % 2);
        const int npts = 2 + static_cast<int>(rng() % 3);
        std::vector<std::pair<RatVec, Rat>> raw;
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
        const Configuration c = Configuration::make(ambient, raw);
        if (!check_stability(c).semistable()) continue;
        ++tested;
        const InvariantSection s = section_of(c);
        for (const Int& p : bad_primes(c)) {
            const auto li = nonarch_local_height(c, s, p, 2);
            CAPTURE(c.digest());
            REQUIRE(li.lower >= 0.0);
            REQUIRE(li.upper >= li.lower);
            if (li.certificate != LocalHeightInterval::Certificate::SearchDepth)
                REQUIRE(li.lower == li.upper);
        }
    }
}
