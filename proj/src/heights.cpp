#include "githeight/heights.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "githeight/duality.hpp"
#include "githeight/errors.hpp"
#include "githeight/linalg.hpp"

namespace githeight {

namespace {

LocalHeightInterval arch_interval(const ArchLocalHeight& a) {
    LocalHeightInterval out;
    out.archimedean = true;
    out.lower = a.lower;
    out.upper = a.upper;
    if (a.certificate == "base-case-exact") {
        out.certificate = LocalHeightInterval::Certificate::ArchExact;
    } else if (a.certificate.rfind("tight-split", 0) == 0 ||
               a.certificate == "hadamard-exact") {
        out.certificate = LocalHeightInterval::Certificate::ArchTightSplit;
    } else {
        out.certificate = LocalHeightInterval::Certificate::ArchKempfNess;
    }
    out.note = a.certificate;
    return out;
}

} // namespace

HeightEstimate global_height(const Configuration& config, const HeightOptions& options) {
    const auto verdict = check_stability(config);
    if (verdict.status == Stability::Unstable) throw UnstableError(*verdict.witness);

    HeightEstimate est;
    est.config_digest = config.digest();
    est.options = options;

    InvariantSection section;
    if (config.is_unit_basis_model()) {
        section = InvariantSection::determinant(config);
        est.section_note = "squared determinant (m_z=2)";
    } else {
        section = InvariantSection::from_decomposition(config, decompose(config));
        std::ostringstream os;
        os << "decomposition brackets (" << section.brackets.size()
           << " terms, m_z=" << section.m_z << ")";
        est.section_note = os.str();
    }

    est.places.push_back(arch_interval(arch_local_height(config, section, options.tol)));
    for (const Int& p : bad_primes(config))
        est.places.push_back(nonarch_local_height(config, section, p, options.search_depth));

    for (const auto& pl : est.places) {
        est.lower += pl.lower;
        est.upper += pl.upper;
    }
    return est;
}

SubadditivityReport subadditivity_check(const Configuration& c1, const Configuration& c2,
                                        const HeightOptions& options) {
    SubadditivityReport rep;
    const Configuration sum = add_configurations(c1, c2);
    rep.first = global_height(c1, options);
    rep.second = global_height(c2, options);
    rep.sum = global_height(sum, options);

    const double d1 = to_double(c1.degree());
    const double d2 = to_double(c2.degree());
    const double ds = d1 + d2;
    rep.weighted_sum_upper = ds * rep.sum.upper;
    rep.weighted_parts_lower = d1 * rep.first.lower + d2 * rep.second.lower;
    rep.interval_ok = rep.weighted_sum_upper >= rep.weighted_parts_lower - options.tol;

    // the orbit functional is degree-weighted additive at any fixed scaling
    const KNResult kn = kn_minimize(sum, options.tol);
    const double lhs = ds * kn_value(sum, kn.scaling);
    const double rhs = d1 * kn_value(c1, kn.scaling) + d2 * kn_value(c2, kn.scaling);
    rep.pointwise_gap = std::abs(lhs - rhs);
    rep.pointwise_ok = rep.pointwise_gap <= 1e-9 * (1.0 + std::abs(lhs));
    rep.pass = rep.interval_ok && rep.pointwise_ok;
    return rep;
}

FamilySpec FamilySpec::default_family() {
    FamilySpec f;
    f.max_ambient = 2;
    f.max_points = 5;
    f.entry_range = 2;
    f.multiplicities = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
    f.count = 60;
    f.seed = 0;
    return f;
}

std::vector<Configuration> generate_family(const FamilySpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<Configuration> out;
    while (static_cast<int>(out.size()) < spec.count) {
        const int ambient = 1 + static_cast<int>(rng() % spec.max_ambient);
        const int npts = ambient + 1 + static_cast<int>(rng() % (std::max(1, spec.max_points - ambient)));
        std::vector<std::pair<RatVec, Rat>> raw;
        for (int i = 0; i < npts; ++i) {
            RatVec v(ambient + 1);
            bool nonzero = false;
            for (auto& x : v) {
                const long e = static_cast<long>(rng() % (2 * spec.entry_range + 1)) -
                               spec.entry_range;
                x = Rat(e);
                nonzero = nonzero || e != 0;
            }
            if (!nonzero) v[rng() % v.size()] = 1;
            Rat mult(1);
            if (!spec.multiplicities.empty())
                mult = spec.multiplicities[rng() % spec.multiplicities.size()];
            raw.emplace_back(std::move(v), mult);
        }
        out.push_back(Configuration::make(ambient, raw));
    }
    return out;
}

namespace {

void record(SuiteCheck& check, bool ok, const std::string& what) {
    ++check.checked;
    if (!ok) {
        ++check.failed;
        if (check.counterexamples.size() < 10) check.counterexamples.push_back(what);
    }
}

bool decomposition_sound(const Configuration& c) {
    const BasisDecomposition dec = decompose(c);
    if (!(reconstruct(dec, c.ambient()) == c)) return false;
    const int n = c.dim_vectors();
    Rat coeff_sum(0);
    for (const auto& t : dec.terms) {
        if (sgn(t.coeff) <= 0) return false;
        std::vector<RatVec> cols;
        for (int i : t.basis) cols.push_back(dec.dictionary[i]);
        if (rank(RatMat::from_columns(cols)) != n) return false;
        coeff_sum += t.coeff;
    }
    return coeff_sum * n == c.degree();
}

} // namespace

SuiteReport positivity_suite(const FamilySpec& family, const HeightOptions& options) {
    SuiteReport rep;
    SuiteCheck base{"base-case-zero-height"};
    SuiteCheck decomp{"semistable-decomposable"};
    SuiteCheck unstable_err{"unstable-rejected-with-witness"};
    SuiteCheck nonneg{"semistable-height-nonnegative"};
    SuiteCheck witness{"stable-witness-mechanism"};
    SuiteCheck dual{"hyperplane-height-positive"};

    for (int n = 1; n <= std::max(1, family.max_ambient); ++n) {
        std::vector<std::pair<RatVec, Rat>> raw;
        for (int i = 0; i <= n; ++i) {
            RatVec e(n + 1, Rat(0));
            e[i] = 1;
            raw.emplace_back(e, Rat(1));
        }
        const Configuration id = Configuration::make(n, raw);
        const HeightEstimate h = global_height(id, options);
        record(base, std::abs(h.lower) <= 1e-6 && std::abs(h.upper) <= 1e-6,
               "identity N=" + std::to_string(n));
    }

    for (const Configuration& c : generate_family(family)) {
        const auto verdict = check_stability(c);
        const std::string tag = "config " + c.digest() + " (N=" + std::to_string(c.ambient()) +
                                ", l=" + std::to_string(c.distinct_count()) + ")";
        if (verdict.status == Stability::Unstable) {
            ++rep.unstable;
            bool ok = false;
            try {
                decompose(c);
            } catch (const UnstableError& e) {
                const Rat mass = mass_in_subspace(c, e.witness);
                ok = mass * c.dim_vectors() > c.degree() * e.witness.dim;
            }
            record(unstable_err, ok, tag);
            continue;
        }
        if (verdict.status == Stability::Stable) ++rep.stable;
        else ++rep.strictly_semistable;

        record(decomp, decomposition_sound(c), tag);

        HeightEstimate h;
        bool height_ok = true;
        try {
            h = global_height(c, options);
        } catch (const Error& e) {
            height_ok = false;
        }
        record(nonneg, height_ok && h.lower >= -1e-6, tag);

        if (verdict.status == Stability::Stable) {
            bool ok = true;
            std::string why = tag;
            try {
                const KNResult kn = kn_minimize(c, options.tol);
                const WitnessSplit split = stable_witness_split(c, kn.scaling);
                std::vector<RatVec> cols;
                for (int i : split.witness) cols.push_back(c.point(i).vec);
                ok = rank(RatMat::from_columns(cols)) == c.dim_vectors() &&
                     check_stability(split.remainder).semistable();
            } catch (const Error& e) {
                ok = false;
                why += std::string(": ") + e.what();
            }
            record(witness, ok, why);
        }

        if (c.ambient() > 1 && height_ok) {
            const HeightEstimate hh = hyperplane_height(c, options);
            record(dual, hh.lower > 0.0, tag);
        }
    }

    rep.checks = {base, decomp, unstable_err, nonneg, witness, dual};
    return rep;
}

} // namespace githeight
