#include "githeight/nonarch.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "githeight/errors.hpp"
#include "githeight/field.hpp"
#include "githeight/linalg.hpp"
#include "githeight/stability.hpp"

namespace githeight {

std::string to_string(LocalHeightInterval::Certificate c) {
    using C = LocalHeightInterval::Certificate;
    switch (c) {
        case C::ExactResidual: return "ExactResidual";
        case C::ExactDeterminant: return "ExactDeterminant";
        case C::SearchDepth: return "SearchDepth";
        case C::Trivial: return "Trivial";
        case C::ArchExact: return "ArchExact";
        case C::ArchKempfNess: return "ArchKempfNess";
        case C::ArchTightSplit: return "ArchTightSplit";
    }
    return "?";
}

RatVec p_primitive(const RatVec& v, const Int& p) {
    if (is_zero_vec(v)) throw Error("p_primitive: zero vector");
    long minval = 0;
    bool first = true;
    for (const auto& x : v) {
        if (sgn(x) == 0) continue;
        const long val = padic_valuation(x, p);
        if (first || val < minval) minval = val;
        first = false;
    }
    Rat scale(1);
    Int pp;
    mpz_pow_ui(pp.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(minval)));
    if (minval > 0) scale = Rat(1, pp);
    if (minval < 0) scale = Rat(pp);
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
    return out;
}

Configuration primitive_model(const Configuration& config, const Int& p) {
    std::vector<std::pair<RatVec, Rat>> raw;
    for (const auto& pt : config.points()) raw.emplace_back(p_primitive(pt.vec, p), pt.mult);
    return Configuration::make(config.ambient(), raw);
}

namespace {

// monic canonical representative of a nonzero F_p direction
std::vector<Int> monic_direction(const PrimeField& f, std::vector<Int> v) {
    int lead = -1;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) { lead = static_cast<int>(j); break; }
    if (lead < 0) throw Error("residual reduction: vector vanishes mod p");
    const Int inv = f.inverse(v[lead]);
    for (auto& x : v) x = f.mul(x, inv);
    return v;
}

struct ResidualPoints {
    detail::FieldPoints<PrimeField> pts;
    std::vector<std::pair<std::vector<Int>, Rat>> reduced;
};

ResidualPoints reduce_model(const PrimeField& f, int ambient,
                            const std::vector<RatVec>& model_vectors,
                            const std::vector<Rat>& mults) {
    std::map<std::string, int> index_of;
    ResidualPoints rp;
    rp.pts.ambient = ambient;
    for (std::size_t i = 0; i < model_vectors.size(); ++i) {
        std::vector<Int> red(model_vectors[i].size());
        for (std::size_t j = 0; j < red.size(); ++j) red[j] = f.reduce(model_vectors[i][j]);
        red = monic_direction(f, std::move(red));
        std::string key;
        for (const auto& x : red) key += x.get_str() + ",";
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            index_of.emplace(key, static_cast<int>(rp.pts.vecs.size()));
            rp.pts.vecs.push_back(red);
            rp.pts.mults.push_back(mults[i]);
            rp.reduced.emplace_back(std::move(red), mults[i]);
        } else {
            rp.pts.mults[it->second] += mults[i];
            rp.reduced[it->second].second += mults[i];
        }
    }
    return rp;
}

std::vector<RatVec> config_vectors(const Configuration& c) {
    std::vector<RatVec> v;
    for (const auto& p : c.points()) v.push_back(p.vec);
    return v;
}

std::vector<Rat> config_mults(const Configuration& c) {
    std::vector<Rat> m;
    for (const auto& p : c.points()) m.push_back(p.mult);
    return m;
}

// Canonical key of the Z_p-lattice generated by the columns of L, up to
// p-power homothety: triangular reduction over the localization at p with
// p-power pivots and entries reduced mod the pivot.
std::string lattice_key(const RatMat& l, const Int& p) {
    const int n = l.rows;
    RatMat m = l;
    long minval = 0;
    bool first = true;
    for (const auto& x : m.a) {
        if (sgn(x) == 0) continue;
        const long v = padic_valuation(x, p);
        if (first || v < minval) minval = v;
        first = false;
    }
    {
        Int pp;
        mpz_pow_ui(pp.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(minval)));
        const Rat scale = minval > 0 ? Rat(1, pp) : Rat(pp);
        if (minval != 0)
            for (auto& x : m.a) x *= scale;
    }
    std::vector<long> pivval(n, 0);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        long bestv = 0;
        for (int j = i; j < n; ++j) {
            if (sgn(m.at(i, j)) == 0) continue;
            const long v = padic_valuation(m.at(i, j), p);
            if (best < 0 || v < bestv) { best = j; bestv = v; }
        }
        if (best < 0) throw Error("lattice_key: singular basis");
        if (best != i)
            for (int r = 0; r < n; ++r) std::swap(m.at(r, best), m.at(r, i));
        pivval[i] = bestv;
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(bestv));
        const Rat unit = m.at(i, i) / Rat(pe); // p-unit by construction
        for (int r = 0; r < n; ++r) m.at(r, i) /= unit;
        for (int j = i + 1; j < n; ++j) {
            if (sgn(m.at(i, j)) == 0) continue;
            const Rat factor = m.at(i, j) / m.at(i, i); // in Z_(p): val >= pivot val
            for (int r = 0; r < n; ++r) m.at(r, j) -= factor * m.at(r, i);
        }
    }
    // reduce entries left of each pivot into canonical residues mod p^{e_i}
    const auto residue = [&p](const Rat& x, const Int& pe) {
        if (pe == 1) return Int(0);
        Int den_inv;
        Int den = x.get_den() % pe;
        mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), pe.get_mpz_t());
        Int res = ((x.get_num() % pe) * den_inv) % pe;
        if (res < 0) res += pe;
        return res;
    };
    std::string key;
    for (int i = 0; i < n; ++i) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(pivval[i]));
        key += "^" + std::to_string(pivval[i]) + ":";
        for (int j = 0; j < i; ++j) {
            const Int res = residue(m.at(i, j), pe);
            const Rat q = (m.at(i, j) - Rat(res)) / Rat(pe); // in Z_(p)
            for (int r = i; r < n; ++r) m.at(r, j) -= q * m.at(r, i);
            key += res.get_str() + ",";
        }
        key += ";";
    }
    return key;
}

struct ModelEval {
    bool residually_semistable = false;
    Rat value_ratio; ///< v_p(s) / (d m_z); term = ratio * log p
    std::vector<detail::FieldWitness<PrimeField>> violations;
};

ModelEval evaluate_model(const PrimeField& f, const Configuration& config,
                         const InvariantSection& section, const RatMat& lattice) {
    const auto raw = config_vectors(config);
    std::vector<RatVec> transformed = solve_columns(lattice, raw);
    if (transformed.size() != raw.size()) throw Error("nonarch: singular lattice basis");
    for (auto& v : transformed) v = p_primitive(v, f.p);

    ModelEval ev;
    const long val = section.valuation_at(transformed, f.p);
    ev.value_ratio = Rat(val) / (config.degree() * section.m_z);

    ResidualPoints rp = reduce_model(f, config.ambient(), transformed, config_mults(config));
    const Rat d = rp.pts.degree();
    const int n = config.dim_vectors();
    ev.residually_semistable = true;
    for (auto& w : detail::field_candidates(f, rp.pts)) {
        if (w.mass * n > d * w.dim) {
            ev.residually_semistable = false;
            ev.violations.push_back(std::move(w));
        }
    }
    return ev;
}

} // namespace

ResidualReduction residually_semistable(const Configuration& config, const Int& p) {
    const PrimeField f(p);
    ResidualPoints rp =
        reduce_model(f, config.ambient(), config_vectors(config), config_mults(config));
    const auto verdict = detail::field_check_stability(f, rp.pts);
    ResidualReduction out;
    out.semistable = verdict.status != Stability::Unstable;
    out.reduced_points = std::move(rp.reduced);
    return out;
}

LocalHeightInterval nonarch_local_height(const Configuration& config,
                                         const InvariantSection& section, const Int& p,
                                         int depth) {
    LocalHeightInterval out;
    out.archimedean = false;
    out.prime = p;

    if (config.is_unit_basis_model()) {
        out.certificate = LocalHeightInterval::Certificate::ExactDeterminant;
        return out; // a lattice basis change makes the model residually the identity
    }

    const PrimeField f(p);
    const double logp = std::log(to_double(Rat(p)));
    const int n = config.dim_vectors();

    struct Node {
        RatMat lattice;
        int depth;
    };
    std::deque<Node> frontier;
    std::set<std::string> visited;
    frontier.push_back({RatMat::identity(n), 0});
    visited.insert(lattice_key(frontier.front().lattice, p));

    bool have_upper = false;
    double best_upper = 0.0;
    while (!frontier.empty()) {
        Node node = std::move(frontier.front());
        frontier.pop_front();
        ModelEval ev = evaluate_model(f, config, section, node.lattice);
        const double value = to_double(ev.value_ratio) * logp;
        if (ev.residually_semistable) {
            // the infimum is attained at residually semistable models
            out.lower = out.upper = value;
            out.certificate = LocalHeightInterval::Certificate::ExactResidual;
            out.search_depth = node.depth;
            return out;
        }
        if (!have_upper || value < best_upper) {
            best_upper = value;
            have_upper = true;
        }
        if (node.depth >= depth) continue;
        for (const auto& viol : ev.violations) {
            // adjoin p^{-1} times a lift of the violating residual subspace
            RatMat move = RatMat::identity(n);
            for (int r = 0; r < viol.basis.dim(); ++r) {
                const int pc = viol.basis.pivots[r];
                for (int row = 0; row < n; ++row) {
                    move.at(row, pc) = Rat(viol.basis.rows[r][row], p);
                    move.at(row, pc).canonicalize();
                }
            }
            RatMat next(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Rat acc(0);
                    for (int k = 0; k < n; ++k) acc += node.lattice.at(i, k) * move.at(k, j);
                    next.at(i, j) = acc;
                }
            const std::string key = lattice_key(next, p);
            if (visited.insert(key).second) frontier.push_back({std::move(next), node.depth + 1});
        }
    }
    out.lower = 0.0;
    out.upper = have_upper ? best_upper : 0.0;
    out.certificate = LocalHeightInterval::Certificate::SearchDepth;
    out.search_depth = depth;
    return out;
}

namespace {

void factor_into(const Int& value, std::set<Int>& primes);

void pollard_rho(const Int& value, std::set<Int>& primes) {
    if (value == 1) return;
    if (mpz_probab_prime_p(value.get_mpz_t(), 30)) {
        primes.insert(value);
        return;
    }
    // Pollard rho with incrementing polynomial offset
    for (Int c(1);; ++c) {
        Int x(2), y(2), d(1);
        while (d == 1) {
            x = (x * x + c) % value;
            y = (y * y + c) % value;
            y = (y * y + c) % value;
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), value.get_mpz_t());
        }
        if (d != value) {
            factor_into(d, primes);
            factor_into(value / d, primes);
            return;
        }
    }
}

void factor_into(const Int& value, std::set<Int>& primes) {
    Int v = abs(value);
    if (v <= 1) return;
    for (Int q(2); q * q <= v && q < 100000; q == 2 ? q = 3 : q += 2) {
        if (v % q == 0) {
            primes.insert(q);
            while (v % q == 0) v /= q;
        }
    }
    if (v > 1) pollard_rho(v, primes);
}

} // namespace

std::vector<Int> bad_primes(const Configuration& config) {
    const int n = config.dim_vectors();
    const int l = config.distinct_count();
    std::set<Int> primes;
    if (l >= n) {
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        while (true) {
            std::vector<RatVec> cols;
            for (int i : idx) cols.push_back(config.point(i).vec);
            const Rat d = det(RatMat::from_columns(cols));
            if (sgn(d) != 0) factor_into(d.get_num(), primes); // canonical vectors are integral
            int k = n - 1;
            while (k >= 0 && idx[k] == l - n + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    // primes where two distinct directions collide: divisors of the gcd of
    // all 2x2 minors of the pair
    for (int i = 0; i < l; ++i) {
        for (int j = i + 1; j < l; ++j) {
            const RatVec& u = config.point(i).vec;
            const RatVec& w = config.point(j).vec;
            Int g(0);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    const Rat m = u[a] * w[b] - u[b] * w[a];
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_num().get_mpz_t());
                }
            factor_into(g, primes);
        }
    }
    return std::vector<Int>(primes.begin(), primes.end());
}

} // namespace githeight
