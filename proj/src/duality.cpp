#include "githeight/duality.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "githeight/errors.hpp"

namespace githeight {

namespace {

// determinant of a square matrix of polynomial entries by cofactor
// expansion; entry(r, c) returns the polynomial for row r, column c
template <class C, class EntryFn>
BasicChowForm<C> poly_det(int size, int blocks, int nvars, const EntryFn& entry,
                          std::vector<int> rows, std::vector<int> cols) {
    if (size == 1) return entry(rows[0], cols[0]);
    BasicChowForm<C> acc;
    acc.blocks = blocks;
    acc.nvars = nvars;
    acc.degree = 0;
    bool first = true;
    for (int k = 0; k < size; ++k) {
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols;
        for (int c = 0; c < size; ++c)
            if (c != k) sub_cols.push_back(cols[c]);
        BasicChowForm<C> minor =
            poly_det<C>(size - 1, blocks, nvars, entry, sub_rows, sub_cols);
        BasicChowForm<C> term = multiply_forms(entry(rows[0], cols[k]), minor);
        const C sign = (k % 2 == 0) ? C(1) : C(-1);
        for (auto& [e, coef] : term.coeffs) {
            auto it = acc.coeffs.find(e);
            const C add = sign * coef;
            if (it == acc.coeffs.end()) {
                acc.coeffs.emplace(e, add);
            } else {
                it->second += add;
                if (it->second == C(0)) acc.coeffs.erase(it);
            }
        }
        if (first) {
            acc.degree = term.degree;
            first = false;
        }
    }
    return acc;
}

// wedge coordinate W_j as a multilinear polynomial in N blocks of N+1
// variables: (-1)^{N+j} times the maximal minor omitting variable row j
template <class C>
BasicChowForm<C> wedge_coordinate(int bigN, int j) {
    const int nvars = bigN + 1;
    const auto entry = [&](int row, int block) {
        BasicChowForm<C> f;
        f.blocks = bigN;
        f.nvars = nvars;
        f.degree = 1;
        std::vector<int> e(static_cast<std::size_t>(bigN) * nvars, 0);
        e[static_cast<std::size_t>(block) * nvars + row] = 1;
        f.coeffs.emplace(std::move(e), C(1));
        return f;
    };
    std::vector<int> rows;
    for (int r = 0; r <= bigN; ++r)
        if (r != j) rows.push_back(r);
    std::vector<int> cols;
    for (int c = 0; c < bigN; ++c) cols.push_back(c);
    BasicChowForm<C> det = poly_det<C>(bigN, bigN, nvars, entry, rows, cols);
    if ((bigN + j) % 2 != 0)
        for (auto& [e, coef] : det.coeffs) coef = -coef;
    return det;
}

template <class C>
BasicChowForm<C> dual_form_impl(const BasicChowForm<C>& form) {
    if (form.blocks != 1) throw Error("dual_chow_form: input must be a zero-cycle form");
    const int bigN = form.nvars - 1;
    if (bigN < 1) throw Error("dual_chow_form: ambient dimension must be >= 1");

    std::vector<std::vector<BasicChowForm<C>>> powers(form.nvars);
    std::vector<BasicChowForm<C>> wedge_coords(form.nvars);
    for (int j = 0; j < form.nvars; ++j) {
        BasicChowForm<C> one;
        one.blocks = bigN;
        one.nvars = form.nvars;
        one.degree = 0;
        one.coeffs.emplace(std::vector<int>(static_cast<std::size_t>(bigN) * form.nvars, 0), C(1));
        powers[j].push_back(std::move(one));
        wedge_coords[j] = wedge_coordinate<C>(bigN, j);
    }
    const auto power = [&](int j, int k) -> const BasicChowForm<C>& {
        while (static_cast<int>(powers[j].size()) <= k)
            powers[j].push_back(multiply_forms(powers[j].back(), wedge_coords[j]));
        return powers[j][k];
    };

    BasicChowForm<C> out;
    out.blocks = bigN;
    out.nvars = form.nvars;
    out.degree = form.degree;
    for (const auto& [alpha, coef] : form.coeffs) {
        BasicChowForm<C> term;
        term.blocks = bigN;
        term.nvars = form.nvars;
        term.degree = 0;
        term.coeffs.emplace(std::vector<int>(static_cast<std::size_t>(bigN) * form.nvars, 0),
                            C(1));
        for (int j = 0; j < form.nvars; ++j)
            if (alpha[j] > 0) term = multiply_forms(term, power(j, alpha[j]));
        for (const auto& [e, c2] : term.coeffs) {
            auto it = out.coeffs.find(e);
            const C add = coef * c2;
            if (it == out.coeffs.end()) {
                out.coeffs.emplace(e, add);
            } else {
                it->second += add;
                if (it->second == C(0)) out.coeffs.erase(it);
            }
        }
    }
    return out;
}

} // namespace

ChowForm dual_chow_form(const ChowForm& form) { return dual_form_impl<Rat>(form); }
CChowForm dual_chow_form(const CChowForm& form) {
    return dual_form_impl<std::complex<double>>(form);
}

std::vector<std::complex<double>> wedge_vector(
    const std::vector<std::vector<std::complex<double>>>& vectors) {
    const int bigN = static_cast<int>(vectors.size());
    const int n = bigN + 1;
    std::vector<std::complex<double>> w(n);
    Eigen::MatrixXcd m(bigN, bigN);
    for (int j = 0; j < n; ++j) {
        int rr = 0;
        for (int r = 0; r < n; ++r) {
            if (r == j) continue;
            for (int c = 0; c < bigN; ++c) m(rr, c) = vectors[c][r];
            ++rr;
        }
        const std::complex<double> minor = bigN == 0 ? 1.0 : m.determinant();
        w[j] = (((bigN + j) % 2 == 0) ? 1.0 : -1.0) * minor;
    }
    return w;
}

Rat dual_constant_closed_form(int N) {
    Rat c(0);
    for (int m = 1; m < N; ++m) c += harmonic(m);
    return c / 2;
}

DualConstant dual_constant(int N, long samples, unsigned long long seed) {
    if (N < 1) throw Error("dual_constant: N must be >= 1");
    DualConstant out;
    out.N = N;
    out.closed_form = dual_constant_closed_form(N);

    Rng rng(seed);
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    double mean = 0.0, m2 = 0.0;
    Eigen::MatrixXcd gram(N, N);
    for (long i = 0; i < samples; ++i) {
        double logw = 0.0;
        while (true) {
            std::vector<std::vector<std::complex<double>>> u(N);
            for (int k = 0; k < N; ++k) u[k] = sphere_sample(N + 1, rng);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    std::complex<double> dot(0.0);
                    for (int j = 0; j <= N; ++j) dot += u[a][j] * std::conj(u[b][j]);
                    gram(a, b) = dot;
                }
            const double det = std::abs(gram.determinant());
            if (det >= 1e-300) {
                logw = 0.5 * std::log(det);
                break;
            }
            ++est.resampled;
        }
        const double delta = logw - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (logw - mean);
    }
    est.stderr_ = samples > 1 ? std::sqrt(m2 / (static_cast<double>(samples) - 1.0) /
                                          static_cast<double>(samples))
                              : 0.0;
    const double hn = to_double(harmonic(N));
    est.mean = 0.5 * (N - 1) * hn + mean;
    out.mc_check = est;
    return out;
}

MetricShiftReport metric_shift_check(const Configuration& config, int g_samples,
                                     long mc_samples, unsigned long long seed) {
    const int n = config.dim_vectors();
    const int bigN = config.ambient();
    if (bigN < 1) throw Error("metric_shift_check: ambient must be >= 1");
    const double d = to_double(config.degree());

    std::vector<std::vector<std::complex<double>>> base_vecs;
    std::vector<long> mults;
    for (const auto& p : config.points()) {
        if (p.mult.get_den() != 1)
            throw Error("metric_shift_check: integer multiplicities required");
        std::vector<std::complex<double>> v(n);
        for (int j = 0; j < n; ++j) v[j] = to_double(p.vec[j]);
        base_vecs.push_back(std::move(v));
        mults.push_back(p.mult.get_num().get_si());
    }

    MetricShiftReport rep;
    rep.expected = -d * to_double(dual_constant_closed_form(bigN));

    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double hn = 0.0;
    for (int j = 1; j <= bigN; ++j) hn += 1.0 / j;

    // fixed unit vectors for the matched evaluation sections
    std::vector<std::vector<std::complex<double>>> u;
    const auto draw_sections = [&]() {
        while (true) {
            u.clear();
            for (int k = 0; k < bigN; ++k) u.push_back(sphere_sample(n, rng));
            std::vector<std::complex<double>> w = wedge_vector(u);
            double norm = 0.0;
            for (const auto& x : w) norm += std::norm(x);
            if (std::sqrt(norm) > 1e-6) return;
            ++rep.section_resamples;
        }
    };
    draw_sections();

    rep.pass = true;
    for (int gs = 0; gs < g_samples; ++gs) {
        Eigen::MatrixXcd g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
        const std::complex<double> detg = g.determinant();
        g /= std::pow(detg, 1.0 / n);

        std::vector<std::vector<std::complex<double>>> tv(base_vecs.size());
        for (std::size_t i = 0; i < base_vecs.size(); ++i) {
            tv[i].assign(n, 0.0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) tv[i][r] += g(r, c) * base_vecs[i][c];
        }

        const CChowForm primal = chow_form_of_complex_points(tv, mults);
        const CChowForm dual = dual_chow_form(primal);
        const CompiledForm cp = compile_form(primal);
        const CompiledForm cd = compile_form(dual);

        // matched sections: evaluating the dual form on the fixed vectors
        // equals evaluating the primal form on their wedge
        std::vector<std::complex<double>> wedge = wedge_vector(u);
        const std::complex<double> s_primal = cp.eval(wedge);
        std::vector<std::complex<double>> flat;
        for (const auto& uk : u) flat.insert(flat.end(), uk.begin(), uk.end());
        const std::complex<double> s_dual = cd.eval(flat);
        if (std::abs(s_primal) < 1e-12) {
            ++rep.section_resamples;
            draw_sections();
            --gs;
            continue;
        }
        if (std::abs(s_dual - s_primal) > 1e-6 * (1.0 + std::abs(s_primal)))
            throw Error("metric_shift_check: matched sections disagree");

        const MCEstimate ip = chow_integral_mc(cp, mc_samples, seed + 1000 + 2 * gs);
        const MCEstimate id = chow_integral_mc(cd, mc_samples, seed + 1001 + 2 * gs);
        // log|s| terms cancel exactly for matched sections
        const double diff = -0.5 * d * (bigN - 1) * hn - id.mean + ip.mean;
        const double tol = 4.0 * std::sqrt(ip.stderr_ * ip.stderr_ + id.stderr_ * id.stderr_);
        rep.diffs.push_back(diff);
        rep.tolerances.push_back(tol);
        if (std::abs(diff - rep.expected) > tol) rep.pass = false;
    }
    return rep;
}

HeightEstimate hyperplane_height(const Configuration& config, const HeightOptions& options) {
    HeightEstimate est = global_height(config, options);
    const double shift = to_double(dual_constant_closed_form(config.ambient()));
    est.lower += shift;
    est.upper += shift;
    est.places.front().lower += shift;
    est.places.front().upper += shift;
    est.places.front().note += " (dualized: shifted by C'=" + std::to_string(shift) + ")";
    est.section_note += "; dual arrangement height = zero-cycle height + C'(N)";
    return est;
}

} // namespace githeight
