#include "githeight/kempf_ness.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "githeight/decompose.hpp"
#include "githeight/errors.hpp"
#include "githeight/linalg.hpp"
#include "githeight/section.hpp"
#include "githeight/stability.hpp"

namespace githeight {

namespace {

constexpr double kDivergenceFloor = -50.0;
constexpr double kEigenUnderflow = 1e-250;
constexpr double kDiameterGuess = 10.0;

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i) lam(i) = std::sqrt(std::max(lam(i), 0.0));
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd det_normalize(Eigen::MatrixXcd h) {
    const int n = static_cast<int>(h.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) logdet += std::log(std::max(es.eigenvalues()(i), 1e-300));
    return h * std::exp(-logdet / n);
}

struct FloatConfig {
    std::vector<Eigen::VectorXcd> unit; ///< unit-normalized directions
    std::vector<double> mults;
    double degree = 0.0;
    int n = 0;
};

FloatConfig float_of(const std::vector<Eigen::VectorXcd>& vecs, const std::vector<Rat>& mults) {
    FloatConfig fc;
    fc.n = static_cast<int>(vecs[0].size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        fc.unit.push_back(vecs[i] / vecs[i].norm());
        fc.mults.push_back(to_double(mults[i]));
        fc.degree += fc.mults.back();
    }
    return fc;
}

std::vector<Eigen::VectorXcd> complex_vectors(const Configuration& c) {
    std::vector<Eigen::VectorXcd> out;
    for (const auto& p : c.points()) {
        Eigen::VectorXcd v(c.dim_vectors());
        for (int j = 0; j < c.dim_vectors(); ++j) v(j) = to_double(p.vec[j]);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Rat> multiplicities(const Configuration& c) {
    std::vector<Rat> m;
    for (const auto& p : c.points()) m.push_back(p.mult);
    return m;
}

double value_at(const FloatConfig& fc, const Eigen::MatrixXcd& h) {
    double total = 0.0;
    for (std::size_t i = 0; i < fc.unit.size(); ++i) {
        // ratio of the same dot products, so H = I gives exactly 0
        const double q = std::real(fc.unit[i].dot(h * fc.unit[i])) /
                         std::real(fc.unit[i].dot(fc.unit[i]));
        total += fc.mults[i] * 0.5 * std::log(q);
    }
    return total / fc.degree;
}

Eigen::MatrixXcd weighted_projector_sum(const FloatConfig& fc, const Eigen::MatrixXcd& h) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(fc.n, fc.n);
    for (std::size_t i = 0; i < fc.unit.size(); ++i) {
        const double q = std::real(fc.unit[i].dot(h * fc.unit[i]));
        s += (fc.mults[i] / q) * (fc.unit[i] * fc.unit[i].adjoint());
    }
    return s;
}

double moment_residual(const FloatConfig& fc, const Eigen::MatrixXcd& h) {
    const Eigen::MatrixXcd w = hermitian_sqrt(h);
    const Eigen::MatrixXcd m =
        (static_cast<double>(fc.n) / fc.degree) * (w * weighted_projector_sum(fc, h) * w);
    return (m - Eigen::MatrixXcd::Identity(fc.n, fc.n)).norm();
}

// Closed-form minimizer for n independent multiplicity-one columns: any H
// mapping the columns to orthogonal vectors attains the Hadamard bound.
KNResult square_model_minimizer(const FloatConfig& fc) {
    const int n = fc.n;
    Eigen::MatrixXcd m(n, n);
    for (int c = 0; c < n; ++c) m.col(c) = fc.unit[c];
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::VectorXd d2(n);
    for (int i = 0; i < n; ++i) d2(i) = std::norm(r(i, i));
    const Eigen::MatrixXcd minv = m.inverse();
    Eigen::MatrixXcd h = minv.adjoint() * d2.asDiagonal() * minv;
    h = det_normalize(0.5 * (h + h.adjoint()));
    KNResult res;
    res.scaling = HermitianScaling{h};
    res.value = value_at(fc, h);
    res.residual = moment_residual(fc, h);
    res.status = KNStatus::Converged;
    res.iterations = 0;
    return res;
}

KNResult fixed_point(const FloatConfig& fc, double tol, int max_iter) {
    const int n = fc.n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(n, n);
    double value = value_at(fc, h);
    KNResult res;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const Eigen::MatrixXcd s = weighted_projector_sum(fc, h);
        Eigen::MatrixXcd next = (static_cast<double>(n) / fc.degree * s).inverse();
        next = det_normalize(0.5 * (next + next.adjoint()));
        double next_value = value_at(fc, next);
        // majorize-minimize step never increases the value; damp only on
        // floating-point noise
        int damp = 0;
        while (next_value > value + 1e-12 && damp < 40) {
            next = det_normalize(0.5 * (h + next));
            next_value = value_at(fc, next);
            ++damp;
        }
        h = next;
        value = next_value;
        const double residual = moment_residual(fc, h);
        res.scaling = HermitianScaling{h};
        res.value = value;
        res.residual = residual;
        res.iterations = iter;
        if (residual < tol) {
            res.status = KNStatus::Converged;
            return res;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        if (value < kDivergenceFloor || es.eigenvalues()(0) < kEigenUnderflow) {
            res.status = KNStatus::DivergentUnstable;
            return res;
        }
    }
    res.status = KNStatus::MaxIter;
    return res;
}

bool spans_ambient(const Configuration& c) {
    std::vector<RatVec> cols;
    for (const auto& p : c.points()) cols.push_back(p.vec);
    return rank(RatMat::from_columns(cols)) == c.dim_vectors();
}

OrbitInfimum orbit_worker(const Configuration& c, const std::vector<Eigen::VectorXcd>& vecs,
                          double tol, int max_iter) {
    const int n = c.dim_vectors();
    if (n == 1) return {0.0, 0.0, "point", std::nullopt};

    const auto verdict = check_stability(c);
    if (verdict.status == Stability::Unstable) throw UnstableError(*verdict.witness);

    FloatConfig fc = float_of(vecs, multiplicities(c));

    if (c.is_unit_basis_model()) {
        Eigen::MatrixXcd m(n, n);
        for (int j = 0; j < n; ++j) m.col(j) = fc.unit[j];
        const double value = std::log(std::abs(m.determinant())) / n;
        OrbitInfimum oi;
        oi.value = value;
        oi.slack = 1e-12 * (1.0 + std::abs(value));
        oi.certificate = "hadamard-exact";
        oi.leaf = square_model_minimizer(fc);
        return oi;
    }

    if (verdict.status == Stability::Stable) {
        KNResult kn = fixed_point(fc, tol, max_iter);
        if (kn.status == KNStatus::DivergentUnstable)
            throw Error("kn_orbit_infimum: divergence on a stable configuration");
        OrbitInfimum oi;
        oi.value = kn.value;
        oi.slack = kn.residual * kDiameterGuess + 1e-12 * (1.0 + std::abs(kn.value));
        oi.certificate = kn.status == KNStatus::Converged ? "kempf-ness" : "kempf-ness-maxiter";
        oi.leaf = std::move(kn);
        return oi;
    }

    // Strictly semistable: degenerate along a tight subspace. The infimum
    // splits as the weighted infima of the restriction and the quotient in
    // orthogonal realization plus the projection-angle term: block-diagonal
    // scalings dominate by Fischer's inequality and the determinant
    // constraint decouples because the subspace is tight.
    const auto tight = find_tight_subspace(c);
    if (!tight) throw Error("kn_orbit_infimum: strictly semistable without tight subspace");
    const int k = tight->dim;

    Eigen::MatrixXcd span(n, k);
    for (int j = 0; j < k; ++j) span.col(j) = vecs[tight->span_points[j]];
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
    const Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd qw = q.leftCols(k);
    const Eigen::MatrixXcd qp = q.rightCols(n - k);

    RestrictedConfig inside = restrict_to(c, *tight);
    QuotientConfig quot = quotient_by(c, *tight);

    std::vector<Eigen::VectorXcd> in_vecs(inside.config.distinct_count());
    for (int i = 0; i < inside.config.distinct_count(); ++i)
        in_vecs[i] = qw.adjoint() * vecs[inside.parent_index[i]];

    std::vector<Eigen::VectorXcd> out_vecs(quot.config.distinct_count());
    for (int i = 0; i < quot.config.distinct_count(); ++i)
        out_vecs[i] = qp.adjoint() * vecs[quot.preimages[i][0]];

    double angle = 0.0;
    const double d = to_double(c.degree());
    for (int i = 0; i < quot.config.distinct_count(); ++i)
        for (int parent : quot.preimages[i])
            angle += to_double(c.point(parent).mult) *
                     std::log((qp.adjoint() * vecs[parent]).norm() / vecs[parent].norm());
    angle /= d;

    const OrbitInfimum in_res = orbit_worker(inside.config, in_vecs, tol, max_iter);
    const OrbitInfimum out_res = orbit_worker(quot.config, out_vecs, tol, max_iter);

    OrbitInfimum oi;
    const double wk = static_cast<double>(k) / n;
    oi.value = wk * in_res.value + (1.0 - wk) * out_res.value + angle;
    oi.slack = wk * in_res.slack + (1.0 - wk) * out_res.slack + 1e-12 * (1.0 + std::abs(oi.value));
    oi.certificate = "tight-split(" + in_res.certificate + "," + out_res.certificate + ")";
    return oi;
}

} // namespace

HermitianScaling HermitianScaling::from_matrix(Eigen::MatrixXcd h) {
    if (h.rows() != h.cols()) throw Error("HermitianScaling: not square");
    if ((h - h.adjoint()).norm() > 1e-12 * (1.0 + h.norm()))
        throw Error("HermitianScaling: not Hermitian");
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.eigenvalues()(0) <= 0.0) throw Error("HermitianScaling: not positive definite");
    return HermitianScaling{det_normalize(h)};
}

Eigen::MatrixXcd HermitianScaling::sqrt() const { return hermitian_sqrt(H); }

std::string to_string(KNStatus s) {
    switch (s) {
        case KNStatus::Converged: return "Converged";
        case KNStatus::DivergentUnstable: return "DivergentUnstable";
        case KNStatus::MaxIter: return "MaxIter";
    }
    return "?";
}

double kn_value(const Configuration& config, const HermitianScaling& scaling) {
    FloatConfig fc = float_of(complex_vectors(config), multiplicities(config));
    return value_at(fc, scaling.H);
}

KNResult kn_minimize(const Configuration& config, double tol, int max_iter) {
    const int n = config.dim_vectors();
    if (!spans_ambient(config)) {
        KNResult res;
        res.scaling = HermitianScaling::identity(n);
        res.value = -std::numeric_limits<double>::infinity();
        res.residual = std::numeric_limits<double>::infinity();
        res.status = KNStatus::DivergentUnstable;
        return res;
    }
    FloatConfig fc = float_of(complex_vectors(config), multiplicities(config));
    if (config.is_unit_basis_model()) return square_model_minimizer(fc);
    return fixed_point(fc, tol, max_iter);
}

OrbitInfimum kn_orbit_infimum(const Configuration& config, double tol, int max_iter) {
    return orbit_worker(config, complex_vectors(config), tol, max_iter);
}

ArchLocalHeight arch_local_height(const Configuration& config, const InvariantSection& section,
                                  double tol, int max_iter) {
    const auto verdict = check_stability(config);
    if (verdict.status == Stability::Unstable) throw UnstableError(*verdict.witness);

    if (config.is_unit_basis_model()) {
        // infimum (1/n) log|det M| and section constant -(1/n) log|det M|
        // cancel identically
        ArchLocalHeight out;
        out.certificate = "base-case-exact";
        out.kn = kn_minimize(config, tol, max_iter);
        return out;
    }

    OrbitInfimum oi = kn_orbit_infimum(config, tol, max_iter);
    const double cs = -section.log_abs_at_unit_model(config) /
                      (to_double(config.degree()) * static_cast<double>(section.m_z));
    ArchLocalHeight out;
    out.upper = oi.value + cs;
    out.lower = out.upper - oi.slack;
    out.certificate = oi.certificate;
    out.kn = std::move(oi.leaf);
    return out;
}

} // namespace githeight
