#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>

#include "githeight/configuration.hpp"

namespace githeight {

/// Determinant-1 positive-definite Hermitian matrix, representing the orbit
/// point A^H A of some A in SL(N+1, C). Only this product enters the orbit
/// functional, so the unitary part of A is never stored.
struct HermitianScaling {
    Eigen::MatrixXcd H;

    static HermitianScaling identity(int n) {
        return HermitianScaling{Eigen::MatrixXcd::Identity(n, n)};
    }
    /// Renormalizes det to 1 and validates Hermitian positive-definiteness.
    static HermitianScaling from_matrix(Eigen::MatrixXcd h);

    Eigen::MatrixXcd sqrt() const;
    int dim() const { return static_cast<int>(H.rows()); }
};

enum class KNStatus { Converged, DivergentUnstable, MaxIter };

std::string to_string(KNStatus s);

struct KNResult {
    HermitianScaling scaling;
    double value = 0.0;    ///< orbit functional at `scaling`
    double residual = 0.0; ///< Frobenius deviation of the moment condition
    KNStatus status = KNStatus::MaxIter;
    int iterations = 0;
};

/// Normalized orbit functional
///   (1/d) sum_i m_i (1/2) log(v_i^H H v_i / v_i^H v_i),
/// which is 0 at H = I and whose infimum over det-1 scalings is the
/// archimedean orbit minimum of the configuration.
double kn_value(const Configuration& config, const HermitianScaling& scaling);

/// Fixed-point (majorize-minimize) minimization of kn_value. The balanced
/// condition is sum_i m_i w_i w_i^H / |w_i|^2 = (d/(N+1)) I for
/// w_i = H^{1/2} v_i. Monotone descent; converges for stable
/// configurations; declares DivergentUnstable when the value crosses -50 or
/// the scaling degenerates. Full-rank multiplicity-one square models use a
/// closed-form orthogonalizing minimizer.
KNResult kn_minimize(const Configuration& config, double tol = 1e-10, int max_iter = 20000);

/// Certified-in-practice bracket of the orbit infimum.
struct OrbitInfimum {
    double value = 0.0; ///< upper bound (value attained at the final scaling)
    double slack = 0.0; ///< conservative gap estimate; infimum >= value-slack
    std::string certificate;
    std::optional<KNResult> leaf; ///< minimizer when one exists (stable leaf)
};

/// Orbit infimum of kn_value. Stable configurations use the fixed point
/// directly. Strictly semistable ones degenerate along their tight
/// subspace: the infimum equals the weighted infima of the restriction and
/// quotient (realized orthogonally) plus an explicit angle term, and the
/// recursion bottoms out in stable or one-dimensional pieces. Unstable
/// input throws UnstableError.
OrbitInfimum kn_orbit_infimum(const Configuration& config, double tol = 1e-10,
                              int max_iter = 20000);

struct InvariantSection;

/// Archimedean local height interval: orbit infimum plus the section
/// constant -log|s| / (d m_z) on the unit-normalized model. Exactly zero
/// (both endpoints) for invertible square models, where the Hadamard bound
/// and the squared-determinant section cancel.
struct ArchLocalHeight {
    double lower = 0.0;
    double upper = 0.0;
    std::string certificate;
    std::optional<KNResult> kn;
};

ArchLocalHeight arch_local_height(const Configuration& config, const InvariantSection& section,
                                  double tol, int max_iter = 20000);

} // namespace githeight
