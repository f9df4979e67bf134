#pragma once

#include <vector>

#include "githeight/chow.hpp"
#include "githeight/heights.hpp"
#include "githeight/mc.hpp"

namespace githeight {

/// Chow form of the dual hyperplane arrangement: substitutes the wedge
/// coordinates (signed maximal minors of the N block vectors) into a
/// zero-cycle form, giving a multidegree-(d,...,d) form in N blocks.
/// For N=1 the wedge is rotation by the fixed sign convention, so the dual
/// form is the input up to sign and variable swap.
ChowForm dual_chow_form(const ChowForm& form);
CChowForm dual_chow_form(const CChowForm& form);

/// Wedge of N vectors in C^{N+1}: the vector w with det[u_1,...,u_N,v] =
/// <w, v> under the fixed lexicographic generator.
std::vector<std::complex<double>> wedge_vector(
    const std::vector<std::vector<std::complex<double>>>& vectors);

/// Height shift of dualization:
///   C'(N) = (1/2)(N-1) H_N + E[log |u_1 ^ ... ^ u_N|]
///         = (1/2) sum_{m=1}^{N-1} H_m,
/// exact harmonic closed form validated by the Monte Carlo wedge integral.
struct DualConstant {
    int N = 1;
    Rat closed_form;
    MCEstimate mc_check; ///< estimate of the same quantity
};

DualConstant dual_constant(int N, long samples, unsigned long long seed);

/// Exact rational closed form (1/2) sum_{m=1}^{N-1} H_m.
Rat dual_constant_closed_form(int N);

/// Verifies the metric identity behind the duality height shift: for random
/// determinant-1 matrices g, the difference of the two Chow log-norms under
/// matched evaluation sections equals -d C'(N) within Monte Carlo error.
struct MetricShiftReport {
    bool pass = false;
    double expected = 0.0; ///< -d C'(N)
    std::vector<double> diffs;
    std::vector<double> tolerances; ///< 4x combined stderr per sample
    int section_resamples = 0;
};

MetricShiftReport metric_shift_check(const Configuration& config, int g_samples,
                                     long mc_samples, unsigned long long seed);

/// Global height of the dual hyperplane arrangement: the zero-cycle height
/// shifted by C'(N) at the archimedean place (neutral for N=1).
HeightEstimate hyperplane_height(const Configuration& config, const HeightOptions& options = {});

} // namespace githeight
