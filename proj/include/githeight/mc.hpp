#pragma once

#include <complex>
#include <random>
#include <vector>

#include "githeight/chow.hpp"
#include "githeight/configuration.hpp"

namespace githeight {

struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
    unsigned long long seed = 0;
    long resampled = 0; ///< draws rejected for landing on the log singularity
};

using Rng = std::mt19937_64;

/// Uniform point on the unit sphere of C^dim (normalized standard complex
/// Gaussian). Deterministic for a given generator state.
std::vector<std::complex<double>> sphere_sample(int dim, Rng& rng);

/// Monte Carlo estimate of the sphere integral of log|form| over one unit
/// sphere per block (probability measure on each sphere). Samples with
/// |form| < 1e-300 are redrawn and counted.
MCEstimate chow_integral_mc(const CompiledForm& form, long samples, unsigned long long seed);

struct ChowLogNorm {
    double value = 0.0;
    double stderr_ = 0.0;
    MCEstimate integral;
};

/// log |s(z)| - (1/2) d (n+1) H_N - integral, the metric log-norm of a
/// section value at the cycle whose Chow coordinate is `form`. The harmonic
/// constant matches the probability normalization of the sphere measure.
ChowLogNorm chow_log_norm(const CompiledForm& form, std::complex<double> section_value,
                          long samples, unsigned long long seed);

/// Closed form the zero-cycle metric must reproduce:
/// log|s| - sum_i m_i (1/2) log(sum_j |v_{i,j}|^2) on the stored
/// representatives.
double fubini_study_log_norm(const Configuration& config, std::complex<double> section_value);

} // namespace githeight
