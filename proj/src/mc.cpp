#include "githeight/mc.hpp"

#include <cmath>

#include "githeight/errors.hpp"

namespace githeight {

std::vector<std::complex<double>> sphere_sample(int dim, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> v(dim);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            v[i] = {gauss(rng), gauss(rng)};
            norm2 += std::norm(v[i]);
        }
    } while (norm2 < 1e-280);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

MCEstimate chow_integral_mc(const CompiledForm& form, long samples, unsigned long long seed) {
    if (form.exps.empty()) throw Error("chow_integral_mc: zero form");
    if (samples <= 0) throw Error("chow_integral_mc: need samples > 0");
    Rng rng(seed);
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    double mean = 0.0, m2 = 0.0;
    std::vector<std::complex<double>> point(form.nvariables());
    for (long i = 0; i < samples; ++i) {
        double logval = 0.0;
        while (true) {
            for (int b = 0; b < form.blocks; ++b) {
                const auto s = sphere_sample(form.nvars, rng);
                std::copy(s.begin(), s.end(), point.begin() + static_cast<long>(b) * form.nvars);
            }
            const double a = std::abs(form.eval(point));
            if (a >= 1e-300) {
                logval = std::log(a);
                break;
            }
            ++est.resampled;
        }
        const double delta = logval - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (logval - mean);
    }
    est.mean = mean;
    est.stderr_ = samples > 1 ? std::sqrt(m2 / (static_cast<double>(samples) - 1.0) /
                                          static_cast<double>(samples))
                              : 0.0;
    return est;
}

ChowLogNorm chow_log_norm(const CompiledForm& form, std::complex<double> section_value,
                          long samples, unsigned long long seed) {
    if (std::abs(section_value) == 0.0) throw Error("chow_log_norm: section vanishes");
    ChowLogNorm out;
    out.integral = chow_integral_mc(form, samples, seed);
    const int bigN = form.nvars - 1;
    double hn = 0.0;
    for (int j = 1; j <= bigN; ++j) hn += 1.0 / j;
    out.value = std::log(std::abs(section_value)) -
                0.5 * form.degree * form.blocks * hn - out.integral.mean;
    out.stderr_ = out.integral.stderr_;
    return out;
}

double fubini_study_log_norm(const Configuration& config, std::complex<double> section_value) {
    if (std::abs(section_value) == 0.0) throw Error("fubini_study_log_norm: section vanishes");
    double total = std::log(std::abs(section_value));
    for (const auto& p : config.points()) {
        double norm2 = 0.0;
        for (const auto& x : p.vec) {
            const double c = to_double(x);
            norm2 += c * c;
        }
        total -= to_double(p.mult) * 0.5 * std::log(norm2);
    }
    return total;
}

} // namespace githeight
