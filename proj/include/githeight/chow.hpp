#pragma once

#include <complex>
#include <map>
#include <vector>

#include "githeight/configuration.hpp"
#include "githeight/errors.hpp"

namespace githeight {

/// Multihomogeneous coefficient table of a Chow coordinate: `blocks` blocks
/// of `nvars` dual variables, every monomial of degree `degree` in each
/// block. Zero-cycles have one block; hyperplane arrangements in P^N have N.
/// Exponent keys are flattened block-major vectors of length blocks*nvars.
template <class C>
struct BasicChowForm {
    int blocks = 1;
    int nvars = 0;
    int degree = 0;
    std::map<std::vector<int>, C> coeffs;

    bool zero() const { return coeffs.empty(); }
    int nvariables() const { return blocks * nvars; }
};

using ChowForm = BasicChowForm<Rat>;
using CChowForm = BasicChowForm<std::complex<double>>;

template <class C>
BasicChowForm<C> multiply_forms(const BasicChowForm<C>& a, const BasicChowForm<C>& b) {
    if (a.blocks != b.blocks || a.nvars != b.nvars)
        throw Error("multiply_forms: shape mismatch");
    BasicChowForm<C> out;
    out.blocks = a.blocks;
    out.nvars = a.nvars;
    out.degree = a.degree + b.degree;
    for (const auto& [ea, ca] : a.coeffs) {
        for (const auto& [eb, cb] : b.coeffs) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto it = out.coeffs.find(e);
            if (it == out.coeffs.end()) {
                out.coeffs.emplace(std::move(e), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == C(0)) out.coeffs.erase(it);
            }
        }
    }
    return out;
}

CChowForm to_complex(const ChowForm& f);

/// Expanded product of the dual linear forms of the configuration's points:
/// prod_i (sum_j v_{i,j} x_j)^{m_i}, a degree-d form in N+1 variables.
/// Multiplicities must be integers (clear denominators upstream otherwise).
ChowForm chow_form_of_points(const Configuration& config);

/// As above but for externally transformed (complex) representatives.
CChowForm chow_form_of_complex_points(const std::vector<std::vector<std::complex<double>>>& vecs,
                                      const std::vector<long>& mults);

/// Flattened evaluation-friendly copy: one (exponents, coefficient) pair per
/// monomial.
struct CompiledForm {
    int blocks = 1;
    int nvars = 0;
    int degree = 0;
    std::vector<std::vector<int>> exps;
    std::vector<std::complex<double>> coeffs;

    int nvariables() const { return blocks * nvars; }
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;
};

CompiledForm compile_form(const CChowForm& f);
CompiledForm compile_form(const ChowForm& f);

} // namespace githeight
