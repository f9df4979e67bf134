#include "githeight/chow.hpp"

namespace githeight {

CChowForm to_complex(const ChowForm& f) {
    CChowForm out;
    out.blocks = f.blocks;
    out.nvars = f.nvars;
    out.degree = f.degree;
    for (const auto& [e, c] : f.coeffs) out.coeffs.emplace(e, std::complex<double>(to_double(c), 0.0));
    return out;
}

namespace {

template <class C>
BasicChowForm<C> constant_form(int nvars, const C& one) {
    BasicChowForm<C> f;
    f.blocks = 1;
    f.nvars = nvars;
    f.degree = 0;
    f.coeffs.emplace(std::vector<int>(nvars, 0), one);
    return f;
}

template <class C, class Coef>
BasicChowForm<C> linear_form(const std::vector<Coef>& v) {
    BasicChowForm<C> f;
    f.blocks = 1;
    f.nvars = static_cast<int>(v.size());
    f.degree = 1;
    for (int j = 0; j < f.nvars; ++j) {
        if (v[j] == Coef(0)) continue;
        std::vector<int> e(f.nvars, 0);
        e[j] = 1;
        f.coeffs.emplace(std::move(e), C(v[j]));
    }
    return f;
}

} // namespace

ChowForm chow_form_of_points(const Configuration& config) {
    ChowForm acc = constant_form<Rat>(config.dim_vectors(), Rat(1));
    for (const auto& p : config.points()) {
        if (p.mult.get_den() != 1)
            throw Error("chow_form_of_points: non-integer multiplicity " + rat_string(p.mult));
        const long m = p.mult.get_num().get_si();
        const ChowForm lin = linear_form<Rat>(p.vec);
        for (long k = 0; k < m; ++k) acc = multiply_forms(acc, lin);
    }
    return acc;
}

CChowForm chow_form_of_complex_points(const std::vector<std::vector<std::complex<double>>>& vecs,
                                      const std::vector<long>& mults) {
    if (vecs.empty()) throw Error("chow_form_of_complex_points: no points");
    CChowForm acc = constant_form<std::complex<double>>(static_cast<int>(vecs[0].size()),
                                                        std::complex<double>(1.0));
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        const CChowForm lin = linear_form<std::complex<double>>(vecs[i]);
        for (long k = 0; k < mults[i]; ++k) acc = multiply_forms(acc, lin);
    }
    return acc;
}

std::complex<double> CompiledForm::eval(const std::vector<std::complex<double>>& point) const {
    std::complex<double> total(0.0);
    for (std::size_t t = 0; t < exps.size(); ++t) {
        std::complex<double> term = coeffs[t];
        const auto& e = exps[t];
        for (std::size_t v = 0; v < e.size(); ++v) {
            for (int k = 0; k < e[v]; ++k) term *= point[v];
        }
        total += term;
    }
    return total;
}

CompiledForm compile_form(const CChowForm& f) {
    CompiledForm c;
    c.blocks = f.blocks;
    c.nvars = f.nvars;
    c.degree = f.degree;
    for (const auto& [e, coef] : f.coeffs) {
        c.exps.push_back(e);
        c.coeffs.push_back(coef);
    }
    return c;
}

CompiledForm compile_form(const ChowForm& f) { return compile_form(to_complex(f)); }

} // namespace githeight
