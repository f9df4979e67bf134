#include "githeight/section.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "githeight/decompose.hpp"
#include "githeight/errors.hpp"
#include "githeight/linalg.hpp"

namespace githeight {

InvariantSection InvariantSection::determinant(const Configuration& config) {
    if (!config.is_unit_basis_model())
        throw Error("InvariantSection::determinant: not an invertible square model");
    InvariantSection s;
    Bracket b;
    for (int i = 0; i < config.distinct_count(); ++i) b.points.push_back(i);
    b.exponent = 1;
    s.brackets.push_back(std::move(b));
    s.m_z = 2;
    return s;
}

InvariantSection InvariantSection::from_decomposition(const Configuration& config,
                                                      const BasisDecomposition& dec) {
    Int mu(1);
    for (const auto& t : dec.terms)
        mpz_lcm(mu.get_mpz_t(), mu.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    InvariantSection s;
    s.m_z = 2 * mu.get_si();
    for (const auto& t : dec.terms) {
        Bracket b;
        b.points = t.basis;
        const Rat e = t.coeff * mu;
        if (e.get_den() != 1) throw Error("section: non-integral bracket exponent");
        b.exponent = e.get_num().get_si();
        s.brackets.push_back(std::move(b));
    }
    (void)config;
    return s;
}

double InvariantSection::log_abs_at_unit_model(const Configuration& config) const {
    const int n = config.dim_vectors();
    std::vector<Eigen::VectorXd> unit(config.distinct_count());
    for (int i = 0; i < config.distinct_count(); ++i) {
        Eigen::VectorXd v(n);
        for (int j = 0; j < n; ++j) v(j) = to_double(config.point(i).vec[j]);
        unit[i] = v / v.norm();
    }
    double total = 0.0;
    for (const auto& b : brackets) {
        Eigen::MatrixXd m(n, n);
        for (int c = 0; c < n; ++c) m.col(c) = unit[b.points[c]];
        const double d = std::abs(m.determinant());
        if (d == 0.0) throw Error("section: singular bracket at unit model");
        total += 2.0 * static_cast<double>(b.exponent) * std::log(d);
    }
    return total;
}

long InvariantSection::valuation_at(const std::vector<RatVec>& model_vectors, const Int& p) const {
    long total = 0;
    for (const auto& b : brackets) {
        std::vector<RatVec> cols;
        for (int i : b.points) cols.push_back(model_vectors[i]);
        const Rat d = det(RatMat::from_columns(cols));
        if (sgn(d) == 0) throw Error("section: singular bracket in valuation");
        total += 2 * b.exponent * padic_valuation(d, p);
    }
    return total;
}

Rat InvariantSection::value_at(const std::vector<RatVec>& model_vectors) const {
    Rat total(1);
    for (const auto& b : brackets) {
        std::vector<RatVec> cols;
        for (int i : b.points) cols.push_back(model_vectors[i]);
        const Rat d = det(RatMat::from_columns(cols));
        for (long k = 0; k < 2 * b.exponent; ++k) total *= d;
    }
    return total;
}

} // namespace githeight
