#include "githeight/stability.hpp"

#include <sstream>

namespace githeight {

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::StrictlySemistable: return "StrictlySemistable";
        case Stability::Unstable: return "Unstable";
    }
    return "?";
}

std::string SubspaceWitness::describe() const {
    std::ostringstream os;
    os << "dim " << dim << " subspace of mass " << rat_string(mass) << ", basis {";
    for (std::size_t r = 0; r < basis.size(); ++r) {
        os << (r ? "; " : "") << "(";
        for (std::size_t j = 0; j < basis[r].size(); ++j)
            os << (j ? "," : "") << rat_string(basis[r][j]);
        os << ")";
    }
    os << "}";
    return os.str();
}

namespace detail {

FieldPoints<QField> rational_points(const Configuration& config) {
    FieldPoints<QField> pts;
    pts.ambient = config.ambient();
    for (const auto& p : config.points()) {
        pts.vecs.push_back(p.vec);
        pts.mults.push_back(p.mult);
    }
    return pts;
}

SubspaceWitness to_witness(const FieldWitness<QField>& w) {
    SubspaceWitness out;
    out.basis = w.basis.rows;
    out.dim = w.dim;
    out.mass = w.mass;
    out.span_points = w.span_points;
    return out;
}

} // namespace detail

Rat mass_in_subspace(const Configuration& config, const SubspaceWitness& w) {
    QField f;
    auto e = echelon_basis(f, w.basis);
    Rat mass(0);
    for (const auto& p : config.points())
        if (in_span(f, e, p.vec)) mass += p.mult;
    return mass;
}

std::vector<SubspaceWitness> candidate_subspaces(const Configuration& config) {
    QField f;
    std::vector<SubspaceWitness> out;
    for (const auto& w : detail::field_candidates(f, detail::rational_points(config)))
        out.push_back(detail::to_witness(w));
    return out;
}

StabilityVerdict check_stability(const Configuration& config) {
    QField f;
    auto fv = detail::field_check_stability(f, detail::rational_points(config));
    StabilityVerdict v;
    v.status = fv.status;
    if (fv.witness) v.witness = detail::to_witness(*fv.witness);
    return v;
}

} // namespace githeight
