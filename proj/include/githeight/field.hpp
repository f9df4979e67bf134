#pragma once

#include <string>
#include <vector>

#include "githeight/rational.hpp"

namespace githeight {

/// Field of rationals, for exact elimination.
struct QField {
    using Elem = Rat;
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    bool is_zero(const Elem& x) const { return sgn(x) == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return rat_string(a); }
};

/// Prime field F_p with elements stored as integers in [0, p).
struct PrimeField {
    Int p;
    using Elem = Int;
    explicit PrimeField(Int prime) : p(std::move(prime)) {}
    Elem norm(const Int& x) const {
        Int r = x % p;
        if (r < 0) r += p;
        return r;
    }
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    bool is_zero(const Elem& x) const { return x == 0; }
    Elem add(const Elem& a, const Elem& b) const { return norm(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return norm(a - b); }
    Elem mul(const Elem& a, const Elem& b) const { return norm(a * b); }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inverse(b)); }
    Elem neg(const Elem& a) const { return norm(-a); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem inverse(const Elem& a) const {
        Int inv;
        mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        return inv;
    }
    /// Reduces a p-integral rational (denominator prime to p).
    Elem reduce(const Rat& q) const {
        const Elem n = norm(q.get_num() % p);
        const Elem d = norm(q.get_den() % p);
        return div(n, d);
    }
    std::string str(const Elem& a) const { return a.get_str(); }
};

/// Reduced row echelon basis of a subspace; rows are the canonical basis,
/// pivots[i] is the column of the leading 1 of row i.
template <class F>
struct EchelonBasis {
    std::vector<std::vector<typename F::Elem>> rows;
    std::vector<int> pivots;
    int dim() const { return static_cast<int>(rows.size()); }
};

template <class F>
EchelonBasis<F> echelon_basis(const F& f, std::vector<std::vector<typename F::Elem>> vecs) {
    EchelonBasis<F> e;
    for (auto& v : vecs) {
        // reduce v against existing rows
        for (std::size_t r = 0; r < e.rows.size(); ++r) {
            const auto& c = v[e.pivots[r]];
            if (!f.is_zero(c)) {
                const auto factor = c;
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] = f.sub(v[j], f.mul(factor, e.rows[r][j]));
            }
        }
        int piv = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!f.is_zero(v[j])) { piv = static_cast<int>(j); break; }
        if (piv < 0) continue;
        const auto lead = v[piv];
        for (auto& x : v) x = f.div(x, lead);
        // back-substitute into existing rows
        for (std::size_t r = 0; r < e.rows.size(); ++r) {
            const auto c = e.rows[r][piv];
            if (!f.is_zero(c))
                for (std::size_t j = 0; j < v.size(); ++j)
                    e.rows[r][j] = f.sub(e.rows[r][j], f.mul(c, v[j]));
        }
        // insert keeping pivots sorted
        std::size_t pos = 0;
        while (pos < e.pivots.size() && e.pivots[pos] < piv) ++pos;
        e.rows.insert(e.rows.begin() + pos, std::move(v));
        e.pivots.insert(e.pivots.begin() + pos, piv);
    }
    return e;
}

/// Residue of v after eliminating all pivot coordinates; zero iff v lies in
/// the span.
template <class F>
std::vector<typename F::Elem> echelon_residue(const F& f, const EchelonBasis<F>& e,
                                              std::vector<typename F::Elem> v) {
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        const auto c = v[e.pivots[r]];
        if (!f.is_zero(c))
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = f.sub(v[j], f.mul(c, e.rows[r][j]));
    }
    return v;
}

template <class F>
bool in_span(const F& f, const EchelonBasis<F>& e, const std::vector<typename F::Elem>& v) {
    for (const auto& x : echelon_residue(f, e, v))
        if (!f.is_zero(x)) return false;
    return true;
}

template <class F>
std::string echelon_key(const F& f, const EchelonBasis<F>& e) {
    std::string key;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        key += std::to_string(e.pivots[r]);
        key += ':';
        for (const auto& x : e.rows[r]) {
            key += f.str(x);
            key += ',';
        }
        key += ';';
    }
    return key;
}

} // namespace githeight
