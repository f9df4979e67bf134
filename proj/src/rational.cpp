#include "githeight/rational.hpp"

#include <cctype>

#include "githeight/errors.hpp"

namespace githeight {

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rat parse_rational(const std::string& text, const std::string& field) {
    const auto slash = text.find('/');
    const std::string num_s = text.substr(0, slash);
    if (!valid_integer_token(num_s))
        throw ParseError(field, "'" + text + "' is not a rational");
    Int num(num_s, 10);
    Int den(1);
    if (slash != std::string::npos) {
        const std::string den_s = text.substr(slash + 1);
        if (!valid_integer_token(den_s))
            throw ParseError(field, "'" + text + "' is not a rational");
        den = Int(den_s, 10);
        if (den == 0) throw ParseError(field, "zero denominator in '" + text + "'");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string rat_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat harmonic(int n) {
    Rat h(0);
    for (int j = 1; j <= n; ++j) h += Rat(1, j);
    return h;
}

bool is_zero_vec(const RatVec& v) {
    for (const Rat& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

RatVec canonical_primitive(const RatVec& v) {
    Int den_lcm(1);
    for (const Rat& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    Int num_gcd(0);
    for (const Rat& x : v) {
        Int scaled = x.get_num() * (den_lcm / x.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (num_gcd == 0) return RatVec(v.size(), Rat(0));
    int lead = 0;
    for (const Rat& x : v) {
        if (sgn(x) != 0) { lead = sgn(x); break; }
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (lead < 0) scale = -scale;
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
    return out;
}

int compare_vec(const RatVec& a, const RatVec& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

long padic_valuation(const Rat& q, const Int& p) {
    Int tmp;
    const long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_num().get_mpz_t(), p.get_mpz_t()));
    const long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_den().get_mpz_t(), p.get_mpz_t()));
    return vn - vd;
}

double to_double(const Rat& q) { return q.get_d(); }

} // namespace githeight
