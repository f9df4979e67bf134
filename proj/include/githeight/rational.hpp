#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace githeight {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;

/// Parses "p", "-p" or "p/q" with nonzero q. Throws ParseError otherwise.
Rat parse_rational(const std::string& text, const std::string& field = "rational");

std::string rat_string(const Rat& q);

/// H_n = 1 + 1/2 + ... + 1/n as an exact rational (H_0 = 0).
Rat harmonic(int n);

bool is_zero_vec(const RatVec& v);

/// Scales to coprime integer entries with the first nonzero entry positive.
/// This is the canonical representative used for projective comparison,
/// merging and mod-p reduction.
RatVec canonical_primitive(const RatVec& v);

/// Lexicographic comparison, entrywise. Returns <0, 0, >0.
int compare_vec(const RatVec& a, const RatVec& b);

/// p-adic valuation. `q` must be nonzero.
long padic_valuation(const Rat& q, const Int& p);

double to_double(const Rat& q);

} // namespace githeight
