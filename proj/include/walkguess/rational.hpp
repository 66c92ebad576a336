#pragma once

/// @file rational.hpp
/// Exact arbitrary-precision integers and rationals (GMP-backed) plus the
/// canonical string forms used throughout the library: integers as decimal
/// digits, rationals as "p/q" with q > 1 suppressed when q = 1.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "errors.hpp"

namespace walkguess::exact {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& z) { return z.get_str(); }

/// Canonical text: "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p" or "p/q" (optional sign, q > 0 after canonicalization).
inline Rat rat_from_string(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational", 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' ||
                  ((c == '-' || c == '+') && (i == 0 || text[i - 1] == '/'));
        if (!ok) throw parse_error("bad character '" + std::string(1, c) + "' in rational", i);
    }
    Rat q;
    // mpq accepts a leading '-' but not '+'
    const std::string body = text[0] == '+' ? text.substr(1) : text;
    if (body.empty() || q.set_str(body, 10) != 0)
        throw parse_error("malformed rational '" + text + "'", 0);
    if (q.get_den() == 0) throw parse_error("zero denominator in '" + text + "'", 0);
    q.canonicalize();
    return q;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// gcd of the absolute values of all entries; 0 for an all-zero vector.
inline Int content(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// Scales a rational vector to integers (clearing denominators), divides by
/// the content, and fixes the sign so the first nonzero entry is positive.
/// The zero vector maps to itself.
inline std::vector<Int> canonical_integer_vector(const std::vector<Rat>& v) {
    Int den = 1;
    for (const Rat& q : v) den = lcm(den, q.get_den());
    std::vector<Int> w;
    w.reserve(v.size());
    for (const Rat& q : v) w.push_back(q.get_num() * (den / q.get_den()));
    Int g = content(w);
    if (g == 0) return w;
    int sign = 1;
    for (const Int& x : w)
        if (x != 0) {
            sign = (x < 0) ? -1 : 1;
            break;
        }
    for (Int& x : w) {
        x /= g;
        if (sign < 0) x = -x;
    }
    return w;
}

} // namespace walkguess::exact
