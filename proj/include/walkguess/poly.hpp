#pragma once

/// @file poly.hpp
/// Dense univariate polynomials over the rationals, tagged with their
/// variable (n, t, x or y).  Canonical form stores no trailing zero
/// coefficients; the zero polynomial is the empty list.
///
/// The grouped text form used inside relation strings writes integer
/// polynomials in descending powers, e.g. "4*t^3-t", "-4*n-2", "7".

#include <string>
#include <vector>

#include "rational.hpp"

namespace walkguess::exact {

enum class Var : char { n = 'n', t = 't', x = 'x', y = 'y' };

inline char var_name(Var v) { return static_cast<char>(v); }

struct UniPoly {
    Var var = Var::t;
    std::vector<Rat> c; // c[k] = coefficient of var^k; no trailing zeros

    UniPoly() = default;
    explicit UniPoly(Var v) : var(v) {}
    UniPoly(Var v, std::vector<Rat> coeffs) : var(v), c(std::move(coeffs)) { trim(); }

    static UniPoly constant(Var v, const Rat& a) {
        UniPoly p(v);
        if (a != 0) p.c.push_back(a);
        return p;
    }
    /// The monomial coeff * var^k.
    static UniPoly monomial(Var v, const Rat& coeff, std::size_t k) {
        UniPoly p(v);
        if (coeff != 0) {
            p.c.assign(k + 1, Rat(0));
            p.c[k] = coeff;
        }
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const Rat& coeff(std::size_t k) const {
        static const Rat zero(0);
        return k < c.size() ? c[k] : zero;
    }
    const Rat& leading() const {
        static const Rat zero(0);
        return c.empty() ? zero : c.back();
    }

    bool operator==(const UniPoly& o) const { return var == o.var && c == o.c; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    Rat eval(const Rat& p) const {
        Rat acc(0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * p + c[k];
        return acc;
    }
    Int eval_int(const Int& p) const {
        // valid only when all coefficients are integers
        Int acc(0);
        for (std::size_t k = c.size(); k-- > 0;) {
            acc *= p;
            acc += c[k].get_num();
        }
        return acc;
    }

    UniPoly derivative() const {
        UniPoly d(var);
        for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * Rat(static_cast<long>(k)));
        d.trim();
        return d;
    }
};

inline void check_same_var(const UniPoly& a, const UniPoly& b) {
    if (a.var != b.var)
        throw domain_error(std::string("variable mismatch: ") + var_name(a.var) + " vs " +
                           var_name(b.var));
}

inline UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    check_same_var(a, b);
    UniPoly r(a.var);
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.coeff(k) + b.coeff(k);
    r.trim();
    return r;
}

inline UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    check_same_var(a, b);
    UniPoly r(a.var);
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.coeff(k) - b.coeff(k);
    r.trim();
    return r;
}

inline UniPoly operator-(const UniPoly& a) {
    UniPoly r(a.var);
    r.c.reserve(a.c.size());
    for (const Rat& q : a.c) r.c.push_back(-q);
    return r;
}

inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    check_same_var(a, b);
    UniPoly r(a.var);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

inline UniPoly operator*(const UniPoly& a, const Rat& s) {
    UniPoly r(a.var);
    if (s == 0) return r;
    r.c.reserve(a.c.size());
    for (const Rat& q : a.c) r.c.push_back(q * s);
    return r;
}

/// Grouped text form of an integer-coefficient polynomial, descending
/// powers, no spaces: "4*n^2-3*n+1", "-4*n-2", "n+2", "0".
inline std::string poly_to_string(const UniPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = p.c.size(); k-- > 0;) {
        const Rat& q = p.c[k];
        if (q == 0) continue;
        Int num = q.get_num();
        bool neg = num < 0;
        Int mag = neg ? Int(-num) : num;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        std::string magstr = mag.get_str();
        if (q.get_den() != 1) magstr += "/" + q.get_den().get_str(); // non-integer coefficient
        if (k == 0) {
            out += magstr;
        } else {
            if (magstr != "1") out += magstr + "*";
            out += var_name(p.var);
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

namespace detail {

/// Cursor over a relation/polynomial string; whitespace-insensitive.
struct Scanner {
    const std::string& s;
    std::size_t pos = 0;
    explicit Scanner(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw parse_error(std::string("expected '") + c + "'", pos);
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            pos += w.size();
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == digits) throw parse_error("expected integer", start);
        return Int(s.substr(start, pos - start));
    }
    Rat rational() {
        Int num = integer();
        if (accept('/')) {
            Int den = integer();
            if (den == 0) throw parse_error("zero denominator", pos);
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        return Rat(num);
    }
    std::size_t exponent() {
        if (accept('^')) {
            Int e = integer();
            if (e < 0 || e > 4096) throw parse_error("exponent out of range", pos);
            return e.get_ui();
        }
        return 1;
    }
};

/// Parses a grouped polynomial in `v`, i.e. a sum of terms
/// [sign] [coeff '*'] v ['^' k]  or  [sign] coeff.
/// Stops at the first character that cannot extend the polynomial.
inline UniPoly parse_grouped_poly(Scanner& sc, Var v) {
    UniPoly p(v);
    bool first = true;
    while (true) {
        sc.skip_ws();
        int sign = 1;
        if (sc.accept('-'))
            sign = -1;
        else if (sc.accept('+'))
            sign = 1;
        else if (!first)
            break;
        char c = sc.peek();
        Rat coeff(1);
        bool have_coeff = false;
        if ((c >= '0' && c <= '9')) {
            coeff = sc.rational();
            have_coeff = true;
        }
        std::size_t k = 0;
        if (sc.peek() == '*' || !have_coeff) {
            if (have_coeff) sc.expect('*');
            sc.skip_ws();
            if (sc.peek() != var_name(v))
                throw parse_error(std::string("expected variable '") + var_name(v) + "'", sc.pos);
            ++sc.pos;
            k = sc.exponent();
        }
        p = p + UniPoly::monomial(v, coeff * Rat(sign), k);
        first = false;
    }
    if (first) throw parse_error("expected polynomial", sc.pos);
    return p;
}

} // namespace detail

/// Parses the grouped text form produced by poly_to_string.  The whole
/// string must be consumed.
inline UniPoly poly_from_string(const std::string& text, Var v) {
    detail::Scanner sc(text);
    UniPoly p = detail::parse_grouped_poly(sc, v);
    if (!sc.eof()) throw parse_error("trailing characters after polynomial", sc.pos);
    return p;
}

} // namespace walkguess::exact
