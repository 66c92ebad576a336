#pragma once

/// @file relations.hpp
/// The four relation shapes fitted by the guessers, their canonical forms,
/// the text grammar (string equality = relation equality), and exact
/// verification against term data.
///
/// Grammar (canonical spacing, descending shift/power, integer
/// coefficients scaled to joint content 1, fixed leading sign):
///
///   recurrence:   (n+2)*a(n+1) + (-4*n-2)*a(n) = 0
///   algebraic:    (1)*C^2*t + (-1)*C + (1) = 0
///   differential: (4*t^3-t)*D^1[C] + (4*t^2-2)*C + (2) = 0
///                 (a trailing bare (POLY) is the inhomogeneous term)
///   formula:      a(n) = (1/2)*n^2 + (1/2)*n

#include <string>
#include <vector>

#include "poly.hpp"
#include "series.hpp"

namespace walkguess::ansatz {

using exact::Int;
using exact::Rat;
using exact::TruncatedSeries;
using exact::UniPoly;
using exact::Var;

namespace detail {

/// Joint canonical scaling of a family of polynomials: integer
/// coefficients, content 1 across the whole family, and the designated
/// leading polynomial's top coefficient positive.
inline void joint_canonicalize(std::vector<UniPoly*> polys, const UniPoly* sign_leader) {
    Int den(1);
    for (const UniPoly* p : polys)
        for (const Rat& c : p->c) den = exact::lcm(den, c.get_den());
    Int g(0);
    for (const UniPoly* p : polys)
        for (const Rat& c : p->c) {
            Int scaled = c.get_num() * (den / c.get_den());
            g = exact::gcd(g, scaled);
        }
    if (g == 0) return; // all-zero family
    int sign = 1;
    if (sign_leader && !sign_leader->is_zero() && sign_leader->leading() < 0) sign = -1;
    Rat factor = Rat(den * sign, g);
    factor.canonicalize();
    for (UniPoly* p : polys) {
        for (Rat& c : p->c) c *= factor;
        p->trim();
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// PolynomialFormula

struct PolynomialFormula {
    UniPoly poly{Var::n}; // rational coefficients

    long degree() const { return poly.degree(); }
    Rat eval(long n) const { return poly.eval(Rat(n)); }
    bool operator==(const PolynomialFormula& o) const { return poly == o.poly; }
};

// ---------------------------------------------------------------------------
// AlgebraicRelation: sum_i p_i(t) * C^i = 0

struct AlgebraicRelation {
    std::vector<UniPoly> p; // p[i] multiplies C^i; p.back() nonzero

    long degree() const { return static_cast<long>(p.size()) - 1; }
    long degree_t() const {
        long d = -1;
        for (const UniPoly& q : p) d = std::max(d, q.degree());
        return d;
    }
    void canonicalize() {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
        if (p.empty() || degree() < 1)
            throw domain_error("algebraic relation must involve C");
        std::vector<UniPoly*> ptrs;
        for (UniPoly& q : p) ptrs.push_back(&q);
        detail::joint_canonicalize(ptrs, &p.back());
    }
    bool operator==(const AlgebraicRelation& o) const { return p == o.p; }
};

// ---------------------------------------------------------------------------
// Recurrence: sum_i q_i(n) * a(n+i) = 0 for n >= support_offset

struct Recurrence {
    std::vector<UniPoly> q;    // q[i] multiplies a(n+i); q.back() nonzero
    std::vector<Rat> initial;  // a(0), a(1), ... (at least `order` of them)
    long support_offset = 0;   // first n at which the relation is asserted
    std::vector<long> exceptional; // n in scan range with q_d(n) = 0
    long scan_limit = 0;           // exceptional list covers [support_offset, scan_limit]

    long order() const { return static_cast<long>(q.size()) - 1; }
    long degree() const {
        long d = -1;
        for (const UniPoly& c : q) d = std::max(d, c.degree());
        return d;
    }
    void canonicalize() {
        while (!q.empty() && q.back().is_zero()) q.pop_back();
        if (q.empty() || order() < 1)
            throw domain_error("recurrence must relate at least two indices");
        std::vector<UniPoly*> ptrs;
        for (UniPoly& c : q) ptrs.push_back(&c);
        detail::joint_canonicalize(ptrs, &q.back());
    }
    /// Records the indices n in [support_offset, limit] where the leading
    /// coefficient vanishes (unrolling needs explicit values there).
    void scan_exceptional(long limit) {
        exceptional.clear();
        scan_limit = limit;
        const UniPoly& lead = q.back();
        for (long n = support_offset; n <= limit; ++n)
            if (lead.eval(Rat(n)) == 0) exceptional.push_back(n);
    }
    bool operator==(const Recurrence& o) const { return q == o.q; }
};

// ---------------------------------------------------------------------------
// DifferentialRelation: sum_i r_i(t) * C^(i)(t) + inhom(t) = 0

struct DifferentialRelation {
    std::vector<UniPoly> r; // r[i] multiplies the i-th derivative; r.back() nonzero
    UniPoly inhom{Var::t};  // zero polynomial <=> homogeneous relation
    int initial_conditions = 0;

    long order() const { return static_cast<long>(r.size()) - 1; }
    long degree() const {
        long d = inhom.degree();
        for (const UniPoly& c : r) d = std::max(d, c.degree());
        return d;
    }
    bool homogeneous() const { return inhom.is_zero(); }
    void canonicalize() {
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        if (r.empty() || (order() < 1 && r[0].is_zero()))
            throw domain_error("differential relation must involve C");
        if (order() < 1)
            throw domain_error("differential relation must involve a derivative");
        std::vector<UniPoly*> ptrs;
        for (UniPoly& c : r) ptrs.push_back(&c);
        ptrs.push_back(&inhom);
        detail::joint_canonicalize(ptrs, &r.back());
        initial_conditions = static_cast<int>(order());
    }
    bool operator==(const DifferentialRelation& o) const {
        return r == o.r && inhom == o.inhom;
    }
};

// ---------------------------------------------------------------------------
// Printing

inline std::string to_string(const PolynomialFormula& f) {
    std::string out = "a(n) = ";
    if (f.poly.is_zero()) return out + "(0)";
    bool first = true;
    for (std::size_t k = f.poly.c.size(); k-- > 0;) {
        const Rat& c = f.poly.c[k];
        if (c == 0) continue;
        if (!first) out += " + ";
        out += "(" + exact::to_string(c) + ")";
        if (k >= 1) {
            out += "*n";
            if (k >= 2) out += "^" + std::to_string(k);
        }
        first = false;
    }
    return out;
}

inline std::string to_string(const Recurrence& rec) {
    std::string out;
    for (std::size_t i = rec.q.size(); i-- > 0;) {
        if (rec.q[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + exact::poly_to_string(rec.q[i]) + ")*a(n";
        if (i > 0) out += "+" + std::to_string(i);
        out += ")";
    }
    return out + " = 0";
}

inline std::string to_string(const AlgebraicRelation& rel) {
    std::string out;
    for (std::size_t i = rel.p.size(); i-- > 0;) {
        const UniPoly& pi = rel.p[i];
        for (std::size_t j = pi.c.size(); j-- > 0;) {
            const Rat& c = pi.c[j];
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            out += "(" + exact::to_string(c) + ")";
            if (i >= 1) {
                out += "*C";
                if (i >= 2) out += "^" + std::to_string(i);
            }
            if (j >= 1) {
                out += "*t";
                if (j >= 2) out += "^" + std::to_string(j);
            }
        }
    }
    return out + " = 0";
}

inline std::string to_string(const DifferentialRelation& rel) {
    std::string out;
    for (std::size_t i = rel.r.size(); i-- > 0;) {
        if (rel.r[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + exact::poly_to_string(rel.r[i]) + ")";
        if (i >= 1)
            out += "*D^" + std::to_string(i) + "[C]";
        else
            out += "*C";
    }
    if (!rel.inhom.is_zero()) {
        if (!out.empty()) out += " + ";
        out += "(" + exact::poly_to_string(rel.inhom) + ")";
    }
    return out + " = 0";
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

using exact::detail::Scanner;

inline void expect_eq_zero(Scanner& sc) {
    sc.expect('=');
    sc.skip_ws();
    Int z = sc.integer();
    if (z != 0) throw parse_error("relation must equal 0", sc.pos);
    if (!sc.eof()) throw parse_error("trailing characters after relation", sc.pos);
}

} // namespace detail

inline PolynomialFormula formula_from_string(const std::string& text) {
    detail::Scanner sc(text);
    if (!sc.accept_word("a(n)")) throw parse_error("formula must start with 'a(n)'", sc.pos);
    sc.expect('=');
    UniPoly poly(Var::n);
    bool first = true;
    while (true) {
        if (!first && !sc.accept('+')) break;
        sc.expect('(');
        Rat c = sc.rational();
        sc.expect(')');
        std::size_t k = 0;
        if (sc.accept('*')) {
            sc.skip_ws();
            if (sc.peek() != 'n') throw parse_error("expected 'n'", sc.pos);
            ++sc.pos;
            k = sc.exponent();
        }
        poly = poly + UniPoly::monomial(Var::n, c, k);
        first = false;
        if (sc.eof()) break;
    }
    if (first) throw parse_error("empty formula", sc.pos);
    if (!sc.eof()) throw parse_error("trailing characters after formula", sc.pos);
    return PolynomialFormula{poly};
}

inline Recurrence recurrence_from_string(const std::string& text) {
    detail::Scanner sc(text);
    std::vector<UniPoly> terms;
    bool first = true;
    while (true) {
        if (!first && !sc.accept('+')) break;
        sc.expect('(');
        UniPoly poly = exact::detail::parse_grouped_poly(sc, Var::n);
        sc.expect(')');
        sc.expect('*');
        if (!sc.accept_word("a(n")) throw parse_error("expected 'a(n'", sc.pos);
        std::size_t shift = 0;
        if (sc.accept('+')) {
            Int k = sc.integer();
            if (k < 1 || k > 4096) throw parse_error("shift out of range", sc.pos);
            shift = k.get_ui();
        }
        sc.expect(')');
        if (terms.size() <= shift) terms.resize(shift + 1, UniPoly(Var::n));
        terms[shift] = terms[shift] + poly;
        first = false;
    }
    if (first) throw parse_error("empty recurrence", sc.pos);
    detail::expect_eq_zero(sc);
    Recurrence rec;
    rec.q = std::move(terms);
    try {
        rec.canonicalize();
    } catch (const domain_error& e) {
        throw parse_error(std::string("rejected: ") + e.what(), 0);
    }
    return rec;
}

inline AlgebraicRelation algebraic_from_string(const std::string& text) {
    detail::Scanner sc(text);
    std::vector<UniPoly> p;
    bool first = true;
    while (true) {
        if (!first && !sc.accept('+')) break;
        sc.expect('(');
        Rat c = sc.rational();
        sc.expect(')');
        std::size_t ci = 0, tj = 0;
        if (sc.accept('*')) {
            sc.skip_ws();
            if (sc.peek() == 'C') {
                ++sc.pos;
                ci = sc.exponent();
                if (sc.accept('*')) {
                    sc.skip_ws();
                    if (sc.peek() != 't') throw parse_error("expected 't'", sc.pos);
                    ++sc.pos;
                    tj = sc.exponent();
                }
            } else if (sc.peek() == 't') {
                ++sc.pos;
                tj = sc.exponent();
            } else {
                throw parse_error("expected 'C' or 't'", sc.pos);
            }
        }
        if (p.size() <= ci) p.resize(ci + 1, UniPoly(Var::t));
        p[ci] = p[ci] + UniPoly::monomial(Var::t, c, tj);
        first = false;
    }
    if (first) throw parse_error("empty algebraic relation", sc.pos);
    detail::expect_eq_zero(sc);
    AlgebraicRelation rel;
    rel.p = std::move(p);
    try {
        rel.canonicalize();
    } catch (const domain_error& e) {
        throw parse_error(std::string("rejected: ") + e.what(), 0);
    }
    return rel;
}

inline DifferentialRelation differential_from_string(const std::string& text) {
    detail::Scanner sc(text);
    std::vector<UniPoly> r;
    UniPoly inhom(Var::t);
    bool first = true;
    while (true) {
        if (!first && !sc.accept('+')) break;
        sc.expect('(');
        UniPoly poly = exact::detail::parse_grouped_poly(sc, Var::t);
        sc.expect(')');
        if (sc.accept('*')) {
            sc.skip_ws();
            std::size_t i = 0;
            if (sc.accept_word("D^")) {
                Int k = sc.integer();
                if (k < 1 || k > 4096) throw parse_error("derivative order out of range", sc.pos);
                i = k.get_ui();
                sc.expect('[');
                sc.skip_ws();
                if (sc.peek() != 'C') throw parse_error("expected 'C'", sc.pos);
                ++sc.pos;
                sc.expect(']');
            } else if (sc.peek() == 'C') {
                ++sc.pos;
                i = 0;
            } else {
                throw parse_error("expected 'D^' or 'C'", sc.pos);
            }
            if (r.size() <= i) r.resize(i + 1, UniPoly(Var::t));
            r[i] = r[i] + poly;
        } else {
            inhom = inhom + poly;
        }
        first = false;
    }
    if (first) throw parse_error("empty differential relation", sc.pos);
    detail::expect_eq_zero(sc);
    DifferentialRelation rel;
    rel.r = std::move(r);
    rel.inhom = std::move(inhom);
    try {
        rel.canonicalize();
    } catch (const domain_error& e) {
        throw parse_error(std::string("rejected: ") + e.what(), 0);
    }
    return rel;
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyResult {
    long depth = 0;              // consecutive indices verified from from_index
    bool reached_end = false;    // verification consumed all usable data
    long first_failure = -1;     // index of first violated position, or -1
    std::vector<long> skipped;   // recurrence indices skipped (leading coeff zero)
};

/// sum_i q_i(n) * terms[n+i], exactly.
inline Rat recurrence_residual_at(const Recurrence& rec, const std::vector<Rat>& terms, long n) {
    const long d = rec.order();
    if (n < 0 || n + d >= static_cast<long>(terms.size()))
        throw domain_error("recurrence residual index out of range");
    Rat s(0);
    for (long i = 0; i <= d; ++i) {
        if (rec.q[i].is_zero()) continue;
        s += rec.q[i].eval(Rat(n)) * terms[n + i];
    }
    return s;
}

inline VerifyResult verify_recurrence(const Recurrence& rec, const std::vector<Rat>& terms,
                                      long from_index) {
    VerifyResult res;
    const long d = rec.order();
    const long last = static_cast<long>(terms.size()) - 1 - d;
    for (long n = std::max(from_index, rec.support_offset); n <= last; ++n) {
        if (rec.q.back().eval(Rat(n)) == 0) {
            res.skipped.push_back(n);
            continue;
        }
        if (recurrence_residual_at(rec, terms, n) != 0) {
            res.first_failure = n;
            return res;
        }
        ++res.depth;
    }
    res.reached_end = true;
    return res;
}

namespace detail {

inline TruncatedSeries poly_to_series(const UniPoly& p, long order) {
    TruncatedSeries s(order, 0);
    for (std::size_t k = 0; k < p.c.size() && static_cast<long>(k) <= order; ++k)
        s.set_coeff(static_cast<long>(k), exact::CatalyticPoly::constant(0, p.c[k]));
    return s;
}

} // namespace detail

/// sum_i p_i(t) C^i as a truncated series, C built from the terms.
inline TruncatedSeries algebraic_residual(const AlgebraicRelation& rel,
                                          const std::vector<Rat>& terms) {
    if (terms.empty()) throw domain_error("no terms");
    const long N = static_cast<long>(terms.size()) - 1;
    TruncatedSeries C = TruncatedSeries::from_terms(terms);
    TruncatedSeries acc = detail::poly_to_series(rel.p[0], N);
    TruncatedSeries power = TruncatedSeries::constant(1, N, 0);
    for (std::size_t i = 1; i < rel.p.size(); ++i) {
        power = exact::series_mul(power, C);
        if (!rel.p[i].is_zero())
            acc = acc + exact::series_mul(detail::poly_to_series(rel.p[i], N), power);
    }
    return acc;
}

inline VerifyResult verify_algebraic(const AlgebraicRelation& rel, const std::vector<Rat>& terms,
                                     long from_index) {
    VerifyResult res;
    TruncatedSeries resid = algebraic_residual(rel, terms);
    for (long m = std::max(from_index, 0l); m <= resid.order; ++m) {
        if (!resid.coeff(m).is_zero()) {
            res.first_failure = m;
            return res;
        }
        ++res.depth;
    }
    res.reached_end = true;
    return res;
}

/// sum_i r_i(t) C^(i) + inhom, valid to order len-1-order(rel).
inline TruncatedSeries differential_residual(const DifferentialRelation& rel,
                                             const std::vector<Rat>& terms) {
    if (static_cast<long>(terms.size()) <= rel.order())
        throw domain_error("not enough terms for the derivative order");
    const long N = static_cast<long>(terms.size()) - 1;
    TruncatedSeries C = TruncatedSeries::from_terms(terms);
    TruncatedSeries acc = detail::poly_to_series(rel.inhom, N - rel.order());
    TruncatedSeries der = C;
    for (long i = 0; i <= rel.order(); ++i) {
        if (i > 0) der = exact::derivative_t(der);
        if (!rel.r[i].is_zero()) {
            TruncatedSeries term =
                exact::series_mul(detail::poly_to_series(rel.r[i], der.order), der);
            acc = acc + term.truncate(std::min(acc.order, term.order));
        }
    }
    return acc;
}

inline VerifyResult verify_differential(const DifferentialRelation& rel,
                                        const std::vector<Rat>& terms, long from_index) {
    VerifyResult res;
    TruncatedSeries resid = differential_residual(rel, terms);
    for (long m = std::max(from_index, 0l); m <= resid.order; ++m) {
        if (!resid.coeff(m).is_zero()) {
            res.first_failure = m;
            return res;
        }
        ++res.depth;
    }
    res.reached_end = true;
    return res;
}

inline VerifyResult verify_formula(const PolynomialFormula& f, const std::vector<Rat>& terms,
                                   long from_index) {
    VerifyResult res;
    for (long n = std::max(from_index, 0l); n < static_cast<long>(terms.size()); ++n) {
        if (f.eval(n) != terms[n]) {
            res.first_failure = n;
            return res;
        }
        ++res.depth;
    }
    res.reached_end = true;
    return res;
}

} // namespace walkguess::ansatz
