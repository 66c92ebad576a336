#pragma once

/// @file series.hpp
/// CatalyticPoly: a polynomial in 0, 1 or 2 catalytic variables (x, y) with
/// rational coefficients, stored sparsely.  Exponents are always >= 0;
/// steps that walk downward are handled by subtracting low-order slices
/// before dividing, never by storing negative powers.
///
/// TruncatedSeries: a power series in t truncated at a recorded order,
/// whose t-coefficients are CatalyticPoly values of uniform arity.
/// Every operation records the valid order of its result; reading past
/// it throws order_exceeded instead of returning silent zeros.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "poly.hpp"

namespace walkguess::exact {

struct CatalyticPoly {
    int arity = 0; // number of catalytic variables in scope (0, 1 or 2)
    std::map<std::array<int, 2>, Rat> terms; // exponent vector -> coefficient

    CatalyticPoly() = default;
    explicit CatalyticPoly(int a) : arity(a) {
        if (a < 0 || a > 2) throw domain_error("arity must be 0, 1 or 2");
    }
    static CatalyticPoly constant(int arity, const Rat& v) {
        CatalyticPoly p(arity);
        if (v != 0) p.terms[{0, 0}] = v;
        return p;
    }
    static CatalyticPoly monomial(int arity, std::array<int, 2> e, const Rat& v) {
        CatalyticPoly p(arity);
        if (e[0] < 0 || e[1] < 0) throw domain_error("negative exponent");
        if (arity < 2 && e[1] != 0) throw domain_error("exponent beyond arity");
        if (arity < 1 && e[0] != 0) throw domain_error("exponent beyond arity");
        if (v != 0) p.terms[e] = v;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    Rat coeff(std::array<int, 2> e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rat(0) : it->second;
    }
    void add_term(std::array<int, 2> e, const Rat& v) {
        if (v == 0) return;
        auto [it, fresh] = terms.try_emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool operator==(const CatalyticPoly& o) const { return arity == o.arity && terms == o.terms; }
    bool operator!=(const CatalyticPoly& o) const { return !(*this == o); }

    /// Sum of all coefficients (evaluation at x=1[,y=1]).
    Rat total() const {
        Rat s(0);
        for (const auto& [e, v] : terms) s += v;
        return s;
    }
};

inline void check_same_arity(const CatalyticPoly& a, const CatalyticPoly& b) {
    if (a.arity != b.arity)
        throw arity_mismatch("arity " + std::to_string(a.arity) + " vs " + std::to_string(b.arity));
}

inline CatalyticPoly operator+(const CatalyticPoly& a, const CatalyticPoly& b) {
    check_same_arity(a, b);
    CatalyticPoly r = a;
    for (const auto& [e, v] : b.terms) r.add_term(e, v);
    return r;
}

inline CatalyticPoly operator-(const CatalyticPoly& a, const CatalyticPoly& b) {
    check_same_arity(a, b);
    CatalyticPoly r = a;
    for (const auto& [e, v] : b.terms) r.add_term(e, -v);
    return r;
}

inline CatalyticPoly operator*(const CatalyticPoly& a, const CatalyticPoly& b) {
    check_same_arity(a, b);
    CatalyticPoly r(a.arity);
    for (const auto& [ea, va] : a.terms)
        for (const auto& [eb, vb] : b.terms)
            r.add_term({ea[0] + eb[0], ea[1] + eb[1]}, va * vb);
    return r;
}

inline CatalyticPoly operator*(const CatalyticPoly& a, const Rat& s) {
    CatalyticPoly r(a.arity);
    if (s == 0) return r;
    for (const auto& [e, v] : a.terms) r.terms[e] = v * s;
    return r;
}

enum class PolyOp { add, sub, mul };

inline CatalyticPoly poly_arith(const CatalyticPoly& a, const CatalyticPoly& b, PolyOp op) {
    switch (op) {
        case PolyOp::add: return a + b;
        case PolyOp::sub: return a - b;
        case PolyOp::mul: return a * b;
    }
    throw domain_error("unknown op");
}

/// Multiplies by var^k where k may be negative; throws if a negative
/// exponent would be produced (callers must subtract low slices first).
inline CatalyticPoly shift_exponent(const CatalyticPoly& a, int var, int k) {
    if (var < 0 || var >= a.arity) throw domain_error("variable index beyond arity");
    CatalyticPoly r(a.arity);
    for (const auto& [e, v] : a.terms) {
        std::array<int, 2> f = e;
        f[var] += k;
        if (f[var] < 0)
            throw domain_error("negative exponent produced by shift; low-order slice not removed");
        r.terms[f] = v;
    }
    return r;
}

/// Coefficient of var^k with the variable kept in scope at exponent 0
/// (so the result can be multiplied back by var^i).
inline CatalyticPoly slice_keep_poly(const CatalyticPoly& a, int var, int k) {
    if (k < 0) throw domain_error("slice exponent must be >= 0");
    if (var < 0 || var >= a.arity) throw domain_error("variable index beyond arity");
    CatalyticPoly r(a.arity);
    for (const auto& [e, v] : a.terms) {
        if (e[var] != k) continue;
        std::array<int, 2> f = e;
        f[var] = 0;
        r.terms[f] = v;
    }
    return r;
}

/// Coefficient of var^k, with that variable removed from scope.
inline CatalyticPoly slice_poly(const CatalyticPoly& a, int var, int k) {
    if (k < 0) throw domain_error("slice exponent must be >= 0");
    if (var < 0 || var >= a.arity) throw domain_error("variable index beyond arity");
    CatalyticPoly r(a.arity - 1);
    for (const auto& [e, v] : a.terms) {
        if (e[var] != k) continue;
        std::array<int, 2> f{0, 0};
        int out = 0;
        for (int d = 0; d < a.arity; ++d)
            if (d != var) f[out++] = e[d];
        r.add_term(f, v);
    }
    return r;
}

/// Evaluation at var = value, with that variable removed from scope.
inline CatalyticPoly substitute_poly(const CatalyticPoly& a, int var, const Rat& value) {
    if (var < 0 || var >= a.arity) throw domain_error("variable index beyond arity");
    CatalyticPoly r(a.arity - 1);
    for (const auto& [e, v] : a.terms) {
        Rat scaled = v;
        for (int p = 0; p < e[var]; ++p) scaled *= value;
        std::array<int, 2> f{0, 0};
        int out = 0;
        for (int d = 0; d < a.arity; ++d)
            if (d != var) f[out++] = e[d];
        r.add_term(f, scaled);
    }
    return r;
}

struct TruncatedSeries {
    long order = 0;    // coefficients 0..order are valid
    int arity = 0;     // catalytic arity shared by all coefficients
    bool exact = true; // truncation of a well-defined formal power series
    std::vector<CatalyticPoly> c; // size order+1

    TruncatedSeries() : c(1, CatalyticPoly(0)) {}
    TruncatedSeries(long N, int a, bool ex = true)
        : order(N), arity(a), exact(ex), c(static_cast<std::size_t>(N) + 1, CatalyticPoly(a)) {
        if (N < 0) throw domain_error("order must be >= 0");
    }
    static TruncatedSeries constant(const Rat& v, long N, int arity) {
        TruncatedSeries s(N, arity);
        s.c[0] = CatalyticPoly::constant(arity, v);
        return s;
    }
    /// Arity-0 series whose t-coefficients are the given terms.
    static TruncatedSeries from_terms(const std::vector<Rat>& terms) {
        if (terms.empty()) throw domain_error("need at least one term");
        TruncatedSeries s(static_cast<long>(terms.size()) - 1, 0);
        for (std::size_t m = 0; m < terms.size(); ++m)
            s.c[m] = CatalyticPoly::constant(0, terms[m]);
        return s;
    }

    const CatalyticPoly& coeff(long m) const {
        if (m < 0) throw domain_error("negative t-order");
        if (m > order)
            throw order_exceeded("coefficient of t^" + std::to_string(m) +
                                 " requested but series is only valid to order " +
                                 std::to_string(order));
        return c[static_cast<std::size_t>(m)];
    }
    void set_coeff(long m, CatalyticPoly p) {
        if (m < 0 || m > order) throw domain_error("coefficient index out of range");
        if (p.arity != arity) throw arity_mismatch("coefficient arity differs from series arity");
        c[static_cast<std::size_t>(m)] = std::move(p);
    }
    /// Copy truncated (or unchanged) to order N <= order.
    TruncatedSeries truncate(long N) const {
        if (N > order) throw order_exceeded("cannot extend a truncated series");
        TruncatedSeries r(N, arity, exact);
        for (long m = 0; m <= N; ++m) r.c[m] = c[m];
        return r;
    }
    bool is_zero() const {
        for (const auto& p : c)
            if (!p.is_zero()) return false;
        return true;
    }
    /// Terms of an arity-0 series as a flat vector (coefficients 0..order).
    std::vector<Rat> terms() const {
        if (arity != 0) throw domain_error("terms() requires arity 0");
        std::vector<Rat> out;
        out.reserve(c.size());
        for (const auto& p : c) out.push_back(p.coeff({0, 0}));
        return out;
    }
};

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.arity != b.arity) throw arity_mismatch("series arity mismatch in add");
    TruncatedSeries r(std::min(a.order, b.order), a.arity, a.exact && b.exact);
    for (long m = 0; m <= r.order; ++m) r.c[m] = a.c[m] + b.c[m];
    return r;
}

inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.arity != b.arity) throw arity_mismatch("series arity mismatch in sub");
    TruncatedSeries r(std::min(a.order, b.order), a.arity, a.exact && b.exact);
    for (long m = 0; m <= r.order; ++m) r.c[m] = a.c[m] - b.c[m];
    return r;
}

/// Cauchy product truncated at min(a.order, b.order).
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.arity != b.arity) throw arity_mismatch("series arity mismatch in mul");
    TruncatedSeries r(std::min(a.order, b.order), a.arity, a.exact && b.exact);
    for (long m = 0; m <= r.order; ++m) {
        CatalyticPoly acc(a.arity);
        for (long i = 0; i <= m; ++i) acc = acc + a.c[i] * b.c[m - i];
        r.c[m] = acc;
    }
    return r;
}

inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    return series_mul(a, b);
}

inline TruncatedSeries operator*(const TruncatedSeries& a, const Rat& s) {
    TruncatedSeries r(a.order, a.arity, a.exact);
    for (long m = 0; m <= r.order; ++m) r.c[m] = a.c[m] * s;
    return r;
}

/// Multiplication by t^k: shifts coefficients upward and *raises* the valid
/// order by k (the low k coefficients are exactly zero).
inline TruncatedSeries mul_t_power(const TruncatedSeries& a, long k) {
    if (k < 0) throw domain_error("mul_t_power requires k >= 0");
    TruncatedSeries r(a.order + k, a.arity, a.exact);
    for (long m = 0; m <= a.order; ++m) r.c[m + k] = a.c[m];
    return r;
}

/// Multiplies every coefficient by var^k (k may be negative; see
/// shift_exponent for the precondition).
inline TruncatedSeries shift_var_pow(const TruncatedSeries& a, int var, int k) {
    TruncatedSeries r(a.order, a.arity, a.exact);
    for (long m = 0; m <= a.order; ++m) r.c[m] = shift_exponent(a.c[m], var, k);
    return r;
}

/// Coefficient of var^k of every t-coefficient, variable kept in scope
/// at exponent 0; arity is preserved.
inline TruncatedSeries coeff_slice_keep(const TruncatedSeries& s, int var, int k) {
    if (k < 0) throw domain_error("slice exponent must be >= 0");
    TruncatedSeries r(s.order, s.arity, s.exact);
    for (long m = 0; m <= s.order; ++m) r.c[m] = slice_keep_poly(s.c[m], var, k);
    return r;
}

/// Coefficient of var^k of every t-coefficient; arity drops by one.
inline TruncatedSeries coeff_slice(const TruncatedSeries& s, int var, int k) {
    if (k < 0) throw domain_error("slice exponent must be >= 0");
    TruncatedSeries r(s.order, s.arity - 1, s.exact);
    for (long m = 0; m <= s.order; ++m) r.c[m] = slice_poly(s.c[m], var, k);
    return r;
}

/// Evaluates every t-coefficient at var = value; arity drops by one.
inline TruncatedSeries substitute(const TruncatedSeries& s, int var, const Rat& value) {
    TruncatedSeries r(s.order, s.arity - 1, s.exact);
    for (long m = 0; m <= s.order; ++m) r.c[m] = substitute_poly(s.c[m], var, value);
    return r;
}

/// d/dt of a truncated series; the result is valid one order lower.
inline TruncatedSeries derivative_t(const TruncatedSeries& s) {
    if (s.order == 0)
        throw order_exceeded("derivative of an order-0 truncation has no known coefficients");
    TruncatedSeries r(s.order - 1, s.arity, s.exact);
    for (long m = 0; m + 1 <= s.order; ++m) r.c[m] = s.c[m + 1] * Rat(m + 1);
    return r;
}

/// Re-embeds an arity-0 series into a larger arity (as var^0 terms).
inline TruncatedSeries embed(const TruncatedSeries& s, int arity) {
    if (s.arity != 0) throw domain_error("embed expects an arity-0 series");
    TruncatedSeries r(s.order, arity, s.exact);
    for (long m = 0; m <= s.order; ++m) {
        Rat v = s.c[m].coeff({0, 0});
        r.c[m] = CatalyticPoly::constant(arity, v);
    }
    return r;
}

/// Equality of the overlap: compares coefficients up to min(order, order).
inline bool equal_to_order(const TruncatedSeries& a, const TruncatedSeries& b, long N = -1) {
    if (a.arity != b.arity) return false;
    long lim = std::min(a.order, b.order);
    if (N >= 0) lim = std::min(lim, N);
    for (long m = 0; m <= lim; ++m)
        if (a.c[m] != b.c[m]) return false;
    return true;
}

} // namespace walkguess::exact
