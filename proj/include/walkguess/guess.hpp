#pragma once

/// @file guess.hpp
/// Ansatz fitting by exact linear algebra: polynomial formulas, algebraic
/// equations, P-recurrences and linear ODEs, each fitted on a prefix of
/// the data and accepted only when the fitted relation annihilates every
/// remaining term.
///
/// Shapes (order, degree) are swept diagonally by unknown count, ties
/// broken by lower order, so the structurally simplest relation is found
/// first.  Small systems are solved by fraction-free elimination over Q;
/// large ones mod a sequence of 31-bit primes with CRT + rational
/// reconstruction, followed by the same exact verification.  A kernel
/// mod p can only be too large, never too small, so "no kernel mod p"
/// soundly rules a shape out; apparent mod-p fits must survive the exact
/// check before they are reported.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "matrix.hpp"
#include "modular.hpp"
#include "relations.hpp"

namespace walkguess::ansatz {

enum class GuessStatus {
    VerifiedConjecture,
    NoFitWithinBounds,
    InsufficientTerms,
    ResourceExceeded,
    DegenerateInput,
};

inline std::string to_string(GuessStatus s) {
    switch (s) {
        case GuessStatus::VerifiedConjecture: return "verified-conjecture";
        case GuessStatus::NoFitWithinBounds: return "no-fit-within-bounds";
        case GuessStatus::InsufficientTerms: return "insufficient-terms";
        case GuessStatus::ResourceExceeded: return "resource-exceeded";
        case GuessStatus::DegenerateInput: return "degenerate-input";
    }
    return "unknown";
}

enum class GuessRoute { None, Exact, Modular };

inline std::string to_string(GuessRoute r) {
    switch (r) {
        case GuessRoute::None: return "none";
        case GuessRoute::Exact: return "exact";
        case GuessRoute::Modular: return "modular";
    }
    return "unknown";
}

struct GuessOptions {
    double fit_fraction = 0.6; // fit on the first ceil(fit_fraction * terms)
    long min_verify = 10;      // held-out terms required for verified-conjecture
    long margin = 3;           // fit rows required beyond the unknown count
    // route selection: modular when unknowns >= unknown_threshold, or when
    // unknowns * (bit size of the largest term) >= work_threshold
    long modular_unknown_threshold = 500;
    long modular_work_threshold = 32768;
    bool force_exact = false;
    bool force_modular = false;
    std::size_t max_primes = 1024;
    std::uint64_t time_cap_ms = 0; // 0 = no cap
};

using RelationVariant = std::variant<std::monostate, PolynomialFormula, AlgebraicRelation,
                                     Recurrence, DifferentialRelation>;

struct GuessReport {
    GuessStatus status = GuessStatus::NoFitWithinBounds;
    RelationVariant relation;
    std::string relation_text; // canonical grammar, empty when no relation
    long fit_terms = 0;
    long verify_terms = 0;
    long verification_depth = 0; // held-out positions actually checked
    long found_order = -1;
    long found_degree = -1;
    long max_order_bound = 0;
    long max_degree_bound = 0;
    long kernel_dimension = 0; // multiplicity at the found shape
    GuessRoute route = GuessRoute::None;
    long primes_used = 0;
    std::vector<long> skipped_indices; // recurrence rows skipped in verification
    std::string note;
    std::uint64_t elapsed_ms = 0;

    bool verified() const { return status == GuessStatus::VerifiedConjecture; }
};

// ---------------------------------------------------------------------------
// compress_zeros

struct CompressResult {
    std::vector<exact::Rat> compressed;
    long period = 1;
    long residue = 0;
    bool all_zero = false;
};

/// Detects the largest g such that all nonzero terms sit on indices
/// congruent to r mod g, and extracts that subsequence.  g = 1 is the
/// identity compression; all-zero input is flagged, not an error.
inline CompressResult compress_zeros(const std::vector<exact::Rat>& terms) {
    if (terms.empty()) throw domain_error("no terms");
    CompressResult res;
    std::vector<long> support;
    for (long i = 0; i < static_cast<long>(terms.size()); ++i)
        if (terms[i] != 0) support.push_back(i);
    if (support.empty()) {
        res.all_zero = true;
        res.compressed = terms;
        return res;
    }
    long g = 0;
    for (long idx : support) g = std::gcd(g, idx - support.front());
    if (g == 0) g = 1; // a single nonzero term: no period to detect
    res.period = g;
    res.residue = support.front() % g;
    for (long i = res.residue; i < static_cast<long>(terms.size()); i += g)
        res.compressed.push_back(terms[i]);
    return res;
}

// ---------------------------------------------------------------------------
// verify_relation dispatcher

inline VerifyResult verify_relation(const RelationVariant& rel, const std::vector<exact::Rat>& terms,
                                    long from_index) {
    if (std::holds_alternative<PolynomialFormula>(rel))
        return verify_formula(std::get<PolynomialFormula>(rel), terms, from_index);
    if (std::holds_alternative<AlgebraicRelation>(rel))
        return verify_algebraic(std::get<AlgebraicRelation>(rel), terms, from_index);
    if (std::holds_alternative<Recurrence>(rel))
        return verify_recurrence(std::get<Recurrence>(rel), terms, from_index);
    if (std::holds_alternative<DifferentialRelation>(rel))
        return verify_differential(std::get<DifferentialRelation>(rel), terms, from_index);
    throw domain_error("no relation to verify");
}

// ---------------------------------------------------------------------------
// sweep internals

namespace detail {

using exact::Int;
using exact::Rat;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::uint64_t cap_ms = 0;

    std::uint64_t elapsed_ms() const {
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
    }
    bool expired() const { return cap_ms != 0 && elapsed_ms() > cap_ms; }
};

enum class Family { Recurrence, Algebraic, Differential };

/// Number of coefficient groups in the ansatz at a given order, in the
/// ascending kernel layout (low-significance groups first):
///   recurrence: a(n), a(n+1), ..., a(n+order)
///   algebraic:  1, C, C^2, ..., C^order          (order = degree in C)
///   ode:        1 (inhomogeneous), C, D^1[C], ..., D^order[C]
inline long group_count(Family f, long order) {
    switch (f) {
        case Family::Recurrence: return order + 1;
        case Family::Algebraic: return order + 1;
        case Family::Differential: return order + 2;
    }
    return 0;
}

inline long unknowns_for(Family f, long order, long degree) {
    return group_count(f, order) * (degree + 1);
}

/// Usable window rows when `terms` data points are available.
inline long rows_for(Family f, long order, long terms) {
    switch (f) {
        case Family::Recurrence: return terms - order;
        case Family::Algebraic: return terms;
        case Family::Differential: return terms - order;
    }
    return 0;
}

/// Fit prefix size: ceil(fit_fraction * total), clamped to [1, total].
inline long fit_count(long total, const GuessOptions& opt) {
    double f = opt.fit_fraction;
    if (f <= 0.0 || f > 1.0) throw domain_error("fit fraction must be in (0, 1]");
    long F = static_cast<long>(std::ceil(f * static_cast<double>(total)));
    return std::clamp(F, 1l, total);
}

/// Exact column entry in the ascending layout.  Powers of the series C
/// (algebraic) and derivative coefficient arrays (ode) are precomputed by
/// the caller and passed in `aux`: aux[g] is the coefficient array of the
/// group-g base object, indexed by row.
inline const std::vector<std::vector<Rat>>& dummy_aux() {
    static const std::vector<std::vector<Rat>> a;
    return a;
}

/// Precomputes, for each group in ascending layout, the base sequence
/// whose degree-j column is (row-dependent factor)^j * base[row-shift]:
///   recurrence: base_g[row n] = c(n+g); column = n^j * base
///   algebraic:  base_g[row m] = [t^m] C^g; column = base shifted down j
///   ode:        base_0 = delta (inhom: [t^m] t^j = [m==j])
///               base_1[m] = c_m; base_{g} = [t^m] C^(g-1) for g >= 2;
///               column = base shifted down j
inline std::vector<std::vector<Rat>> group_bases(Family f, long order,
                                                 const std::vector<Rat>& terms, long rows) {
    const long T = static_cast<long>(terms.size());
    std::vector<std::vector<Rat>> bases;
    switch (f) {
        case Family::Recurrence:
            for (long g = 0; g <= order; ++g) {
                std::vector<Rat> b(rows);
                for (long n = 0; n < rows; ++n) b[n] = terms[n + g];
                bases.push_back(std::move(b));
            }
            break;
        case Family::Algebraic: {
            // powers of C to the requested degree, each to order rows-1
            std::vector<Rat> power(rows, Rat(0));
            power[0] = 1;
            for (long g = 0; g <= order; ++g) {
                bases.push_back(power);
                if (g == order) break;
                std::vector<Rat> next(rows, Rat(0));
                for (long m = 0; m < rows; ++m) {
                    if (power[m] == 0) continue;
                    for (long k = 0; k + m < rows && k < T; ++k)
                        next[m + k] += power[m] * terms[k];
                }
                power = std::move(next);
            }
            break;
        }
        case Family::Differential: {
            std::vector<Rat> delta; // handled specially by entry()
            bases.emplace_back();   // group 0: inhomogeneous, no base needed
            std::vector<Rat> der(terms.begin(), terms.end());
            for (long g = 1; g <= order + 1; ++g) {
                if (g >= 2) {
                    // differentiate: der[k] = (k+1) * der[k+1]
                    std::vector<Rat> d(der.size() - 1);
                    for (std::size_t k = 0; k + 1 < der.size(); ++k)
                        d[k] = der[k + 1] * Rat(static_cast<long>(k) + 1);
                    der = std::move(d);
                }
                std::vector<Rat> b(rows, Rat(0));
                for (long m = 0; m < rows && m < static_cast<long>(der.size()); ++m)
                    b[m] = der[m];
                bases.push_back(std::move(b));
            }
            break;
        }
    }
    return bases;
}

/// Entry of the ascending-layout fitting matrix.
inline Rat exact_entry(Family f, const std::vector<std::vector<Rat>>& bases, long row, long g,
                       long j) {
    switch (f) {
        case Family::Recurrence: {
            if (j == 0) return bases[g][row];
            Rat p(1);
            Rat n(row);
            for (long k = 0; k < j; ++k) p *= n;
            return p * bases[g][row];
        }
        case Family::Algebraic:
            return row >= j ? bases[g][row - j] : Rat(0);
        case Family::Differential:
            if (g == 0) return Rat(row == j ? 1 : 0);
            return row >= j ? bases[g][row - j] : Rat(0);
    }
    return Rat(0);
}

/// Builds the ascending-layout matrix over Q for one lattice shape.
inline exact::ExactMatrix build_exact(Family f, const std::vector<std::vector<Rat>>& bases,
                                      long rows, long order, long degree) {
    const long G = group_count(f, order);
    exact::ExactMatrix M(static_cast<std::size_t>(rows),
                         static_cast<std::size_t>(G * (degree + 1)));
    for (long r = 0; r < rows; ++r)
        for (long g = 0; g < G; ++g)
            for (long j = 0; j <= degree; ++j)
                M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(g * (degree + 1) + j)) =
                    exact_entry(f, bases, r, g, j);
    return M;
}

/// Modular group bases: same layout as group_bases but mod p.  Returns
/// false when some term's denominator vanishes mod p.
inline bool group_bases_mod(Family f, long order, const std::vector<Rat>& terms, long rows,
                            const exact::PrimeField& F, std::vector<std::vector<std::uint32_t>>& out) {
    const long T = static_cast<long>(terms.size());
    std::vector<std::uint32_t> tmod(static_cast<std::size_t>(std::min<long>(T, rows + order + 1)));
    // reduce only the prefix the window can touch
    for (std::size_t k = 0; k < tmod.size(); ++k) {
        auto r = F.reduce_rat(terms[k]);
        if (!r) return false;
        tmod[k] = *r;
    }
    out.clear();
    switch (f) {
        case Family::Recurrence:
            for (long g = 0; g <= order; ++g) {
                std::vector<std::uint32_t> b(rows);
                for (long n = 0; n < rows; ++n) b[n] = tmod[n + g];
                out.push_back(std::move(b));
            }
            break;
        case Family::Algebraic: {
            std::vector<std::uint32_t> power(rows, 0);
            power[0] = 1;
            for (long g = 0; g <= order; ++g) {
                out.push_back(power);
                if (g == order) break;
                std::vector<std::uint32_t> next(rows, 0);
                for (long m = 0; m < rows; ++m) {
                    if (power[m] == 0) continue;
                    const std::uint64_t pm = power[m];
                    for (long k = 0; k + m < rows && k < static_cast<long>(tmod.size()); ++k)
                        next[m + k] = F.add(next[m + k],
                                            F.reduce(pm * tmod[k]));
                }
                power = std::move(next);
            }
            break;
        }
        case Family::Differential: {
            out.emplace_back(); // group 0: inhomogeneous
            std::vector<std::uint32_t> der(tmod.begin(), tmod.end());
            for (long g = 1; g <= order + 1; ++g) {
                if (g >= 2) {
                    std::vector<std::uint32_t> d(der.size() - 1);
                    for (std::size_t k = 0; k + 1 < der.size(); ++k)
                        d[k] = F.reduce(static_cast<std::uint64_t>(der[k + 1]) *
                                        ((k + 1) % F.p));
                    der = std::move(d);
                }
                std::vector<std::uint32_t> b(rows, 0);
                for (long m = 0; m < rows && m < static_cast<long>(der.size()); ++m) b[m] = der[m];
                out.push_back(std::move(b));
            }
            break;
        }
    }
    return true;
}

/// Ascending-layout matrix mod p for one shape.
inline exact::ModMatrix build_mod(Family f, const std::vector<std::vector<std::uint32_t>>& bases,
                                  long rows, long order, long degree, const exact::PrimeField& F) {
    const long G = group_count(f, order);
    exact::ModMatrix M(static_cast<std::size_t>(rows), static_cast<std::size_t>(G * (degree + 1)));
    for (long r = 0; r < rows; ++r) {
        for (long g = 0; g < G; ++g) {
            std::uint32_t base;
            if (f == Family::Differential && g == 0)
                base = 1; // delta column handled below
            else
                base = bases[g][r];
            std::uint32_t factor = 1;
            for (long j = 0; j <= degree; ++j) {
                std::uint32_t v;
                if (f == Family::Recurrence)
                    v = F.mul(base, factor);
                else if (f == Family::Differential && g == 0)
                    v = (r == j) ? 1u : 0u;
                else
                    v = (r >= j) ? bases[g][r - j] : 0u;
                M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(g * (degree + 1) + j)) = v;
                if (f == Family::Recurrence) factor = F.mul(factor, F.reduce(r % F.p));
            }
        }
    }
    return M;
}

/// Degree-major scan matrix mod p: columns (j, g) for j = 0..deg_cap,
/// g ascending within each j.  Identifies the minimal degree at which a
/// nontrivial kernel appears for this order, in a single elimination.
inline exact::ModMatrix build_scan(Family f, const std::vector<std::vector<std::uint32_t>>& bases,
                                   long rows, long order, long deg_cap,
                                   const exact::PrimeField& F) {
    const long G = group_count(f, order);
    exact::ModMatrix M(static_cast<std::size_t>(rows),
                       static_cast<std::size_t>(G * (deg_cap + 1)));
    for (long r = 0; r < rows; ++r) {
        std::uint32_t factor = 1;
        const std::uint32_t rmod = F.reduce(static_cast<std::uint64_t>(r));
        for (long j = 0; j <= deg_cap; ++j) {
            for (long g = 0; g < G; ++g) {
                std::uint32_t v;
                if (f == Family::Recurrence)
                    v = F.mul(bases[g][r], factor);
                else if (f == Family::Differential && g == 0)
                    v = (r == j) ? 1u : 0u;
                else
                    v = (r >= j) ? bases[g][r - j] : 0u;
                M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j * G + g)) = v;
            }
            factor = F.mul(factor, rmod);
        }
    }
    return M;
}

/// Lattice of shapes in sweep order: unknown count ascending, then order
/// ascending, then degree ascending.
inline std::vector<std::array<long, 2>> sweep_lattice(Family f, long max_order, long max_degree,
                                                      long fit_terms, long margin) {
    std::vector<std::array<long, 2>> pts;
    for (long r = 1; r <= max_order; ++r) {
        const long rows = rows_for(f, r, fit_terms);
        for (long D = 0; D <= max_degree; ++D) {
            if (unknowns_for(f, r, D) + margin > rows) break;
            pts.push_back({r, D});
        }
    }
    std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        long ua = unknowns_for(f, a[0], a[1]);
        long ub = unknowns_for(f, b[0], b[1]);
        if (ua != ub) return ua < ub;
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] < b[1];
    });
    return pts;
}

/// Does an integer kernel vector (ascending layout) involve any group
/// beyond the ones a genuine relation of this family must reach past?
///   recurrence/algebraic: some group >= 1; ode: some group >= 2.
inline bool touches_required_groups(Family f, const std::vector<Int>& v, long degree) {
    const long skip = (f == Family::Differential) ? 2 : 1;
    for (std::size_t k = static_cast<std::size_t>(skip * (degree + 1)); k < v.size(); ++k)
        if (v[k] != 0) return true;
    return false;
}

/// Lexicographically smallest support among candidates (support lists
/// compared as ascending index sequences).
inline long select_by_support(const std::vector<std::vector<Int>>& vecs,
                              const std::vector<std::size_t>& eligible) {
    long best = -1;
    std::vector<std::size_t> best_support;
    for (std::size_t idx : eligible) {
        std::vector<std::size_t> sup;
        for (std::size_t k = 0; k < vecs[idx].size(); ++k)
            if (vecs[idx][k] != 0) sup.push_back(k);
        if (best < 0 || sup < best_support) {
            best = static_cast<long>(idx);
            best_support = std::move(sup);
        }
    }
    return best;
}

/// Builds the typed relation from an ascending-layout integer vector.
inline RelationVariant vector_to_relation(Family f, const std::vector<Int>& v, long order,
                                          long degree, const std::vector<Rat>& terms) {
    using exact::UniPoly;
    using exact::Var;
    auto poly_at = [&](long g, Var var) {
        UniPoly p(var);
        p.c.resize(static_cast<std::size_t>(degree) + 1, Rat(0));
        for (long j = 0; j <= degree; ++j) p.c[j] = Rat(v[g * (degree + 1) + j]);
        p.trim();
        return p;
    };
    switch (f) {
        case Family::Recurrence: {
            Recurrence rec;
            for (long g = 0; g <= order; ++g) rec.q.push_back(poly_at(g, Var::n));
            rec.canonicalize();
            const long d = rec.order();
            rec.initial.assign(terms.begin(),
                               terms.begin() + std::min<std::size_t>(terms.size(),
                                                                     static_cast<std::size_t>(d)));
            rec.support_offset = 0;
            rec.scan_exceptional(static_cast<long>(terms.size()) + 64);
            return rec;
        }
        case Family::Algebraic: {
            AlgebraicRelation rel;
            for (long g = 0; g <= order; ++g) rel.p.push_back(poly_at(g, Var::t));
            rel.canonicalize();
            return rel;
        }
        case Family::Differential: {
            DifferentialRelation rel;
            rel.inhom = poly_at(0, Var::t);
            for (long g = 1; g <= order + 1; ++g) rel.r.push_back(poly_at(g, Var::t));
            rel.canonicalize();
            return rel;
        }
    }
    throw domain_error("unknown family");
}

inline std::string relation_to_text(const RelationVariant& rel) {
    if (std::holds_alternative<PolynomialFormula>(rel))
        return to_string(std::get<PolynomialFormula>(rel));
    if (std::holds_alternative<AlgebraicRelation>(rel))
        return to_string(std::get<AlgebraicRelation>(rel));
    if (std::holds_alternative<Recurrence>(rel)) return to_string(std::get<Recurrence>(rel));
    if (std::holds_alternative<DifferentialRelation>(rel))
        return to_string(std::get<DifferentialRelation>(rel));
    return "";
}

inline long relation_order(const RelationVariant& rel) {
    if (std::holds_alternative<AlgebraicRelation>(rel))
        return std::get<AlgebraicRelation>(rel).degree();
    if (std::holds_alternative<Recurrence>(rel)) return std::get<Recurrence>(rel).order();
    if (std::holds_alternative<DifferentialRelation>(rel))
        return std::get<DifferentialRelation>(rel).order();
    return -1;
}

inline long relation_degree(const RelationVariant& rel) {
    if (std::holds_alternative<PolynomialFormula>(rel))
        return std::get<PolynomialFormula>(rel).degree();
    if (std::holds_alternative<AlgebraicRelation>(rel))
        return std::get<AlgebraicRelation>(rel).degree_t();
    if (std::holds_alternative<Recurrence>(rel)) return std::get<Recurrence>(rel).degree();
    if (std::holds_alternative<DifferentialRelation>(rel))
        return std::get<DifferentialRelation>(rel).degree();
    return -1;
}

/// First verification index for held-out checking: the first window row
/// that reads at least one term beyond the fit prefix.
inline long heldout_from(Family f, long fit, long order) {
    switch (f) {
        case Family::Recurrence: return fit - order;
        case Family::Algebraic: return fit;
        case Family::Differential: return fit - order;
    }
    return fit;
}

/// Full-window exact verification of a candidate; fills report fields and
/// returns true when the relation holds everywhere with enough held-out
/// depth.
inline bool accept_candidate(Family f, const RelationVariant& rel, const std::vector<Rat>& terms,
                             long fit, const GuessOptions& opt, GuessReport& rep) {
    VerifyResult full = verify_relation(rel, terms, 0);
    if (!full.reached_end || full.first_failure >= 0) return false;
    long from = std::max(0l, heldout_from(f, fit, relation_order(rel)));
    VerifyResult held = verify_relation(rel, terms, from);
    if (!held.reached_end || held.first_failure >= 0) return false;
    if (held.depth < opt.min_verify) return false;
    rep.relation = rel;
    rep.relation_text = relation_to_text(rel);
    rep.verification_depth = held.depth;
    rep.skipped_indices = held.skipped;
    rep.found_order = relation_order(rel);
    rep.found_degree = relation_degree(rel);
    rep.status = GuessStatus::VerifiedConjecture;
    return true;
}

/// The exact-route sweep: per-shape fraction-free nullspace.
inline bool sweep_exact(Family f, const std::vector<Rat>& terms, long max_order, long max_degree,
                        long fit, const GuessOptions& opt, const Stopwatch& clock,
                        GuessReport& rep) {
    auto lattice = sweep_lattice(f, max_order, max_degree, fit, opt.margin);
    if (lattice.empty()) {
        rep.status = GuessStatus::InsufficientTerms;
        rep.note = "no shape fits inside the " + std::to_string(fit) + "-term window";
        return false;
    }
    long cached_order = -1;
    std::vector<std::vector<Rat>> bases;
    for (const auto& [r, D] : lattice) {
        if (clock.expired()) {
            rep.status = GuessStatus::ResourceExceeded;
            rep.note = "time cap hit at shape (" + std::to_string(r) + "," + std::to_string(D) + ")";
            return false;
        }
        const long rows = rows_for(f, r, fit);
        if (r != cached_order) {
            bases = group_bases(f, r, terms, rows);
            cached_order = r;
        }
        exact::ExactMatrix M = build_exact(f, bases, rows, r, D);
        auto kernel = nullspace(M);
        if (kernel.empty()) continue;
        std::vector<std::size_t> eligible;
        for (std::size_t k = 0; k < kernel.size(); ++k)
            if (touches_required_groups(f, kernel[k], D)) eligible.push_back(k);
        if (eligible.empty()) continue;
        long sel = select_by_support(kernel, eligible);
        rep.kernel_dimension = static_cast<long>(kernel.size());
        RelationVariant rel = vector_to_relation(f, kernel[static_cast<std::size_t>(sel)], r, D, terms);
        if (accept_candidate(f, rel, terms, fit, opt, rep)) return true;
    }
    return false;
}

/// One modular scan of a single order: returns the minimal degree (within
/// deg_cap) at which a kernel appears mod the given prime, or -1.
inline long scan_min_degree(Family f, const std::vector<Rat>& terms, long order, long deg_cap,
                            long fit, const exact::PrimeField& F) {
    const long rows = rows_for(f, order, fit);
    if (rows < 1 || deg_cap < 0) return -1;
    std::vector<std::vector<std::uint32_t>> bases;
    if (!group_bases_mod(f, order, terms, rows, F, bases)) return -2; // bad prime
    exact::ModMatrix M = build_scan(f, bases, rows, order, deg_cap, F);
    std::vector<std::size_t> pivots = exact::mod_forward_eliminate(M, F);
    std::vector<bool> is_pivot(M.cols, false);
    for (std::size_t pc : pivots) is_pivot[pc] = true;
    const long G = group_count(f, order);
    for (std::size_t k = 0; k < M.cols; ++k)
        if (!is_pivot[k]) return static_cast<long>(k) / G;
    return -1;
}

/// The modular-route sweep: scan each order once mod a large prime to find
/// its minimal fitting degree, take candidates diagonally, reconstruct by
/// CRT + rational reconstruction, verify exactly.  A candidate that fails
/// (no kernel mod later primes, or a stable lift that does not verify)
/// re-enters the queue one degree higher, so an unlucky scan prime can
/// only delay the sweep, never derail it.
inline bool sweep_modular(Family f, const std::vector<Rat>& terms, long max_order, long max_degree,
                          long fit, const GuessOptions& opt, const Stopwatch& clock,
                          GuessReport& rep) {
    std::vector<std::uint32_t> primes = exact::modular_primes(opt.max_primes);
    std::size_t next_prime = 0;
    auto take_prime = [&]() -> std::uint32_t {
        if (next_prime >= primes.size())
            throw resource_exceeded("prime budget (" + std::to_string(opt.max_primes) +
                                    ") exhausted");
        return primes[next_prime++];
    };
    auto cap_for = [&](long r) {
        const long rows = rows_for(f, r, fit);
        long deg_cap = std::min(max_degree, rows / group_count(f, r) + 1);
        while (deg_cap >= 0 && unknowns_for(f, r, deg_cap) + opt.margin > rows) --deg_cap;
        return deg_cap;
    };

    struct Candidate {
        long order, degree, unknowns;
    };
    std::vector<Candidate> cands;

    try {
        // one elimination per order finds that order's minimal fitting degree
        exact::PrimeField F(take_prime());
        for (long r = 1; r <= max_order; ++r) {
            if (clock.expired()) {
                rep.status = GuessStatus::ResourceExceeded;
                rep.note = "time cap hit while scanning order " + std::to_string(r);
                return false;
            }
            const long deg_cap = cap_for(r);
            if (deg_cap < 0) continue;
            long d = scan_min_degree(f, terms, r, deg_cap, fit, F);
            if (d == -2) {
                // denominator hit this prime; retry the scan with the next
                F = exact::PrimeField(take_prime());
                --r;
                continue;
            }
            if (d >= 0) cands.push_back({r, d, unknowns_for(f, r, d)});
        }

        while (!cands.empty()) {
            // pop the diagonally smallest candidate
            std::size_t best = 0;
            for (std::size_t i = 1; i < cands.size(); ++i) {
                if (cands[i].unknowns < cands[best].unknowns ||
                    (cands[i].unknowns == cands[best].unknowns &&
                     cands[i].order < cands[best].order))
                    best = i;
            }
            const Candidate cand = cands[best];
            cands.erase(cands.begin() + static_cast<long>(best));

            const long rows = rows_for(f, cand.order, fit);
            exact::CrtAccumulator acc;
            std::vector<std::size_t> ref_free;
            long sel_free = -1; // free column whose basis vector we reconstruct
            std::size_t used = 0;
            std::vector<Rat> last_lift;
            int stable_failures = 0;
            bool abandon = false;
            while (!abandon) {
                if (clock.expired()) {
                    rep.status = GuessStatus::ResourceExceeded;
                    rep.note = "time cap hit while reconstructing shape (" +
                               std::to_string(cand.order) + "," + std::to_string(cand.degree) +
                               ")";
                    return false;
                }
                exact::PrimeField F(take_prime());
                std::vector<std::vector<std::uint32_t>> bases;
                if (!group_bases_mod(f, cand.order, terms, rows, F, bases)) continue;
                exact::ModMatrix M = build_mod(f, bases, rows, cand.order, cand.degree, F);
                std::vector<std::size_t> free_cols;
                auto kernel = exact::mod_kernel_basis(std::move(M), F, &free_cols);
                if (kernel.empty()) {
                    // the scan prime overstated the kernel; this exact shape is dead
                    abandon = true;
                    break;
                }
                if (ref_free.empty()) {
                    ref_free = free_cols;
                    // reconstruction target: smallest free column whose basis
                    // vector touches the required groups (mod p support)
                    const long skip = (f == Family::Differential) ? 2 : 1;
                    for (std::size_t k = 0; k < kernel.size(); ++k) {
                        bool touches = false;
                        for (std::size_t c = static_cast<std::size_t>(skip * (cand.degree + 1));
                             c < kernel[k].size(); ++c)
                            if (kernel[k][c] != 0) {
                                touches = true;
                                break;
                            }
                        if (touches) {
                            sel_free = static_cast<long>(free_cols[k]);
                            break;
                        }
                    }
                    if (sel_free < 0) {
                        abandon = true; // kernel exists but no vector is a relation
                        break;
                    }
                    rep.kernel_dimension = static_cast<long>(kernel.size());
                } else if (free_cols != ref_free) {
                    continue; // rank profile differs mod this prime; discard it
                }
                std::size_t which = 0;
                while (which < free_cols.size() &&
                       free_cols[which] != static_cast<std::size_t>(sel_free))
                    ++which;
                if (which == free_cols.size()) continue;
                acc.add(kernel[which], F.p);
                ++used;
                rep.primes_used += 1;
                // attempt a lift at powers of two
                if ((used & (used - 1)) != 0 || used < 4) continue;
                auto lift = exact::rational_reconstruct_vector(acc);
                if (!lift) continue;
                std::vector<Int> vec = exact::canonical_integer_vector(*lift);
                RelationVariant rel;
                try {
                    rel = vector_to_relation(f, vec, cand.order, cand.degree, terms);
                } catch (const domain_error&) {
                    abandon = true;
                    break;
                }
                if (accept_candidate(f, rel, terms, fit, opt, rep)) return true;
                // the same wrong lift twice in a row will not improve
                if (!last_lift.empty() && *lift == last_lift) {
                    if (++stable_failures >= 2) abandon = true;
                } else {
                    stable_failures = 0;
                    last_lift = *lift;
                }
            }
            // the shape failed; its order may still fit at a higher degree
            if (cand.degree + 1 <= cap_for(cand.order))
                cands.push_back({cand.order, cand.degree + 1,
                                 unknowns_for(f, cand.order, cand.degree + 1)});
        }
    } catch (const resource_exceeded& e) {
        rep.status = GuessStatus::ResourceExceeded;
        rep.note = e.what();
        return false;
    }
    return false;
}

/// Route choice per the configured thresholds.
inline bool use_modular(Family f, const std::vector<Rat>& terms, long max_order, long max_degree,
                        long fit, const GuessOptions& opt) {
    if (opt.force_exact) return false;
    if (opt.force_modular) return true;
    long max_unknowns = 0;
    for (long r = 1; r <= max_order; ++r) {
        const long rows = rows_for(f, r, fit);
        long deg_cap = max_degree;
        while (deg_cap >= 0 && unknowns_for(f, r, deg_cap) + opt.margin > rows) --deg_cap;
        if (deg_cap >= 0) max_unknowns = std::max(max_unknowns, unknowns_for(f, r, deg_cap));
    }
    if (max_unknowns >= opt.modular_unknown_threshold) return true;
    std::size_t max_bits = 0;
    for (const Rat& t : terms)
        max_bits = std::max({max_bits, mpz_sizeinbase(t.get_num().get_mpz_t(), 2),
                             mpz_sizeinbase(t.get_den().get_mpz_t(), 2)});
    return max_unknowns * static_cast<long>(max_bits) >= opt.modular_work_threshold;
}

inline GuessReport run_sweep(Family f, const std::vector<Rat>& terms, long max_order,
                             long max_degree, const GuessOptions& opt) {
    Stopwatch clock;
    clock.cap_ms = opt.time_cap_ms;
    GuessReport rep;
    rep.max_order_bound = max_order;
    rep.max_degree_bound = max_degree;
    if (terms.empty()) throw domain_error("no terms");
    if (max_order < 1 || max_degree < 0) throw domain_error("bounds must be positive");
    bool degenerate = true;
    for (const Rat& t : terms)
        if (t != 0) {
            degenerate = false;
            break;
        }
    if (degenerate) {
        rep.status = GuessStatus::DegenerateInput;
        rep.note = "all supplied terms are zero";
        return rep;
    }
    const long T = static_cast<long>(terms.size());
    const long fit = fit_count(T, opt);
    rep.fit_terms = fit;
    rep.verify_terms = T - fit;
    if (rows_for(f, 1, fit) < unknowns_for(f, 1, 0) + opt.margin) {
        rep.status = GuessStatus::InsufficientTerms;
        rep.note = "need at least " +
                   std::to_string(unknowns_for(f, 1, 0) + opt.margin + (f == Family::Algebraic ? 0 : 1)) +
                   " fit terms for the smallest shape; have " + std::to_string(fit);
        return rep;
    }
    if (rep.verify_terms < opt.min_verify) {
        rep.status = GuessStatus::InsufficientTerms;
        rep.note = "verification slice has " + std::to_string(rep.verify_terms) +
                   " terms; minimum is " + std::to_string(opt.min_verify);
        return rep;
    }
    bool modular = use_modular(f, terms, max_order, max_degree, fit, opt);
    rep.route = modular ? GuessRoute::Modular : GuessRoute::Exact;
    if (modular)
        sweep_modular(f, terms, max_order, max_degree, fit, opt, clock, rep);
    else
        sweep_exact(f, terms, max_order, max_degree, fit, opt, clock, rep);
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

} // namespace detail

/// Canonical grammar text of any relation variant.
inline std::string relation_text(const RelationVariant& rel) {
    return detail::relation_to_text(rel);
}

// ---------------------------------------------------------------------------
// public guessers

/// Lowest-degree polynomial through the fit prefix, accepted only if it
/// reproduces every remaining term.
inline GuessReport guess_polynomial(const std::vector<exact::Rat>& terms,
                                    const GuessOptions& opt = {}) {
    using exact::Rat;
    detail::Stopwatch clock;
    clock.cap_ms = opt.time_cap_ms;
    GuessReport rep;
    rep.route = GuessRoute::Exact;
    if (static_cast<long>(terms.size()) < 4)
        throw domain_error("guess_polynomial needs at least 4 terms");
    const long T = static_cast<long>(terms.size());
    const long fit = detail::fit_count(T, opt);
    rep.fit_terms = fit;
    rep.verify_terms = T - fit;
    bool degenerate = true;
    for (const Rat& t : terms)
        if (t != 0) degenerate = false;
    if (degenerate) {
        rep.status = GuessStatus::DegenerateInput;
        rep.note = "all supplied terms are zero";
        return rep;
    }
    // forward differences on the fit prefix; the first all-zero row gives
    // the minimal interpolating degree
    const long deg_cap = std::min(fit - 1, T / 2);
    std::vector<Rat> diff(terms.begin(), terms.begin() + fit);
    long degree = -1;
    for (long k = 0; k <= deg_cap; ++k) {
        bool zero = true;
        for (long i = 0; i + k < fit; ++i)
            if (diff[i] != 0) {
                zero = false;
                break;
            }
        if (zero) {
            degree = k - 1;
            break;
        }
        if (k == deg_cap) break;
        for (long i = 0; i + k + 1 < fit; ++i) diff[i] = diff[i + 1] - diff[i];
    }
    if (degree == -1 && deg_cap == fit - 1) degree = fit - 1; // saturated: use full prefix
    if (degree < 0) {
        rep.status = GuessStatus::NoFitWithinBounds;
        rep.note = "no polynomial of degree <= " + std::to_string(deg_cap) +
                   " interpolates the fit prefix";
        rep.max_degree_bound = deg_cap;
        return rep;
    }
    // Newton form from the difference table: p(n) = sum_k d_k * C(n, k)
    std::vector<Rat> d(terms.begin(), terms.begin() + fit);
    exact::UniPoly poly(exact::Var::n);
    exact::UniPoly binom = exact::UniPoly::constant(exact::Var::n, 1); // C(n,0)
    for (long k = 0; k <= degree; ++k) {
        poly = poly + binom * d[0];
        if (k == degree) break;
        for (long i = 0; i + 1 < fit - k; ++i) d[i] = d[i + 1] - d[i];
        // C(n, k+1) = C(n, k) * (n - k) / (k + 1)
        exact::UniPoly lin(exact::Var::n, {Rat(-k), Rat(1)});
        binom = binom * lin * Rat(1, k + 1);
    }
    PolynomialFormula formula{poly};
    VerifyResult full = verify_formula(formula, terms, 0);
    rep.max_degree_bound = deg_cap;
    if (!full.reached_end || full.first_failure >= 0) {
        rep.status = GuessStatus::NoFitWithinBounds;
        rep.note = full.first_failure >= 0
                       ? "interpolant broken by term at index " + std::to_string(full.first_failure)
                       : "verification incomplete";
        rep.elapsed_ms = clock.elapsed_ms();
        return rep;
    }
    VerifyResult held = verify_formula(formula, terms, fit);
    if (held.depth < opt.min_verify) {
        rep.status = GuessStatus::InsufficientTerms;
        rep.note = "only " + std::to_string(held.depth) + " verification terms; minimum is " +
                   std::to_string(opt.min_verify);
        rep.elapsed_ms = clock.elapsed_ms();
        return rep;
    }
    rep.status = GuessStatus::VerifiedConjecture;
    rep.relation = formula;
    rep.relation_text = detail::relation_to_text(rep.relation);
    rep.verification_depth = held.depth;
    rep.found_degree = formula.degree();
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

/// Minimal algebraic equation sum p_i(t) C^i = 0 within the given bounds.
inline GuessReport guess_algebraic(const std::vector<exact::Rat>& terms, long max_deg_C,
                                   long max_deg_t, const GuessOptions& opt = {}) {
    return detail::run_sweep(detail::Family::Algebraic, terms, max_deg_C, max_deg_t, opt);
}

/// Minimal P-recurrence sum q_i(n) a(n+i) = 0 within the given bounds.
inline GuessReport guess_recurrence(const std::vector<exact::Rat>& terms, long max_order,
                                    long max_degree, const GuessOptions& opt = {}) {
    return detail::run_sweep(detail::Family::Recurrence, terms, max_order, max_degree, opt);
}

/// Minimal linear ODE sum r_i(t) C^(i) + inhom(t) = 0 within bounds.
inline GuessReport guess_ode(const std::vector<exact::Rat>& terms, long max_order, long max_degree,
                             const GuessOptions& opt = {}) {
    return detail::run_sweep(detail::Family::Differential, terms, max_order, max_degree, opt);
}

} // namespace walkguess::ansatz
