#pragma once

/// @file modular.hpp
/// Word-size prime fields and modular linear algebra, used as the fast
/// route for large fitting systems: solve mod several 31-bit primes,
/// combine by CRT, lift to rationals by rational reconstruction, then let
/// the caller verify the lifted result exactly.  A mod-p kernel can only
/// be too large (when p divides a pivot minor), never too small, so a
/// trivial kernel mod one prime rules a shape out for good; apparent fits
/// are confirmed or killed by the exact verification step.

#include <cstdint>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace walkguess::exact {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint32_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // deterministic Miller-Rabin witnesses for n < 2^32
    for (std::uint64_t a : {2ull, 7ull, 61ull}) {
        std::uint64_t x = 1, base = a % n;
        if (base == 0) continue;
        std::uint64_t e = d;
        std::uint64_t b = base;
        while (e) {
            if (e & 1) x = x * b % n;
            b = b * b % n;
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// The `count` largest primes below 2^31, in descending order.
inline std::vector<std::uint32_t> modular_primes(std::size_t count) {
    std::vector<std::uint32_t> ps;
    ps.reserve(count);
    for (std::uint32_t c = 0x7fffffffu; ps.size() < count; c -= 2) {
        if (is_prime_u32(c)) ps.push_back(c);
        if (c < 3) throw resource_exceeded("prime supply exhausted");
    }
    return ps;
}

/// Arithmetic mod a fixed prime p < 2^31 with Barrett reduction
/// (products fit in 62 bits, one 128-bit multiply per reduction).
struct PrimeField {
    std::uint32_t p;
    std::uint64_t magic; // floor((2^64 - 1) / p)

    explicit PrimeField(std::uint32_t prime) : p(prime), magic(~0ull / prime) {
        if (prime < 2 || prime > 0x7fffffffu) throw domain_error("prime out of range");
    }
    std::uint32_t reduce(std::uint64_t t) const {
        std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(t) * magic) >> 64);
        std::uint64_t r = t - q * p;
        while (r >= p) r -= p;
        return static_cast<std::uint32_t>(r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return reduce(static_cast<std::uint64_t>(a) * b);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t acc = 1, b = a;
        while (e) {
            if (e & 1) acc = mul(acc, b);
            b = mul(b, b);
            e >>= 1;
        }
        return acc;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw domain_error("inverse of zero");
        return pow(a, p - 2);
    }
    std::uint32_t reduce_int(const Int& z) const {
        std::uint32_t r = static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
        return r;
    }
    /// Image of a rational; empty when the denominator vanishes mod p
    /// (the prime must then be discarded for this data set).
    std::optional<std::uint32_t> reduce_rat(const Rat& q) const {
        std::uint32_t den = reduce_int(q.get_den());
        if (den == 0) return std::nullopt;
        return mul(reduce_int(q.get_num()), inv(den));
    }
};

struct ModMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;

    ModMatrix() = default;
    ModMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place forward elimination, left to right; returns the pivot columns
/// in ascending order.  Whether a column becomes a pivot depends only on
/// the columns to its left, so the result classifies every column-prefix
/// at once: the prefix of width w has a nontrivial kernel iff some
/// non-pivot column lies below w.
inline std::vector<std::size_t> mod_forward_eliminate(ModMatrix& M, const PrimeField& F) {
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < M.cols && pr < M.rows; ++pc) {
        std::size_t sel = pr;
        while (sel < M.rows && M.at(sel, pc) == 0) ++sel;
        if (sel == M.rows) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(pr, j));
        const std::uint32_t inv = F.inv(M.at(pr, pc));
        for (std::size_t j = pc; j < M.cols; ++j) M.at(pr, j) = F.mul(M.at(pr, j), inv);
        for (std::size_t i = pr + 1; i < M.rows; ++i) {
            const std::uint32_t head = M.at(i, pc);
            if (head == 0) continue;
            std::uint32_t* ri = &M.a[i * M.cols];
            const std::uint32_t* rp = &M.a[pr * M.cols];
            for (std::size_t j = pc; j < M.cols; ++j)
                ri[j] = F.sub(ri[j], F.mul(head, rp[j]));
        }
        pivots.push_back(pc);
        ++pr;
    }
    return pivots;
}

/// Kernel basis mod p: one vector per free column (in free-column order),
/// normalized so the free coordinate equals 1.  free_cols_out, when given,
/// receives the free-column indices.
inline std::vector<std::vector<std::uint32_t>> mod_kernel_basis(
    ModMatrix M, const PrimeField& F, std::vector<std::size_t>* free_cols_out = nullptr) {
    std::vector<std::size_t> pivots = mod_forward_eliminate(M, F);
    // back-substitution to reduced form (clear above each pivot)
    for (std::size_t r = pivots.size(); r-- > 0;) {
        std::size_t pc = pivots[r];
        for (std::size_t i = 0; i < r; ++i) {
            const std::uint32_t head = M.at(i, pc);
            if (head == 0) continue;
            std::uint32_t* ri = &M.a[i * M.cols];
            const std::uint32_t* rr = &M.a[r * M.cols];
            for (std::size_t j = pc; j < M.cols; ++j)
                ri[j] = F.sub(ri[j], F.mul(head, rr[j]));
        }
    }
    std::vector<bool> is_pivot(M.cols, false);
    for (std::size_t pc : pivots) is_pivot[pc] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    std::vector<std::size_t> free_cols;
    for (std::size_t f = 0; f < M.cols; ++f) {
        if (is_pivot[f]) continue;
        free_cols.push_back(f);
        std::vector<std::uint32_t> v(M.cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(M.at(r, f));
        basis.push_back(std::move(v));
    }
    if (free_cols_out) *free_cols_out = std::move(free_cols);
    return basis;
}

/// Incremental Chinese remaindering of a residue vector over a growing
/// set of pairwise-distinct primes.  Values are kept in [0, modulus).
struct CrtAccumulator {
    Int modulus = 1;
    std::vector<Int> value;

    void add(const std::vector<std::uint32_t>& residues, std::uint32_t p) {
        if (value.empty()) {
            value.assign(residues.size(), Int(0));
            for (std::size_t i = 0; i < residues.size(); ++i) value[i] = residues[i];
            modulus = p;
            return;
        }
        if (residues.size() != value.size()) throw domain_error("residue vector size changed");
        PrimeField F(p);
        const std::uint32_t m_inv = F.inv(F.reduce_int(modulus));
        for (std::size_t i = 0; i < value.size(); ++i) {
            std::uint32_t cur = F.reduce_int(value[i]);
            std::uint32_t delta = F.mul(F.sub(residues[i], cur), m_inv);
            if (delta) value[i] += modulus * delta;
        }
        modulus *= p;
    }
};

/// Wang-style rational reconstruction: the unique p/q with |p|, q bounded
/// by sqrt(m/2), q invertible mod m, p/q = a (mod m), when it exists.
inline std::optional<Rat> rational_reconstruct(const Int& a, const Int& m) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    Int s0 = 0, s1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0) return std::nullopt;
    Int num = r1, den = s1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound) return std::nullopt;
    if (gcd(num, den) != 1) return std::nullopt;
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Reconstructs every CRT-combined entry; empty when any entry fails
/// (more primes are then needed).
inline std::optional<std::vector<Rat>> rational_reconstruct_vector(const CrtAccumulator& acc) {
    std::vector<Rat> out;
    out.reserve(acc.value.size());
    for (const Int& v : acc.value) {
        auto q = rational_reconstruct(v, acc.modulus);
        if (!q) return std::nullopt;
        out.push_back(*q);
    }
    return out;
}

} // namespace walkguess::exact
