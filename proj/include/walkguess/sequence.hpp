#pragma once

/// @file sequence.hpp
/// Sequence plumbing: pull-based streams with an honest, testable memory
/// contract, recurrence unrolling, and the independent Catalan oracles
/// used to cross-check guessed relations.

#include <map>
#include <memory>
#include <vector>

#include "rational.hpp"
#include "relations.hpp"

namespace walkguess::seqkit {

using exact::Int;
using exact::Rat;

/// Pull-based stream of exact terms.  state_size() exposes the retained
/// state so memory contracts can be asserted, not just promised.
struct SequenceStream {
    virtual ~SequenceStream() = default;
    virtual Rat next() = 0;
    virtual std::size_t state_size() const = 0;
    virtual long position() const = 0; // index of the next emitted term
};

/// Unrolls a P-recurrence keeping exactly `order` previous values.  Where
/// the leading coefficient vanishes the stream cannot advance on its own;
/// such terms must be pinned up front or the stream throws, naming the
/// index it cannot produce.
class RecurrenceStream final : public SequenceStream {
public:
    explicit RecurrenceStream(ansatz::Recurrence rec, std::map<long, Rat> pinned = {})
        : rec_(std::move(rec)), pinned_(std::move(pinned)) {
        const long d = rec_.order();
        lead_in_ = d + std::max(0l, rec_.support_offset);
        if (static_cast<long>(rec_.initial.size()) < lead_in_)
            throw insufficient_terms("recurrence needs " + std::to_string(lead_in_) +
                                     " initial values, got " +
                                     std::to_string(rec_.initial.size()));
        window_.assign(static_cast<std::size_t>(d), Rat(0));
    }

    Rat next() override {
        const long d = rec_.order();
        Rat out;
        if (n_ < lead_in_) {
            out = rec_.initial[static_cast<std::size_t>(n_)];
        } else {
            const long row = n_ - d; // the relation instance that determines a(n_)
            const Rat lead = rec_.q.back().eval(Rat(row));
            if (lead == 0) {
                auto pin = pinned_.find(n_);
                if (pin == pinned_.end()) throw exceptional_index(n_);
                out = pin->second;
            } else {
                Rat acc(0);
                for (long i = 0; i < d; ++i)
                    acc += rec_.q[static_cast<std::size_t>(i)].eval(Rat(row)) *
                           window_[static_cast<std::size_t>((head_ + i) % d)];
                out = -acc / lead;
            }
        }
        if (n_ < d) {
            window_[static_cast<std::size_t>(n_)] = out;
        } else {
            window_[static_cast<std::size_t>(head_)] = out;
            head_ = (head_ + 1) % d;
        }
        ++n_;
        return out;
    }

    std::size_t state_size() const override { return window_.size(); }
    long position() const override { return n_; }

private:
    ansatz::Recurrence rec_;
    std::map<long, Rat> pinned_;
    std::vector<Rat> window_; // ring buffer of the last `order` values
    long lead_in_ = 0;        // terms supplied by `initial` before the relation engages
    long head_ = 0;           // window_[(head_ + i) % order] = a(position - order + i)
    long n_ = 0;
};

/// First N+1 terms of a recurrence.  `pinned` supplies values at indices
/// the recurrence cannot determine (vanishing leading coefficient).
inline std::vector<Rat> unroll(const ansatz::Recurrence& rec, long N,
                               const std::map<long, Rat>& pinned = {}) {
    if (N < 0) throw domain_error("negative unroll length");
    RecurrenceStream s(rec, pinned);
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    for (long n = 0; n <= N; ++n) out.push_back(s.next());
    return out;
}

/// Catalan numbers by the defining convolution c(n+1) = sum c(i)c(n-i).
/// Deliberately remembers every term: its state grows with position,
/// in contrast to the fixed recurrence window.
class ConvolutionStream final : public SequenceStream {
public:
    Rat next() override {
        Int v;
        if (seen_.empty()) {
            v = 1;
        } else {
            for (std::size_t i = 0; i < seen_.size(); ++i)
                v += seen_[i] * seen_[seen_.size() - 1 - i];
        }
        seen_.push_back(v);
        return Rat(v);
    }
    std::size_t state_size() const override { return seen_.size(); }
    long position() const override { return static_cast<long>(seen_.size()); }

    const std::vector<Int>& terms() const { return seen_; }

private:
    std::vector<Int> seen_;
};

/// Catalan numbers c(0..N) by convolution, independent of any guessed
/// relation.
inline std::vector<Int> convolution_oracle(long N) {
    if (N < 0) throw domain_error("negative term count");
    ConvolutionStream s;
    for (long n = 0; n <= N; ++n) s.next();
    return s.terms();
}

/// binomial(2n, n) / (n + 1), exactly.
inline Int closed_form_catalan(long n) {
    if (n < 0) throw domain_error("negative index");
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    Int c;
    mpz_divexact_ui(c.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n) + 1);
    return c;
}

inline Int binomial_coefficient(long n, long k) {
    if (k < 0 || n < 0 || k > n) throw domain_error("binomial arguments out of range");
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

} // namespace walkguess::seqkit
