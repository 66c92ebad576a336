#pragma once

/// @file enumerate.hpp
/// Forward dynamic programming over walk states: the ground-truth counter
/// every other view of the data is validated against.  States are the
/// reachable non-negative positions; their weights are exact integers
/// (unit weights) or rationals (weighted steps).

#include <unordered_map>
#include <vector>

#include "series.hpp"
#include "stepset.hpp"

namespace walkguess::model {

using exact::CatalyticPoly;

struct DpOptions {
    std::size_t max_states = 5'000'000; // cap on simultaneously live positions
};

namespace detail {

// positions fit comfortably in 21 bits per coordinate for every budget
// this library accepts (order * largest step entry < 2^21)
inline std::uint64_t encode_position(const std::array<int, 3>& p) {
    return (static_cast<std::uint64_t>(p[0])) | (static_cast<std::uint64_t>(p[1]) << 21) |
           (static_cast<std::uint64_t>(p[2]) << 42);
}

template <class Value>
CountTable dp_run(const StepSet& s, const CountMode& mode, long N, const DpOptions& opt,
                  const std::vector<Value>& step_weights) {
    s.validate();
    mode.validate(s.dim);
    if (N < 0) throw domain_error("order must be >= 0");
    if (static_cast<long long>(N) * s.max_positive_entry() >= (1ll << 21))
        throw resource_exceeded("order too large for position encoding");

    std::unordered_map<std::uint64_t, Value> live;
    live.reserve(64);
    live[encode_position({0, 0, 0})] = Value(1);

    CountTable table;
    table.steps = s;
    table.mode = mode;
    table.order = N;
    table.values.reserve(static_cast<std::size_t>(N) + 1);

    const std::uint64_t origin = encode_position({0, 0, 0});
    const std::uint64_t target =
        mode.kind == CountMode::Kind::EndpointSlice ? encode_position(mode.target) : origin;

    auto record = [&](const std::unordered_map<std::uint64_t, Value>& m) {
        Value v(0);
        switch (mode.kind) {
            case CountMode::Kind::ReturnToOrigin: {
                auto it = m.find(origin);
                if (it != m.end()) v = it->second;
                break;
            }
            case CountMode::Kind::AnyEndpoint:
                for (const auto& [k, w] : m) v += w;
                break;
            case CountMode::Kind::EndpointSlice: {
                auto it = m.find(target);
                if (it != m.end()) v = it->second;
                break;
            }
        }
        table.values.push_back(Rat(v));
    };

    record(live);
    for (long n = 1; n <= N; ++n) {
        std::unordered_map<std::uint64_t, Value> next;
        next.reserve(live.size() * 2);
        for (const auto& [key, w] : live) {
            std::array<int, 3> pos{static_cast<int>(key & 0x1fffff),
                                   static_cast<int>((key >> 21) & 0x1fffff),
                                   static_cast<int>((key >> 42) & 0x1fffff)};
            for (std::size_t si = 0; si < s.steps.size(); ++si) {
                std::array<int, 3> q = pos;
                bool ok = true;
                for (int d = 0; d < s.dim; ++d) {
                    q[d] += s.steps[si][d];
                    if (q[d] < 0) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                Value contrib = w * step_weights[si];
                auto [it, fresh] = next.try_emplace(encode_position(q), contrib);
                if (!fresh) it->second += contrib;
            }
            if (next.size() > opt.max_states)
                throw resource_exceeded("live state count exceeded cap of " +
                                        std::to_string(opt.max_states));
        }
        live = std::move(next);
        record(live);
    }
    return table;
}

} // namespace detail

/// Exact counts of n-step walks staying in the non-negative orthant,
/// filtered by mode, for n = 0..N.
inline CountTable enumerate_dp(const StepSet& s, const CountMode& mode, long N,
                               const DpOptions& opt = {}) {
    if (s.has_weights()) {
        std::vector<Rat> w(s.weights->begin(), s.weights->end());
        return detail::dp_run<Rat>(s, mode, N, opt, w);
    }
    std::vector<Int> w(s.steps.size(), Int(1));
    return detail::dp_run<Int>(s, mode, N, opt, w);
}

/// The full endpoint-resolved picture: element n is the polynomial in the
/// catalytic variables whose coefficient of x^i[y^j] counts n-step walks
/// ending at that position.  Dimension must be 1 or 2 (the catalytic view).
inline std::vector<CatalyticPoly> dp_position_polynomials(const StepSet& s, long N,
                                                          const DpOptions& opt = {}) {
    s.validate();
    if (s.dim > 2) throw domain_error("position polynomials need dimension 1 or 2");
    if (N < 0) throw domain_error("order must be >= 0");
    if (static_cast<long long>(N) * s.max_positive_entry() >= (1ll << 21))
        throw resource_exceeded("order too large for position encoding");

    std::unordered_map<std::uint64_t, Rat> live;
    live[detail::encode_position({0, 0, 0})] = 1;
    std::vector<CatalyticPoly> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    auto snapshot = [&]() {
        CatalyticPoly p(s.dim);
        for (const auto& [key, w] : live)
            p.add_term({static_cast<int>(key & 0x1fffff), static_cast<int>((key >> 21) & 0x1fffff)},
                       w);
        out.push_back(std::move(p));
    };
    snapshot();
    for (long n = 1; n <= N; ++n) {
        std::unordered_map<std::uint64_t, Rat> next;
        next.reserve(live.size() * 2);
        for (const auto& [key, w] : live) {
            std::array<int, 3> pos{static_cast<int>(key & 0x1fffff),
                                   static_cast<int>((key >> 21) & 0x1fffff), 0};
            for (std::size_t si = 0; si < s.steps.size(); ++si) {
                std::array<int, 3> q = pos;
                bool ok = true;
                for (int d = 0; d < s.dim; ++d) {
                    q[d] += s.steps[si][d];
                    if (q[d] < 0) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                Rat contrib = w * s.weight(si);
                auto [it, fresh] = next.try_emplace(detail::encode_position(q), contrib);
                if (!fresh) it->second += contrib;
            }
            if (next.size() > opt.max_states)
                throw resource_exceeded("live state count exceeded cap of " +
                                        std::to_string(opt.max_states));
        }
        live = std::move(next);
        snapshot();
    }
    return out;
}

/// Survival probabilities for a weighted step set.  Weights must be
/// present and positive; when they do not sum to 1 they are rescaled and
/// the result is flagged as normalized.
inline CountTable probability_table(const StepSet& s, const CountMode& mode, long N,
                                    const DpOptions& opt = {}) {
    if (!s.has_weights()) throw domain_error("probability_table needs weighted steps");
    s.validate();
    Rat sum(0);
    for (const Rat& w : *s.weights) sum += w;
    StepSet norm = s;
    bool normalized = false;
    if (sum != 1) {
        normalized = true;
        std::vector<Rat> w;
        w.reserve(s.weights->size());
        for (const Rat& v : *s.weights) w.push_back(v / sum);
        norm.weights = std::move(w);
    }
    CountTable t = enumerate_dp(norm, mode, N, opt);
    t.weights_normalized = normalized;
    return t;
}

} // namespace walkguess::model
