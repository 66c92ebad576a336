#pragma once

/// @file pipeline.hpp
/// The end-to-end chain: enumerate a walk model exactly, compress away
/// structural zeros, try the requested ansatz families cheapest-first,
/// and keep only conjectures that survive held-out verification.

#include <string>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "guess.hpp"

namespace walkguess::ansatz {

struct PipelineBudget {
    long terms = 400;     // data points to enumerate (indices 0 .. terms-1)
    long max_order = 12;  // recurrence/ODE order cap; degree-in-C cap for algebraic
    long max_degree = 12; // coefficient-polynomial degree cap
    std::string ansatz = "auto"; // poly | alg | rec | ode | auto
    GuessOptions options;
};

struct PipelineReport {
    model::CountTable table;
    CompressResult compression;
    // one entry per attempted family, in attempt order
    std::vector<std::pair<std::string, GuessReport>> results;
    GuessStatus overall = GuessStatus::NoFitWithinBounds;
    std::uint64_t elapsed_ms = 0;
};

namespace detail {

inline std::vector<std::string> ansatz_list(const std::string& which) {
    if (which == "auto") return {"poly", "alg", "rec", "ode"};
    if (which == "poly" || which == "alg" || which == "rec" || which == "ode") return {which};
    throw domain_error("unknown ansatz '" + which + "' (expected poly|alg|rec|ode|auto)");
}

} // namespace detail

/// Guess against an already-computed term list.  Families run in the
/// given order; in auto mode the first verified conjecture wins and later
/// families are skipped.
inline PipelineReport guess_terms(const std::vector<exact::Rat>& terms,
                                  const PipelineBudget& budget) {
    detail::Stopwatch clock;
    clock.cap_ms = budget.options.time_cap_ms;
    PipelineReport rep;
    rep.compression = compress_zeros(terms);
    if (rep.compression.all_zero) {
        rep.overall = GuessStatus::DegenerateInput;
        rep.elapsed_ms = clock.elapsed_ms();
        return rep;
    }
    const std::vector<exact::Rat>& data = rep.compression.compressed;
    const bool stop_at_first = budget.ansatz == "auto";
    for (const std::string& family : detail::ansatz_list(budget.ansatz)) {
        GuessOptions opt = budget.options;
        if (opt.time_cap_ms != 0) {
            const std::uint64_t spent = clock.elapsed_ms();
            if (spent >= opt.time_cap_ms) {
                GuessReport out_of_time;
                out_of_time.status = GuessStatus::ResourceExceeded;
                out_of_time.note = "pipeline time budget exhausted before this family";
                rep.results.emplace_back(family, std::move(out_of_time));
                continue;
            }
            opt.time_cap_ms -= spent;
        }
        GuessReport r;
        try {
            if (family == "poly")
                r = guess_polynomial(data, opt);
            else if (family == "alg")
                r = guess_algebraic(data, budget.max_order, budget.max_degree, opt);
            else if (family == "rec")
                r = guess_recurrence(data, budget.max_order, budget.max_degree, opt);
            else
                r = guess_ode(data, budget.max_order, budget.max_degree, opt);
        } catch (const domain_error& e) {
            r.status = GuessStatus::InsufficientTerms;
            r.note = e.what();
        }
        const bool hit = r.verified();
        rep.results.emplace_back(family, std::move(r));
        if (hit && stop_at_first) break;
    }
    // overall: verified beats resource-exceeded beats no-fit beats insufficient
    bool any_verified = false, any_resource = false, any_nofit = false;
    for (const auto& [name, r] : rep.results) {
        any_verified |= r.status == GuessStatus::VerifiedConjecture;
        any_resource |= r.status == GuessStatus::ResourceExceeded;
        any_nofit |= r.status == GuessStatus::NoFitWithinBounds;
    }
    if (any_verified)
        rep.overall = GuessStatus::VerifiedConjecture;
    else if (any_resource)
        rep.overall = GuessStatus::ResourceExceeded;
    else if (any_nofit)
        rep.overall = GuessStatus::NoFitWithinBounds;
    else
        rep.overall = GuessStatus::InsufficientTerms;
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

/// Enumerate, compress, guess, verify.
inline PipelineReport guess_pipeline(const model::StepSet& steps, const model::CountMode& mode,
                                     const PipelineBudget& budget) {
    if (budget.terms < 1) throw domain_error("term budget must be positive");
    model::CountTable table = model::enumerate_dp(steps, mode, budget.terms - 1);
    PipelineReport rep = guess_terms(table.values, budget);
    rep.table = std::move(table);
    return rep;
}

} // namespace walkguess::ansatz
