#pragma once

/// @file iterate.hpp
/// Truncated-series iteration of the walk functional equations.  The
/// enumerator F(t,x[,y]) is the fixed point of a contraction: every use of
/// F on the right-hand side is multiplied by t, so iterating the map from
/// F=1 pins one further t-coefficient per round.
///
/// 1D: F = 1 + t * sum over steps s of
///        w_s * x^s * F                                  (s >= 0)
///        w_s * x^s * (F - sum_{i<-s} x^i [x^i] F)        (s < 0)
///
/// 2D is the same with the quarter-plane inclusion-exclusion: for a step
/// with both coordinates negative, the x-slices and y-slices are removed
/// and the doubly-indexed slices added back, each multiplied by its
/// monomial.  The printed sources for this equation are easy to get wrong,
/// so the result is checked against the endpoint-resolved DP and any
/// divergence is reported as an error rather than papered over.

#include "enumerate.hpp"
#include "series.hpp"
#include "stepset.hpp"

namespace walkguess::model {

using exact::Rat;
using exact::TruncatedSeries;
using exact::coeff_slice_keep;
using exact::embed;
using exact::mul_t_power;
using exact::series_mul;
using exact::shift_var_pow;

namespace detail {

/// One application of the 1D functional-equation map at truncation order
/// F.order; the result is again valid to that order.
inline TruncatedSeries apply_map_1d(const StepSet& s, const TruncatedSeries& F) {
    TruncatedSeries acc = TruncatedSeries::constant(1, F.order, 1);
    for (std::size_t si = 0; si < s.steps.size(); ++si) {
        const int step = s.steps[si][0];
        TruncatedSeries H = F;
        if (step < 0)
            for (int i = 0; i < -step; ++i)
                H = H - shift_var_pow(coeff_slice_keep(F, 0, i), 0, i);
        H = shift_var_pow(H, 0, step);
        acc = acc + mul_t_power(H, 1) * s.weight(si);
    }
    return acc;
}

/// One application of the 2D quarter-plane map.
inline TruncatedSeries apply_map_2d(const StepSet& s, const TruncatedSeries& F) {
    TruncatedSeries acc = TruncatedSeries::constant(1, F.order, 2);
    for (std::size_t si = 0; si < s.steps.size(); ++si) {
        const int a = s.steps[si][0];
        const int b = s.steps[si][1];
        TruncatedSeries H = F;
        if (a < 0)
            for (int i = 0; i < -a; ++i)
                H = H - shift_var_pow(coeff_slice_keep(F, 0, i), 0, i);
        if (b < 0)
            for (int j = 0; j < -b; ++j)
                H = H - shift_var_pow(coeff_slice_keep(F, 1, j), 1, j);
        if (a < 0 && b < 0)
            for (int i = 0; i < -a; ++i)
                for (int j = 0; j < -b; ++j) {
                    TruncatedSeries piece =
                        coeff_slice_keep(coeff_slice_keep(F, 0, i), 1, j);
                    H = H + shift_var_pow(shift_var_pow(piece, 0, i), 1, j);
                }
        H = shift_var_pow(shift_var_pow(H, 0, a), 1, b);
        acc = acc + mul_t_power(H, 1) * s.weight(si);
    }
    return acc;
}

} // namespace detail

/// Order-N truncation of F(t,x) for a 1D step set, by iterating the map.
inline TruncatedSeries series_iterate_1d(const StepSet& s, long N) {
    s.validate();
    if (s.dim != 1) throw domain_error("series_iterate_1d needs dimension 1");
    TruncatedSeries F = TruncatedSeries::constant(1, N, 1);
    for (long k = 0; k <= N; ++k) F = detail::apply_map_1d(s, F);
    return F;
}

/// F - map(F): the zero series (to F.order) iff F is the fixed point.
inline TruncatedSeries functional_equation_residual_1d(const StepSet& s, const TruncatedSeries& F) {
    if (s.dim != 1) throw domain_error("residual_1d needs dimension 1");
    return F - detail::apply_map_1d(s, F);
}

/// Order-N truncation of F(t,x,y) for a 2D step set.  By default every
/// t-coefficient is compared against the endpoint-resolved DP and any
/// mismatch raises an error (the DP is the definition of the model).
inline TruncatedSeries series_iterate_2d(const StepSet& s, long N, bool validate_against_dp = true,
                                         const DpOptions& opt = {}) {
    s.validate();
    if (s.dim != 2) throw domain_error("series_iterate_2d needs dimension 2");
    TruncatedSeries F = TruncatedSeries::constant(1, N, 2);
    for (long k = 0; k <= N; ++k) F = detail::apply_map_2d(s, F);
    if (validate_against_dp) {
        std::vector<exact::CatalyticPoly> dp = dp_position_polynomials(s, N, opt);
        for (long n = 0; n <= N; ++n)
            if (F.coeff(n) != dp[static_cast<std::size_t>(n)])
                throw error("2D functional-equation iteration diverged from DP at order " +
                            std::to_string(n) + "; the printed equation form is wrong for this "
                            "step set");
    }
    return F;
}

inline TruncatedSeries functional_equation_residual_2d(const StepSet& s, const TruncatedSeries& F) {
    if (s.dim != 2) throw domain_error("residual_2d needs dimension 2");
    return F - detail::apply_map_2d(s, F);
}

namespace detail {

/// The quadratic contraction whose fixed point is G(t,x):
///   g <- 1 + 2xt*g + t*(-x + t + t*x^2)*g^2
inline TruncatedSeries apply_quadratic_map(const TruncatedSeries& g) {
    const long N = g.order;
    TruncatedSeries one = TruncatedSeries::constant(1, N, 1);
    TruncatedSeries lin = shift_var_pow(mul_t_power(g, 1), 0, 1) * Rat(2);
    // q(t,x) = -x + t + t x^2 laid out by t-order
    TruncatedSeries q(N, 1);
    q.set_coeff(0, exact::CatalyticPoly::monomial(1, {1, 0}, Rat(-1)));
    if (N >= 1) {
        exact::CatalyticPoly c1 = exact::CatalyticPoly::constant(1, Rat(1));
        c1.add_term({2, 0}, Rat(1));
        q.set_coeff(1, c1);
    }
    TruncatedSeries quad = mul_t_power(series_mul(q, series_mul(g, g)), 1);
    return one + lin + quad;
}

} // namespace detail

/// Order-N truncation of G(t,x), the explicit algebraic solution for the
/// step set {-1,1}, via its quadratic fixed-point map.
inline TruncatedSeries iterate_quadratic_map(long N) {
    TruncatedSeries g = TruncatedSeries::constant(1, N, 1);
    for (long k = 0; k <= N; ++k) g = detail::apply_quadratic_map(g);
    return g;
}

/// g - quadratic_map(g): zero to g.order iff g is the fixed point.
inline TruncatedSeries quadratic_map_residual(const TruncatedSeries& g) {
    return g - detail::apply_quadratic_map(g);
}

} // namespace walkguess::model
