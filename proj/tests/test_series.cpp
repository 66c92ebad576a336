#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <walkguess/series.hpp>

using namespace walkguess;
using exact::CatalyticPoly;
using exact::Rat;
using exact::TruncatedSeries;

namespace {

CatalyticPoly random_poly(std::mt19937_64& rng, int arity, int max_exp = 3) {
    std::uniform_int_distribution<int> coeff(-8, 8);
    std::uniform_int_distribution<int> e(0, max_exp);
    CatalyticPoly p(arity);
    for (int k = 0; k < 4; ++k) {
        std::array<int, 2> ex{arity >= 1 ? e(rng) : 0, arity >= 2 ? e(rng) : 0};
        p.add_term(ex, Rat(coeff(rng)));
    }
    return p;
}

TruncatedSeries random_series(std::mt19937_64& rng, long order, int arity) {
    TruncatedSeries s(order, arity);
    for (long m = 0; m <= order; ++m) s.set_coeff(m, random_poly(rng, arity));
    return s;
}

} // namespace

TEST_CASE("catalytic polynomial arithmetic on small cases") {
    CatalyticPoly x = CatalyticPoly::monomial(1, {1, 0}, Rat(1));
    CatalyticPoly one = CatalyticPoly::constant(1, Rat(1));

    CatalyticPoly s = x + one;     // x + 1
    CatalyticPoly sq = s * s;      // x^2 + 2x + 1
    CHECK(sq.coeff({2, 0}) == 1);
    CHECK(sq.coeff({1, 0}) == 2);
    CHECK(sq.coeff({0, 0}) == 1);
    CHECK(sq.total() == 4);

    CHECK((s - s).is_zero());
    CHECK((s * Rat(0)).is_zero());
    CHECK((sq - s * s).is_zero());

    using exact::PolyOp;
    CHECK(exact::poly_arith(s, x, PolyOp::add) == s + x);
    CHECK(exact::poly_arith(s, x, PolyOp::sub) == s - x);
    CHECK(exact::poly_arith(s, x, PolyOp::mul) == s * x);
}

TEST_CASE("catalytic polynomial guards") {
    CHECK_THROWS_AS(CatalyticPoly(3), domain_error);
    CHECK_THROWS_AS(CatalyticPoly::monomial(1, {0, 1}, Rat(1)), domain_error);
    CHECK_THROWS_AS(CatalyticPoly::monomial(0, {1, 0}, Rat(1)), domain_error);
    CHECK_THROWS_AS(CatalyticPoly::monomial(2, {-1, 0}, Rat(1)), domain_error);

    CatalyticPoly a(1), b(2);
    CHECK_THROWS_AS(a + b, arity_mismatch);
    CHECK_THROWS_AS(a * b, arity_mismatch);

    // cancelling terms vanish from storage entirely
    CatalyticPoly c(1);
    c.add_term({2, 0}, Rat(5));
    c.add_term({2, 0}, Rat(-5));
    CHECK(c.is_zero());
}

TEST_CASE("slices, shifts and substitution") {
    std::mt19937_64 rng(31);
    CatalyticPoly p = random_poly(rng, 2);
    p.add_term({0, 2}, Rat(3));

    // slice_keep leaves the variable in scope; shifting back and summing
    // over all slices reconstructs the polynomial
    CatalyticPoly rebuilt(2);
    for (int k = 0; k <= 4; ++k)
        rebuilt = rebuilt + exact::shift_exponent(exact::slice_keep_poly(p, 0, k), 0, k);
    CHECK(rebuilt == p);

    // slice_poly drops arity
    CatalyticPoly s0 = exact::slice_poly(p, 1, 0);
    CHECK(s0.arity == 1);

    // substitution at 1 equals summing the variable away
    CatalyticPoly at1 = exact::substitute_poly(p, 0, Rat(1));
    Rat direct(0);
    for (const auto& [e, v] : p.terms)
        if (e[1] == 0) direct += v;
    CHECK(exact::substitute_poly(at1, 0, Rat(0)).coeff({0, 0}) == direct);

    CHECK_THROWS_AS(exact::shift_exponent(p, 0, -5), domain_error);
    CHECK_THROWS_AS(exact::slice_poly(p, 2, 0), domain_error);
}

TEST_CASE("series orders shrink under + and * and grow under mul_t_power") {
    std::mt19937_64 rng(77);
    TruncatedSeries a = random_series(rng, 8, 1);
    TruncatedSeries b = random_series(rng, 5, 1);

    CHECK((a + b).order == 5);
    CHECK((a - b).order == 5);
    CHECK(exact::series_mul(a, b).order == 5);
    CHECK(exact::mul_t_power(b, 3).order == 8);
    CHECK(exact::mul_t_power(b, 3).coeff(1).is_zero());
    CHECK(exact::mul_t_power(b, 3).coeff(3) == b.coeff(0));

    CHECK_THROWS_AS(b.coeff(6), order_exceeded);
    CHECK_THROWS_AS(b.truncate(9), order_exceeded);
    CHECK(b.truncate(2).order == 2);

    TruncatedSeries d = exact::derivative_t(a);
    CHECK(d.order == 7);
    for (long m = 0; m <= 7; ++m) CHECK(d.coeff(m) == a.coeff(m + 1) * Rat(m + 1));
    TruncatedSeries flat = TruncatedSeries::constant(5, 0, 1);
    CHECK_THROWS_AS(exact::derivative_t(flat), order_exceeded);

    TruncatedSeries c0 = random_series(rng, 4, 0);
    CHECK_THROWS_AS(a + c0, arity_mismatch);
}

TEST_CASE("series multiplication is commutative and associative") {
    std::mt19937_64 rng(12345);
    for (int rep = 0; rep < 20; ++rep) {
        TruncatedSeries a = random_series(rng, 10, 1);
        TruncatedSeries b = random_series(rng, 10, 1);
        TruncatedSeries c = random_series(rng, 10, 1);
        CHECK(exact::equal_to_order(a * b, b * a));
        CHECK(exact::equal_to_order((a * b) * c, a * (b * c)));
        CHECK(exact::equal_to_order(a * (b + c), a * b + a * c));
    }
}

TEST_CASE("substituting zero equals taking the constant slice") {
    std::mt19937_64 rng(999);
    for (int rep = 0; rep < 30; ++rep) {
        TruncatedSeries s = random_series(rng, 7, 1);
        TruncatedSeries sub = exact::substitute(s, 0, Rat(0));
        TruncatedSeries sl = exact::coeff_slice(s, 0, 0);
        CHECK(sub.arity == 0);
        CHECK(exact::equal_to_order(sub, sl));
    }
}

TEST_CASE("term vectors round-trip") {
    std::vector<Rat> terms{Rat(1), Rat(0), Rat(1), Rat(0), Rat(2), Rat(-3, 7)};
    TruncatedSeries s = TruncatedSeries::from_terms(terms);
    CHECK(s.order == 5);
    CHECK(s.arity == 0);
    CHECK(s.terms() == terms);
    CHECK_THROWS_AS(TruncatedSeries::from_terms({}), domain_error);

    TruncatedSeries e = exact::embed(s, 1);
    CHECK(e.arity == 1);
    CHECK(e.coeff(4).coeff({0, 0}) == 2);
    CHECK_THROWS_AS(e.terms(), domain_error);

    // truncating is monotone: every shorter view agrees with the longer one
    for (long N = 0; N <= 5; ++N) {
        TruncatedSeries t = s.truncate(N);
        for (long m = 0; m <= N; ++m) CHECK(t.coeff(m) == s.coeff(m));
    }
}
