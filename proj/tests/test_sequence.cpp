#include <catch2/catch_amalgamated.hpp>

#include <walkguess/sequence.hpp>

using namespace walkguess;
using ansatz::Recurrence;
using exact::Int;
using exact::Rat;
using exact::UniPoly;
using exact::Var;
using seqkit::RecurrenceStream;

namespace {

Recurrence catalan_recurrence() {
    Recurrence rec;
    rec.q = {UniPoly(Var::n, {Rat(-2), Rat(-4)}), UniPoly(Var::n, {Rat(2), Rat(1)})};
    rec.initial = {Rat(1)};
    rec.canonicalize();
    return rec;
}

} // namespace

TEST_CASE("recurrence streams hold exactly `order` values, for every order") {
    for (long d = 1; d <= 21; ++d) {
        // a(n+d) = a(n): period-d repetition of the initial values
        Recurrence rec;
        rec.q.assign(static_cast<std::size_t>(d) + 1, UniPoly(Var::n));
        rec.q.front() = UniPoly::constant(Var::n, Rat(-1));
        rec.q.back() = UniPoly::constant(Var::n, Rat(1));
        for (long i = 0; i < d; ++i) rec.initial.push_back(Rat(i + 1));
        rec.canonicalize();

        RecurrenceStream s(rec);
        CHECK(s.state_size() == static_cast<std::size_t>(d));
        for (long n = 0; n < 4 * d; ++n) {
            CHECK(s.position() == n);
            CHECK(s.next() == Rat(n % d + 1));
            // the memory contract is an invariant, not a startup artifact
            CHECK(s.state_size() == static_cast<std::size_t>(d));
        }
    }
}

TEST_CASE("fibonacci unrolls from its two seeds") {
    Recurrence fib;
    fib.q = {UniPoly::constant(Var::n, Rat(1)), UniPoly::constant(Var::n, Rat(1)),
             UniPoly::constant(Var::n, Rat(-1))};
    fib.initial = {Rat(0), Rat(1)};
    fib.canonicalize();
    auto got = seqkit::unroll(fib, 10);
    CHECK(got == std::vector<Rat>{Rat(0), Rat(1), Rat(1), Rat(2), Rat(3), Rat(5), Rat(8), Rat(13),
                                  Rat(21), Rat(34), Rat(55)});
}

TEST_CASE("three independent roads to the same sequence") {
    // recurrence unrolling, the defining convolution, and the closed form
    // must agree term for term over a long stretch
    auto unrolled = seqkit::unroll(catalan_recurrence(), 200);
    auto convolved = seqkit::convolution_oracle(200);
    REQUIRE(unrolled.size() == 201);
    REQUIRE(convolved.size() == 201);
    for (long n = 0; n <= 200; ++n) {
        CHECK(unrolled[static_cast<std::size_t>(n)] == Rat(convolved[static_cast<std::size_t>(n)]));
        CHECK(convolved[static_cast<std::size_t>(n)] == seqkit::closed_form_catalan(n));
    }
}

TEST_CASE("vanishing leading coefficients demand pinned values") {
    // (n-3) * (a(n+1) - 2 a(n)) = 0: the relation says nothing at row 3,
    // so term 4 cannot be derived
    Recurrence rec;
    rec.q = {UniPoly(Var::n, {Rat(6), Rat(-2)}), UniPoly(Var::n, {Rat(-3), Rat(1)})};
    rec.initial = {Rat(1)};
    rec.canonicalize();
    rec.scan_exceptional(10);
    CHECK(rec.exceptional == std::vector<long>{3});

    try {
        seqkit::unroll(rec, 10);
        FAIL("expected exceptional_index");
    } catch (const exceptional_index& e) {
        CHECK(e.index == 4);
    }

    // pinning the underdetermined term restores the doubling sequence
    auto got = seqkit::unroll(rec, 10, {{4, Rat(16)}});
    Rat v(1);
    for (const Rat& x : got) {
        CHECK(x == v);
        v *= 2;
    }

    // a different pin is honored and propagated
    auto other = seqkit::unroll(rec, 6, {{4, Rat(99)}});
    CHECK(other[4] == 99);
    CHECK(other[5] == 198);
    CHECK(other[6] == 396);
}

TEST_CASE("streams refuse to start without enough seed data") {
    Recurrence rec = catalan_recurrence();
    rec.initial.clear();
    CHECK_THROWS_AS(RecurrenceStream(rec), insufficient_terms);

    // a support offset extends the required lead-in
    Recurrence late;
    late.q = {UniPoly::constant(Var::n, Rat(-1)), UniPoly::constant(Var::n, Rat(1))};
    late.support_offset = 2;
    late.initial = {Rat(1), Rat(2)};
    late.canonicalize();
    CHECK_THROWS_AS(RecurrenceStream(late), insufficient_terms);

    late.initial = {Rat(1), Rat(2), Rat(3)};
    CHECK(seqkit::unroll(late, 6) ==
          std::vector<Rat>{Rat(1), Rat(2), Rat(3), Rat(3), Rat(3), Rat(3), Rat(3)});

    CHECK_THROWS_AS(seqkit::unroll(catalan_recurrence(), -1), domain_error);
}

TEST_CASE("convolution stream remembers everything it produced") {
    seqkit::ConvolutionStream s;
    CHECK(s.state_size() == 0);
    for (long k = 1; k <= 30; ++k) {
        s.next();
        CHECK(s.state_size() == static_cast<std::size_t>(k));
        CHECK(s.position() == k);
    }
    CHECK(s.terms()[5] == 42);
}

TEST_CASE("binomial helpers") {
    CHECK(seqkit::binomial_coefficient(6, 3) == 20);
    CHECK(seqkit::binomial_coefficient(10, 5) == 252);
    CHECK(seqkit::binomial_coefficient(0, 0) == 1);
    CHECK_THROWS_AS(seqkit::binomial_coefficient(3, 5), domain_error);
    CHECK_THROWS_AS(seqkit::binomial_coefficient(-1, 0), domain_error);
    CHECK_THROWS_AS(seqkit::binomial_coefficient(3, -1), domain_error);

    // Pascal's rule as an oracle across a block of the triangle
    for (long n = 1; n <= 25; ++n)
        for (long k = 1; k < n; ++k)
            CHECK(seqkit::binomial_coefficient(n, k) ==
                  seqkit::binomial_coefficient(n - 1, k - 1) +
                      seqkit::binomial_coefficient(n - 1, k));

    CHECK(seqkit::closed_form_catalan(0) == 1);
    CHECK(seqkit::closed_form_catalan(5) == 42);
    CHECK_THROWS_AS(seqkit::closed_form_catalan(-2), domain_error);
}
