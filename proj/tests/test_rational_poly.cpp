#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <walkguess/poly.hpp>
#include <walkguess/rational.hpp>

using namespace walkguess;
using exact::Int;
using exact::Rat;
using exact::UniPoly;
using exact::Var;

TEST_CASE("rational text round-trips through the canonical form") {
    CHECK(exact::to_string(Rat(3, 4)) == "3/4");
    CHECK(exact::to_string(Rat(-3, 4)) == "-3/4");
    CHECK(exact::to_string(Rat(7)) == "7");
    CHECK(exact::to_string(Rat(0)) == "0");
    CHECK(exact::to_string(Int(-12)) == "-12");

    CHECK(exact::rat_from_string("3/4") == Rat(3, 4));
    CHECK(exact::rat_from_string("-3/4") == Rat(-3, 4));
    CHECK(exact::rat_from_string("+5") == Rat(5));
    CHECK(exact::rat_from_string("6/4") == Rat(3, 2));   // canonicalized
    CHECK(exact::rat_from_string("3/-4") == Rat(-3, 4)); // sign moves to numerator
    CHECK(exact::rat_from_string("0/9") == Rat(0));
}

TEST_CASE("malformed rationals are rejected with a position") {
    CHECK_THROWS_AS(exact::rat_from_string(""), parse_error);
    CHECK_THROWS_AS(exact::rat_from_string("1/0"), parse_error);
    CHECK_THROWS_AS(exact::rat_from_string("1.5"), parse_error);
    CHECK_THROWS_AS(exact::rat_from_string("two"), parse_error);
    CHECK_THROWS_AS(exact::rat_from_string("3//4"), parse_error);
    CHECK_THROWS_AS(exact::rat_from_string("4-2"), parse_error);

    try {
        exact::rat_from_string("12x34");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position == 2);
    }
}

TEST_CASE("content and canonical integer vectors") {
    using exact::canonical_integer_vector;
    using exact::content;

    CHECK(content({Int(6), Int(10), Int(-4)}) == 2);
    CHECK(content({Int(0), Int(0)}) == 0);
    CHECK(content({Int(-7)}) == 7);

    CHECK(canonical_integer_vector({Rat(1, 2), Rat(1, 3)}) == std::vector<Int>{3, 2});
    CHECK(canonical_integer_vector({Rat(-2), Rat(4)}) == std::vector<Int>{1, -2});
    CHECK(canonical_integer_vector({Rat(0), Rat(-3), Rat(6)}) == std::vector<Int>{0, 1, -2});
    CHECK(canonical_integer_vector({Rat(0), Rat(0)}) == std::vector<Int>{0, 0});
}

TEST_CASE("canonical vector is invariant under nonzero rational scaling") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 12);

    for (int rep = 0; rep < 200; ++rep) {
        std::vector<Rat> v(5);
        bool any = false;
        for (Rat& q : v) {
            q = Rat(num(rng), den(rng));
            q.canonicalize();
            if (q != 0) any = true;
        }
        if (!any) continue;
        Rat scale(0);
        while (scale == 0) {
            scale = Rat(num(rng), den(rng));
            scale.canonicalize();
        }
        std::vector<Rat> w(v);
        for (Rat& q : w) q *= scale;

        auto a = exact::canonical_integer_vector(v);
        auto b = exact::canonical_integer_vector(w);
        CHECK(a == b);

        // idempotence: feeding the canonical vector back changes nothing
        std::vector<Rat> back(a.begin(), a.end());
        CHECK(exact::canonical_integer_vector(back) == a);

        // and the result is genuinely canonical
        Int g = exact::content(a);
        CHECK(g == 1);
        for (const Int& x : a)
            if (x != 0) {
                CHECK(x > 0);
                break;
            }
    }
}

TEST_CASE("polynomial basics: degree, eval, derivative") {
    UniPoly p(Var::n, {Rat(1), Rat(-3), Rat(4)}); // 4n^2 - 3n + 1
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(2) == 4);
    CHECK(p.coeff(7) == 0);
    CHECK(p.eval(Rat(2)) == Rat(11));
    CHECK(p.eval(Rat(1, 2)) == Rat(1, 2));
    CHECK(p.eval_int(Int(-3)) == Int(46));

    UniPoly d = p.derivative(); // 8n - 3
    CHECK(d.degree() == 1);
    CHECK(d.coeff(0) == -3);
    CHECK(d.coeff(1) == 8);

    UniPoly z(Var::t);
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(z.derivative().is_zero());

    // trailing zeros trim away
    UniPoly t(Var::n, {Rat(2), Rat(0), Rat(0)});
    CHECK(t.degree() == 0);
}

TEST_CASE("polynomial arithmetic agrees with evaluation") {
    std::mt19937_64 rng(987);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> deg(0, 5);

    auto random_poly = [&]() {
        std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (Rat& q : c) q = Rat(coeff(rng));
        return UniPoly(Var::n, c);
    };

    for (int rep = 0; rep < 100; ++rep) {
        UniPoly a = random_poly(), b = random_poly();
        Rat x(coeff(rng), 7);
        x.canonicalize();
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
        CHECK((a - b).eval(x) == a.eval(x) - b.eval(x));
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        CHECK((-a).eval(x) == -a.eval(x));
        CHECK((a * Rat(3, 2)).eval(x) == a.eval(x) * Rat(3, 2));
    }

    // degree arithmetic for nonzero operands
    UniPoly a(Var::t, {Rat(1), Rat(2)});
    UniPoly b(Var::t, {Rat(0), Rat(0), Rat(5)});
    CHECK((a * b).degree() == 3);
    CHECK((a + b).degree() == 2);
    // cancellation trims
    UniPoly c(Var::t, {Rat(0), Rat(-2)});
    CHECK((a + c).degree() == 0);
}

TEST_CASE("polynomial printing goldens") {
    using exact::poly_to_string;
    CHECK(poly_to_string(UniPoly(Var::n, {Rat(1), Rat(-3), Rat(4)})) == "4*n^2-3*n+1");
    CHECK(poly_to_string(UniPoly(Var::n, {Rat(-2), Rat(-4)})) == "-4*n-2");
    CHECK(poly_to_string(UniPoly(Var::n, {Rat(2), Rat(1)})) == "n+2");
    CHECK(poly_to_string(UniPoly(Var::t)) == "0");
    CHECK(poly_to_string(UniPoly::constant(Var::t, Rat(-7))) == "-7");
    CHECK(poly_to_string(UniPoly(Var::t, {Rat(0), Rat(-1), Rat(0), Rat(4)})) == "4*t^3-t");
    CHECK(poly_to_string(UniPoly(Var::n, {Rat(1, 2), Rat(0), Rat(-1, 3)})) == "-1/3*n^2+1/2");
    CHECK(poly_to_string(UniPoly::monomial(Var::x, Rat(1), 1)) == "x");
    CHECK(poly_to_string(UniPoly::monomial(Var::y, Rat(-1), 2)) == "-y^2");
}

TEST_CASE("polynomial parsing round-trips and rejects junk") {
    using exact::poly_from_string;
    using exact::poly_to_string;

    for (const char* text : {"4*n^2-3*n+1", "-4*n-2", "n+2", "0", "4*t^3-t", "-1/3*n^2+1/2",
                             "n^4+n^3+n^2+n+1", "-n", "1/2*n^2+1/2*n"}) {
        Var v = std::string(text).find('t') != std::string::npos ? Var::t : Var::n;
        UniPoly p = poly_from_string(text, v);
        CHECK(poly_to_string(p) == text);
    }

    // random round trip
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> coeff(-12, 12);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<Rat> c(6);
        for (Rat& q : c) {
            q = Rat(coeff(rng), 1 + (rep % 3));
            q.canonicalize(); // two-argument mpq construction is not reduced
        }
        UniPoly p(Var::t, c);
        std::string s = poly_to_string(p);
        UniPoly q = poly_from_string(s, Var::t);
        CHECK(q == p);
    }

    CHECK_THROWS_AS(poly_from_string("4*m+1", Var::n), parse_error);
    CHECK_THROWS_AS(poly_from_string("n^2 + ", Var::n), parse_error);
    CHECK_THROWS_AS(poly_from_string("", Var::n), parse_error);
    CHECK_THROWS_AS(poly_from_string("n^99999", Var::n), parse_error); // exponent cap
    CHECK_THROWS_AS(poly_from_string("n^2)", Var::n), parse_error);    // trailing junk
}
