#include <catch2/catch_amalgamated.hpp>

#include <walkguess/enumerate.hpp>
#include <walkguess/sequence.hpp>
#include <walkguess/stepset.hpp>

using namespace walkguess;
using exact::Int;
using exact::Rat;
using model::CountMode;
using model::CountTable;
using model::StepSet;

namespace {

// Exhaustive reference counter: tries every step sequence of length n.
// Only usable for tiny n, which is exactly what makes it trustworthy.
Rat brute_count(const StepSet& s, const CountMode& mode, int n) {
    Rat total(0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::array<int, 3> pos{0, 0, 0};
        bool alive = true;
        Rat w(1);
        for (int k = 0; k < n && alive; ++k) {
            const auto& st = s.steps[idx[static_cast<std::size_t>(k)]];
            for (int d = 0; d < s.dim; ++d) {
                pos[d] += st[d];
                if (pos[d] < 0) alive = false;
            }
            w *= s.weight(idx[static_cast<std::size_t>(k)]);
        }
        if (alive) {
            bool counted = false;
            switch (mode.kind) {
                case CountMode::Kind::ReturnToOrigin:
                    counted = pos == std::array<int, 3>{0, 0, 0};
                    break;
                case CountMode::Kind::AnyEndpoint: counted = true; break;
                case CountMode::Kind::EndpointSlice: counted = pos == mode.target; break;
            }
            if (counted) total += w;
        }
        int k = 0;
        for (; k < n; ++k) {
            if (++idx[static_cast<std::size_t>(k)] < s.steps.size()) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
        if (k == n) break;
    }
    return total;
}

void check_against_brute(const StepSet& s, int max_n) {
    std::vector<CountMode> modes{CountMode::zero(), CountMode::any(),
                                 CountMode::slice({1, 0, 0})};
    for (const CountMode& mode : modes) {
        CountTable t = model::enumerate_dp(s, mode, max_n);
        REQUIRE(t.values.size() == static_cast<std::size_t>(max_n) + 1);
        for (int n = 0; n <= max_n; ++n)
            CHECK(t.values[static_cast<std::size_t>(n)] == brute_count(s, mode, n));
    }
}

} // namespace

TEST_CASE("dynamic programming matches exhaustive enumeration in 1D") {
    check_against_brute(StepSet{-1, 1}, 8);
    check_against_brute(StepSet{-1, 2}, 8);
    check_against_brute(StepSet{-2, 1}, 8);
    check_against_brute(StepSet{-1, -2, 3}, 7);
    check_against_brute(StepSet{-1, 1, 2}, 7);
}

TEST_CASE("dynamic programming matches exhaustive enumeration in 2D and 3D") {
    StepSet corner(2, {{{-1, -1, 0}}, {{1, 0, 0}}, {{0, 1, 0}}});
    check_against_brute(corner, 6);

    StepSet cross(2, {{{1, 0, 0}}, {{-1, 0, 0}}, {{0, 1, 0}}, {{0, -1, 0}}});
    check_against_brute(cross, 6);

    StepSet diag3(3, {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}, {{-1, -1, -1}}});
    check_against_brute(diag3, 5);

    StepSet axes3(3, {{{1, 0, 0}}, {{-1, 0, 0}}, {{0, 1, 0}}, {{0, -1, 0}}, {{0, 0, 1}},
                      {{0, 0, -1}}});
    check_against_brute(axes3, 4);
}

TEST_CASE("weighted walks match exhaustive enumeration") {
    StepSet biased(1, {{{-1, 0, 0}}, {{1, 0, 0}}}, std::vector<Rat>{Rat(1, 3), Rat(2, 3)});
    check_against_brute(biased, 8);

    CountTable t = model::enumerate_dp(biased, CountMode::zero(), 2);
    CHECK(t.values[2] == Rat(2, 9)); // the single surviving up-down path
    CHECK_FALSE(t.integral());
    CHECK_THROWS_AS(t.integer_values(), domain_error);
}

TEST_CASE("step-count goldens") {
    // returns to zero with steps {-1,1}: aerated Catalan numbers
    CountTable zero = model::enumerate_dp(StepSet{-1, 1}, CountMode::zero(), 12);
    std::vector<Int> got = zero.integer_values();
    for (int n = 0; n <= 6; ++n) {
        CHECK(got[static_cast<std::size_t>(2 * n)] == seqkit::closed_form_catalan(n));
        if (2 * n + 1 <= 12) CHECK(got[static_cast<std::size_t>(2 * n + 1)] == 0);
    }

    // free endpoint: ballot problem, C(n, floor(n/2))
    CountTable any = model::enumerate_dp(StepSet{-1, 1}, CountMode::any(), 6);
    CHECK(any.integer_values() == std::vector<Int>{1, 1, 2, 3, 6, 10, 20});

    // endpoint pinned at 1
    CountTable s1 = model::enumerate_dp(StepSet{-1, 1}, CountMode::slice({1, 0, 0}), 3);
    CHECK(s1.integer_values() == std::vector<Int>{0, 1, 0, 2});
}

TEST_CASE("mode and parity invariants") {
    for (int n = 0; n <= 10; ++n) {
        StepSet s{-1, 1};
        CountTable zero = model::enumerate_dp(s, CountMode::zero(), n);
        CountTable any = model::enumerate_dp(s, CountMode::any(), n);
        // zero-mode counts a subset of any-mode walks, which are at most 2^n
        CHECK(zero.values[static_cast<std::size_t>(n)] <=
              any.values[static_cast<std::size_t>(n)]);
        Int cap = 1;
        for (int k = 0; k < n; ++k) cap *= 2;
        CHECK(any.values[static_cast<std::size_t>(n)] <= Rat(cap));
    }
}

TEST_CASE("position polynomials refine the plain counts") {
    StepSet corner(2, {{{-1, -1, 0}}, {{1, 0, 0}}, {{0, 1, 0}}});
    auto polys = model::dp_position_polynomials(corner, 8);
    CountTable zero = model::enumerate_dp(corner, CountMode::zero(), 8);
    CountTable any = model::enumerate_dp(corner, CountMode::any(), 8);
    for (std::size_t n = 0; n <= 8; ++n) {
        CHECK(polys[n].coeff({0, 0}) == zero.values[n]);
        CHECK(polys[n].total() == any.values[n]);
    }
    StepSet three(3, {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}});
    CHECK_THROWS_AS(model::dp_position_polynomials(three, 2), domain_error);
}

TEST_CASE("probability tables normalize and flag rescaled weights") {
    StepSet raw(1, {{{-1, 0, 0}}, {{1, 0, 0}}}, std::vector<Rat>{Rat(1), Rat(2)});
    CountTable p = model::probability_table(raw, CountMode::zero(), 4);
    CHECK(p.weights_normalized);
    CHECK(p.values[2] == Rat(2, 9));

    // already-normalized weights pass through untouched
    StepSet fair(1, {{{-1, 0, 0}}, {{1, 0, 0}}}, std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    CountTable q = model::probability_table(fair, CountMode::any(), 12);
    CHECK_FALSE(q.weights_normalized);

    // survival probability = surviving count / 2^n for the fair walk
    CountTable counts = model::enumerate_dp(StepSet{-1, 1}, CountMode::any(), 12);
    Int pw = 1;
    for (int n = 0; n <= 12; ++n) {
        CHECK(q.values[static_cast<std::size_t>(n)] ==
              counts.values[static_cast<std::size_t>(n)] / Rat(pw));
        pw *= 2;
    }
    CHECK(q.values[6] == Rat(5, 16)); // 20/64

    CHECK_THROWS_AS(model::probability_table(StepSet{-1, 1}, CountMode::any(), 3), domain_error);
}

TEST_CASE("resource caps trip instead of thrashing") {
    StepSet cross(2, {{{1, 0, 0}}, {{0, 1, 0}}}); // states grow quadratically
    model::DpOptions opt;
    opt.max_states = 10;
    CHECK_THROWS_AS(model::enumerate_dp(cross, CountMode::any(), 50, opt), resource_exceeded);
    CHECK_THROWS_AS(model::enumerate_dp(StepSet{-1, 1}, CountMode::any(), 1 << 21),
                    resource_exceeded);
}

TEST_CASE("step sets validate their shape") {
    CHECK_THROWS_AS(StepSet(0, {{{1, 0, 0}}}), domain_error);
    CHECK_THROWS_AS(StepSet(4, {{{1, 0, 0}}}), domain_error);
    CHECK_THROWS_AS(StepSet(1, {}), domain_error);
    CHECK_THROWS_AS(StepSet(1, {{{1, 0, 0}}, {{1, 0, 0}}}), domain_error);              // dup
    CHECK_THROWS_AS(StepSet(1, {{{1, 2, 0}}}), domain_error);                           // y in 1D
    CHECK_THROWS_AS(StepSet(1, {{{1, 0, 0}}}, std::vector<Rat>{Rat(1), Rat(1)}), domain_error);
    CHECK_THROWS_AS(StepSet(1, {{{1, 0, 0}}}, std::vector<Rat>{Rat(-1)}), domain_error);
    CHECK_THROWS_AS(StepSet(1, {{{1, 0, 0}}}, std::vector<Rat>{Rat(0)}), domain_error);

    CountMode bad = CountMode::slice({0, 1, 0});
    CHECK_THROWS_AS(bad.validate(1), domain_error); // target beyond dimension
    CHECK_THROWS_AS(CountMode::slice({-1, 0, 0}).validate(1), domain_error);
}

TEST_CASE("step-set documents round-trip bit-exactly") {
    StepSet plain{-1, 1};
    CHECK(model::stepset_to_string(plain) == "dim 1\nsteps (-1) (1)\n");
    CHECK(model::stepset_from_string(model::stepset_to_string(plain)) == plain);

    StepSet weighted(1, {{{-1, 0, 0}}, {{1, 0, 0}}}, std::vector<Rat>{Rat(1, 3), Rat(2, 3)});
    std::string doc = model::stepset_to_string(weighted);
    CHECK(doc == "dim 1\nsteps (-1) (1)\nweights 1/3 2/3\n");
    CHECK(model::stepset_from_string(doc) == weighted);

    StepSet corner(2, {{{-1, -1, 0}}, {{1, 0, 0}}, {{0, 1, 0}}});
    CHECK(model::stepset_from_string(model::stepset_to_string(corner)) == corner);

    StepSet cube(3, {{{1, 1, 1}}, {{-1, 0, 0}}});
    CHECK(model::stepset_from_string(model::stepset_to_string(cube)) == cube);

    // comments and blank-ish lines are tolerated
    CHECK(model::stepset_from_string("# a walk\ndim 1\nsteps (-1) (1)\n") == plain);

    CHECK_THROWS_AS(model::stepset_from_string("steps (-1)\n"), parse_error);
    CHECK_THROWS_AS(model::stepset_from_string("dim 1\n"), parse_error);
    CHECK_THROWS_AS(model::stepset_from_string("dim 1\nsteps -1 1\n"), parse_error);
    CHECK_THROWS_AS(model::stepset_from_string("dim 1\nsteps (1,2)\n"), parse_error);
    CHECK_THROWS_AS(model::stepset_from_string("dim 2\nsteps (1)\n"), parse_error);
    CHECK_THROWS_AS(model::stepset_from_string("dim 1\nsteps (x)\n"), parse_error);
    CHECK_THROWS_AS(model::stepset_from_string("dim 1\nwalk (1)\n"), parse_error);
}

TEST_CASE("mode strings round-trip") {
    for (const char* text : {"zero", "any", "slice 1", "slice 0,2", "slice 1,2,3"}) {
        CountMode m = model::mode_from_string(text);
        CHECK(model::mode_to_string(m) == text);
    }
    CHECK(model::mode_to_string(CountMode::slice({0, 0, 0})) == "slice 0");
    CHECK_THROWS_AS(model::mode_from_string("sideways"), parse_error);
    CHECK_THROWS_AS(model::mode_from_string("slice"), parse_error);
    CHECK_THROWS_AS(model::mode_from_string("slice 1,2,3,4"), parse_error);
}
