#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <walkguess/matrix.hpp>

using namespace walkguess;
using exact::ExactMatrix;
using exact::Int;
using exact::Rat;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            m.at(i, j) = Rat(num(rng), den(rng));
            m.at(i, j).canonicalize();
        }
    return m;
}

bool annihilates(const ExactMatrix& m, const std::vector<Int>& v) {
    for (const Rat& r : exact::mat_vec(m, v))
        if (r != 0) return false;
    return true;
}

} // namespace

TEST_CASE("kernel of a single row") {
    ExactMatrix m(1, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    auto basis = exact::nullspace(m);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == std::vector<Int>{2, -1, 0});
    CHECK(basis[1] == std::vector<Int>{3, 0, -1});
    for (const auto& v : basis) CHECK(annihilates(m, v));
}

TEST_CASE("kernel of the second-difference system") {
    // rows (1,1,1) and (1,2,3): kernel spanned by (1,-2,1)
    ExactMatrix m(2, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        m.at(0, j) = 1;
        m.at(1, j) = Rat(static_cast<long>(j) + 1);
    }
    auto basis = exact::nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == std::vector<Int>{1, -2, 1});
}

TEST_CASE("full-rank and zero matrices") {
    ExactMatrix id(3, 3);
    for (std::size_t i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(exact::nullspace(id).empty());

    ExactMatrix z(2, 3);
    auto basis = exact::nullspace(z);
    REQUIRE(basis.size() == 3);
    for (std::size_t f = 0; f < 3; ++f)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(basis[f][j] == (f == j ? 1 : 0));

    CHECK_THROWS_AS(ExactMatrix(0, 3), domain_error);
    CHECK_THROWS_AS(exact::mat_vec(id, std::vector<Int>{1, 2}), domain_error);
}

TEST_CASE("every kernel vector annihilates the matrix") {
    std::mt19937_64 rng(424242);
    for (int rep = 0; rep < 40; ++rep) {
        std::size_t r = 1 + rep % 5, c = 2 + rep % 6;
        ExactMatrix m = random_matrix(rng, r, c);
        auto basis = exact::nullspace(m);
        // wide matrices always have a nontrivial kernel
        if (c > r) CHECK(basis.size() >= c - r);
        for (const auto& v : basis) {
            CHECK(annihilates(m, v));
            CHECK(exact::content(v) == 1);
            for (const Int& x : v)
                if (x != 0) {
                    CHECK(x > 0);
                    break;
                }
        }
    }
}

TEST_CASE("kernel basis is invariant under row operations") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        ExactMatrix m = random_matrix(rng, 3, 6);
        auto base = exact::nullspace(m);

        // scale each row by a nonzero rational
        ExactMatrix scaled = m;
        std::uniform_int_distribution<int> sc(1, 5);
        for (std::size_t i = 0; i < m.rows; ++i) {
            Rat f(sc(rng), sc(rng));
            f.canonicalize();
            if (rep % 2) f = -f;
            for (std::size_t j = 0; j < m.cols; ++j) scaled.at(i, j) *= f;
        }
        CHECK(exact::nullspace(scaled) == base);

        // append a dependent row (sum of the first two)
        ExactMatrix ext(m.rows + 1, m.cols);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) ext.at(i, j) = m.at(i, j);
        for (std::size_t j = 0; j < m.cols; ++j) ext.at(m.rows, j) = m.at(0, j) + m.at(1, j);
        CHECK(exact::nullspace(ext) == base);
    }
}

TEST_CASE("rank-nullity on constructed systems") {
    // A (k x n) built from k independent rows extended by zero rows keeps
    // nullity n - k
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 5;
        ExactMatrix m(4, n);
        // two pivot rows with staggered leading entries, two zero rows
        m.at(0, 0) = 1;
        m.at(0, 3) = Rat(rep + 1);
        m.at(1, 1) = 2;
        m.at(1, 4) = Rat(-3, 2);
        auto basis = exact::nullspace(m);
        CHECK(basis.size() == n - 2);
        for (const auto& v : basis) CHECK(annihilates(m, v));
    }
}
