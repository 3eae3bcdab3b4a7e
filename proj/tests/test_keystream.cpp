#include <doctest.h>

#include "homolpn/keystream.hpp"
#include "homolpn/rng.hpp"
#include "support.hpp"

using namespace homolpn;
using namespace homolpn::testing;

TEST_CASE("random_state_matrix") {
    CHECK(random_state_matrix(9, 42) == random_state_matrix(9, 42));
    CHECK(random_state_matrix(9, 42) != random_state_matrix(9, 43));
    CHECK(random_state_matrix(1, 5) == BitMatrix::identity(1));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 2 + seed % 15;
        CHECK(rank(random_state_matrix(n, seed)) == n);
    }
    CHECK_THROWS_AS((void)random_state_matrix(0, 1), std::invalid_argument);
}

TEST_CASE("keystream_at") {
    const auto key = BitVec::from_string("1010101");
    SUBCASE("identity S repeats the key") {
        LinearKeystream ks(BitMatrix::identity(7), key);
        for (std::size_t t = 1; t <= 5; ++t) CHECK(ks.keystream_at(t) == key);
    }
    SUBCASE("zero key gives zero keystream") {
        LinearKeystream ks(random_state_matrix(7, 3), BitVec(7));
        for (std::size_t t = 1; t <= 5; ++t) CHECK(ks.keystream_at(t).is_zero());
    }
    SUBCASE("t = 3 equals ((kS)S)S") {
        const auto s = random_state_matrix(7, 4);
        LinearKeystream ks(s, key);
        const auto stepwise = oracle_vec_mat(oracle_vec_mat(oracle_vec_mat(key, s), s), s);
        CHECK(ks.keystream_at(3) == stepwise);
        // Out-of-order access falls back to recomputation.
        CHECK(ks.keystream_at(1) == oracle_vec_mat(key, s));
        CHECK(ks.keystream_at(3) == stepwise);
    }
    SUBCASE("t = 0 is rejected") {
        LinearKeystream ks(BitMatrix::identity(7), key);
        CHECK_THROWS_AS((void)ks.keystream_at(0), std::invalid_argument);
    }
}

TEST_CASE("LinearKeystream construction checks") {
    CHECK_THROWS_AS(LinearKeystream(BitMatrix::identity(6), BitVec(7)), DimensionMismatch);
    CHECK_THROWS_AS(LinearKeystream(BitMatrix(7, 6), BitVec(7)), DimensionMismatch);
    CHECK_THROWS_AS(LinearKeystream(BitMatrix(3, 3), BitVec(3)), NotInvertible);
}

TEST_CASE("state_columns") {
    const auto s = random_state_matrix(6, 8);
    const auto key = BitVec::from_string("110010");
    LinearKeystream ks(s, key);

    const auto cols1 = ks.state_columns(1);
    REQUIRE(cols1.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(cols1[i] == s.column(i));

    LinearKeystream unit(BitMatrix::identity(4), BitVec(4));
    const auto unit_cols = unit.state_columns(3);
    for (std::size_t i = 0; i < 4; ++i) CHECK(unit_cols[i] == BitVec::unit(4, i));

    for (std::size_t t = 1; t <= 10; ++t) {
        const auto cols = ks.state_columns(t);
        const auto x = ks.keystream_at(t);
        for (std::size_t i = 0; i < 6; ++i) CHECK(x[i] == key.dot(cols[i]));
    }
}

TEST_CASE("property: recurrence keystream(t+1) = keystream(t) S") {
    Rng rng(64);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 3 + rng.below(20);
        const auto s = random_state_matrix(n, rng.next());
        LinearKeystream ks(s, rng.bits(n));
        LinearKeystream copy = ks;
        auto prev = ks.keystream_at(1);
        for (std::size_t t = 2; t <= 100; ++t) {
            const auto next = ks.keystream_at(t);
            CHECK(next == oracle_vec_mat(prev, s));
            prev = next;
        }
        // A copy keeps its own memo.
        CHECK(copy.keystream_at(2) == oracle_vec_mat(copy.keystream_at(1), s));
    }
}
