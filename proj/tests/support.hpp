#pragma once

// Golden matrices and independent oracles shared by the test binaries. The
// oracles here use plain nested loops over bits and never call the library's
// multiplication or elimination routines.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "homolpn/gf2.hpp"
#include "homolpn/rng.hpp"

namespace homolpn::testing {

inline BitMatrix hamming_generator() {
    return BitMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"});
}

// Worked example 1: G_H = [[0, I], [I, I]], l = 2.
inline BitMatrix example1_g_h() { return BitMatrix::from_strings({"0010", "0001", "1010", "0101"}); }
inline BitMatrix example1_g() {
    return BitMatrix::from_strings({"0010011", "0001111", "1010101", "0101010"});
}
inline BitMatrix example1_g_star() { return BitMatrix::from_strings({"1010101", "0101010"}); }
inline BitMatrix example1_g_h_inv() { return BitMatrix::from_strings({"1010", "0101", "1000", "0100"}); }

// Worked example 2 (w = 2).
inline BitMatrix example2_g_h() { return BitMatrix::from_strings({"0010", "0001", "1011", "0111"}); }
inline BitMatrix example2_g() {
    return BitMatrix::from_strings({"0010011", "0001111", "1011010", "0111001"});
}
inline BitMatrix example2_g_star() { return BitMatrix::from_strings({"1011010", "0111001"}); }
inline BitMatrix example2_g_h_inv() { return BitMatrix::from_strings({"1110", "1101", "1000", "0100"}); }

/// out[j] = XOR_i v[i] & m[i][j], bit by bit.
inline BitVec oracle_vec_mat(const BitVec& v, const BitMatrix& m) {
    BitVec out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        bool acc = false;
        for (std::size_t i = 0; i < m.rows(); ++i) acc ^= v[i] && m(i, j);
        if (acc) out.set(j);
    }
    return out;
}

inline BitMatrix oracle_mat_mul(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            bool acc = false;
            for (std::size_t t = 0; t < a.cols(); ++t) acc ^= a(i, t) && b(t, j);
            if (acc) out.set(i, j);
        }
    }
    return out;
}

/// Rank as log2 of the size of the row space, by enumerating all 2^rows sums.
inline std::size_t oracle_rank(const BitMatrix& m) {
    std::vector<std::string> span;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m.rows()); ++mask) {
        BitVec acc(m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if ((mask >> i) & 1U) acc ^= m.row(i);
        }
        span.push_back(acc.to_string());
    }
    std::sort(span.begin(), span.end());
    const auto distinct = static_cast<std::size_t>(std::unique(span.begin(), span.end()) - span.begin());
    std::size_t r = 0;
    while ((std::size_t{1} << r) < distinct) ++r;
    return r;
}

inline BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) m.set_row(r, rng.bits(cols));
    return m;
}

/// Invertible matrix from random elementary row operations on the identity.
inline BitMatrix random_invertible(std::size_t n, Rng& rng) {
    BitMatrix m = BitMatrix::identity(n);
    for (std::size_t k = 0; k < 6 * n * n; ++k) {
        const auto i = static_cast<std::size_t>(rng.below(n));
        const auto j = static_cast<std::size_t>(rng.below(n));
        if (i != j) m.xor_row(i, j);
    }
    return m;
}

}  // namespace homolpn::testing
