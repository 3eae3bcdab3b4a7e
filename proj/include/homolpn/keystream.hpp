#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "homolpn/gf2.hpp"

namespace homolpn {

/// Invertible n x n matrix made by composing seeded random elementary row
/// operations on the identity.
[[nodiscard]] BitMatrix random_state_matrix(std::size_t n, std::uint64_t seed);

/// Linear keystream x(t) = key * S^t.
///
/// Holds a memo of the last power of S, so an instance is single-consumer;
/// copy it to get an independent one.
class LinearKeystream {
public:
    /// Requires a square, invertible S matching the key length.
    LinearKeystream(BitMatrix s, BitVec key);

    [[nodiscard]] const BitMatrix& state_matrix() const noexcept { return s_; }
    [[nodiscard]] const BitVec& key() const noexcept { return key_; }
    [[nodiscard]] std::size_t n() const noexcept { return key_.size(); }

    /// S^t for t >= 1. One multiplication when t is the memoized power plus one.
    [[nodiscard]] const BitMatrix& power(std::size_t t);
    [[nodiscard]] BitVec keystream_at(std::size_t t);
    /// Columns S_1^(t), ..., S_n^(t) of S^t.
    [[nodiscard]] std::vector<BitVec> state_columns(std::size_t t);

private:
    BitMatrix s_;
    BitVec key_;
    std::size_t cached_t_ = 0;
    BitMatrix cached_power_;
};

}  // namespace homolpn
