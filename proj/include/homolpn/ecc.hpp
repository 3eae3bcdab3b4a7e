#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homolpn/gf2.hpp"

namespace homolpn {

/// The syndrome maps to no coset leader within the guaranteed capability.
class DecodeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syndrome enumeration over 2^(n-m) entries was refused.
class TableTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DecodeResult {
    BitVec message;
    std::size_t error_weight = 0;
};

/// Systematic binary (m, n) linear block code, G = [I_m | R], with a full
/// syndrome table for bounded-distance decoding.
class LinearBlockCode {
public:
    static constexpr std::size_t default_max_redundancy = 16;

    /// Takes a generator whose first m columns form I_m.
    static LinearBlockCode from_generator(BitMatrix generator,
                                          std::size_t max_redundancy = default_max_redundancy);
    /// G = [[I_{m-l}, 0, P], [0, I_l, Q]].
    static LinearBlockCode from_systematic_parity(const BitMatrix& p_block, const BitMatrix& q_block,
                                                  std::size_t max_redundancy = default_max_redundancy);

    [[nodiscard]] std::size_t m() const noexcept { return generator_.rows(); }
    [[nodiscard]] std::size_t n() const noexcept { return generator_.cols(); }
    [[nodiscard]] const BitMatrix& generator() const noexcept { return generator_; }
    [[nodiscard]] const BitMatrix& parity_check() const noexcept { return parity_check_; }
    [[nodiscard]] std::size_t t_capability() const noexcept { return t_capability_; }

    /// Coset leader for a syndrome, if the table has one.
    [[nodiscard]] std::optional<BitVec> coset_leader(const BitVec& syndrome) const;
    [[nodiscard]] BitVec syndrome(const BitVec& word) const;

    [[nodiscard]] BitVec encode(const BitVec& msg) const;
    /// Throws DecodeFailure when the syndrome has no leader of weight <= t.
    [[nodiscard]] DecodeResult decode(const BitVec& word) const;

private:
    LinearBlockCode() = default;
    void build_table(std::size_t max_redundancy);

    BitMatrix generator_;
    BitMatrix parity_check_;
    // Indexed by the syndrome read as an integer (bit 0 most significant).
    std::vector<std::optional<BitVec>> syndrome_table_;
    std::size_t t_capability_ = 0;
};

/// The (7,4) Hamming code with generator rows 1000110, 0100101, 0010011, 0001111.
[[nodiscard]] LinearBlockCode hamming_7_4();

}  // namespace homolpn
