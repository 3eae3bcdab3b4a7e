#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "homolpn/ecc.hpp"
#include "homolpn/gf2.hpp"

namespace homolpn {

class InfeasibleParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scheme dimensions: n codeword bits, m ECC message bits, l plaintext bits
/// per block (so m - l random bits), homophonic weight w, BSC crossover p.
struct SystemParams {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t l = 0;
    std::size_t w = 0;
    double p = 0.0;

    /// Throws InfeasibleParams naming the first violated constraint.
    void check() const;
};

/// Invertible m x m homophonic encoder
///
///     G_H = [ 0_{l x (m-l)}   I_l  ]
///           [ I_{m-l}         G4   ]
///
/// under the generic layout; arbitrary invertible matrices are accepted by
/// from_matrix() and judged by validate().
class HomophonicCode {
public:
    /// Wraps an existing matrix. Throws NotInvertible.
    static HomophonicCode from_matrix(BitMatrix g_h, std::size_t l, std::size_t w);

    [[nodiscard]] const BitMatrix& g_h() const noexcept { return g_h_; }
    [[nodiscard]] const BitMatrix& g_h_inv() const noexcept { return g_h_inv_; }
    /// Bottom-right (m-l) x l block.
    [[nodiscard]] const BitMatrix& g_h4() const noexcept { return g_h4_; }
    [[nodiscard]] std::size_t l() const noexcept { return l_; }
    [[nodiscard]] std::size_t m() const noexcept { return g_h_.rows(); }
    [[nodiscard]] std::size_t w() const noexcept { return w_; }
    [[nodiscard]] std::size_t random_bits() const noexcept { return m() - l_; }

private:
    HomophonicCode() = default;

    BitMatrix g_h_;
    BitMatrix g_h_inv_;
    BitMatrix g_h4_;
    std::size_t l_ = 0;
    std::size_t w_ = 0;
};

/// Generic construction: G_H^(1) = 0, G_H^(2) = I_l, G_H^(4) seeded with unit
/// columns (zero top block) and then raised to column weight >= max(w, 1).
///
/// G* is the bottom (m-l) x n block of G_H G_ECC and always has rank m - l
/// here, so rank(G*) >= w + 1 needs w + 1 <= m - l. Throws InfeasibleParams.
[[nodiscard]] HomophonicCode build_generic(const SystemParams& params, const LinearBlockCode& ecc);

/// [a || u] G_H.
[[nodiscard]] BitVec encode_h(const HomophonicCode& code, const BitVec& a, const BitVec& u);
/// Splits word G_H^{-1} into (a, u).
[[nodiscard]] std::pair<BitVec, BitVec> decode_h(const HomophonicCode& code, const BitVec& word);
/// G = G_H G_ECC.
[[nodiscard]] BitMatrix compose(const HomophonicCode& code, const LinearBlockCode& ecc);

struct CriteriaReport {
    bool invertible = false;
    bool mixing_ok = false;
    std::size_t min_column_weight = 0;
    BitMatrix g_star;
    std::size_t g_star_rank = 0;
    bool passes_strict = false;
    bool passes_lenient = false;
    double density_g_h = 0.0;
    double density_g = 0.0;
    /// NaN when G_H is singular.
    double density_g_h_inv = 0.0;
};

/// Checks invertibility, mixing (no zero column in G_H^(4)), column weight
/// >= w, and the rank of G*. Strict requires rank >= w + 1, lenient rank >= w;
/// both also require the first three.
[[nodiscard]] CriteriaReport validate(const BitMatrix& g_h, std::size_t l, std::size_t w,
                                      const LinearBlockCode& ecc);
[[nodiscard]] CriteriaReport validate(const HomophonicCode& code, const LinearBlockCode& ecc);

/// Smallest l in [ceil(m/2), m) for which g_h has the generic block layout.
[[nodiscard]] std::optional<std::size_t> infer_generic_split(const BitMatrix& g_h);

}  // namespace homolpn
