#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "homolpn/channel.hpp"
#include "homolpn/gf2.hpp"

namespace homolpn {

class MalformedTranscript : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Everything a chosen-plaintext eavesdropper holds: z(1), ..., z(tau) sent
/// with all-zero plaintext, plus the public G = G_H G_ECC and S.
struct CpaTranscript {
    /// z_samples[i] was sent at keystream index t = i + 1.
    std::vector<BitVec> z_samples;
    BitMatrix g;
    BitMatrix s;
    double p = 0.0;

    [[nodiscard]] std::size_t tau() const noexcept { return z_samples.size(); }
};

/// Collects z from a zero-plaintext session. Records must carry t = 1, 2, ...
/// without gaps. Throws MalformedTranscript.
[[nodiscard]] CpaTranscript transcript_from_records(const std::vector<TransmissionRecord>& records, BitMatrix g,
                                                    BitMatrix s, double p);

/// Noisy parity system <k | c_j> = d_j.
struct LpnInstance {
    std::size_t n = 0;
    std::vector<BitVec> rows;
    std::vector<std::uint8_t> rhs;
    /// Number of original equations XORed into each row.
    std::vector<std::size_t> combo_weights;
    double epsilon_bound = 0.0;
    std::size_t tau = 0;
    /// Keystream indices whose randomness block did not reduce to n - m + l rows.
    std::vector<std::size_t> degenerate_samples;

    [[nodiscard]] std::size_t size() const noexcept { return rows.size(); }
};

/// p_w = (1 - (1 - 2p)^(w+1)) / 2. Throws std::domain_error unless 0 <= p < 0.5.
[[nodiscard]] double noise_lower_bound(double p, std::size_t w);

/// Monte-Carlo estimate of Pr[XOR of `fold` independent Bernoulli(p) bits = 1].
[[nodiscard]] double xor_fold_estimate(double p, std::size_t fold, std::size_t trials, std::uint64_t seed);

/// Removes the random bits u(t) from every sample.
///
/// For each t the n equations <k | S_i^(t)> xor <u(t) | G*_i> = z_i(t) are
/// written as rows [G*_i | S_i^(t)] and the u columns are eliminated; the
/// same row operations fold the z bits into d_j. Samples are processed
/// independently and concatenated in ascending t. epsilon_bound uses the
/// smallest observed fold: w_eff = min(combo_weight) - 1.
[[nodiscard]] LpnInstance eliminate_randomness(const CpaTranscript& transcript, std::size_t l);

/// Fraction of rows with <key | c_j> != d_j.
[[nodiscard]] double empirical_noise(const LpnInstance& instance, const BitVec& key);

struct KeyRecovery {
    BitVec key;
    double agreement = 0.0;
};

inline constexpr std::size_t max_brute_force_bits = 24;

/// Exhaustive search for the key satisfying the most equations; ties go to
/// the lexicographically smallest key. Throws TooLarge (n > 24) or
/// EmptyInstance.
[[nodiscard]] KeyRecovery brute_force_recover(const LpnInstance& instance);

/// LPN CSV: "n=<n>,epsilon=<e>,tau=<tau>,rows=<count>" then one
/// "<c bits>,<d>,<combo_weight>" line per equation.
void export_lpn(const LpnInstance& instance, std::ostream& os);
[[nodiscard]] LpnInstance import_lpn(std::istream& is);

}  // namespace homolpn
