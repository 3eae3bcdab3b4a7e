#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homolpn/ecc.hpp"
#include "homolpn/gf2.hpp"
#include "homolpn/homophonic.hpp"
#include "homolpn/keystream.hpp"
#include "homolpn/rng.hpp"

namespace homolpn {

class RetryExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One physical transmission.
struct TransmissionRecord {
    std::size_t t = 0;
    BitVec a;
    BitVec u;
    BitVec y;
    BitVec v;
    BitVec z;
    bool ack = false;
    /// 1-based attempt number of this transmission within its block.
    std::size_t attempts = 0;

    friend bool operator==(const TransmissionRecord&, const TransmissionRecord&) = default;
};

enum class PlaintextSource { Zero, Random };

struct SessionConfig {
    SystemParams params;
    std::uint64_t seed = 0;
    std::size_t tau = 1;
    std::size_t max_retries = 16;
    PlaintextSource plaintext_source = PlaintextSource::Random;
};

struct BscOutput {
    BitVec out;
    BitVec noise;
};

/// Binary symmetric channel: each bit flips independently with probability p.
[[nodiscard]] BscOutput bsc(const BitVec& word, double p, Rng& rng);

struct Transmission {
    BitVec y;
    BitVec u;
    std::size_t t = 0;
};

/// Sender side: y = C_ECC(C_H(a || u)) xor x(t) with fresh u for every call.
/// Each call consumes the next keystream index, starting at t = 1.
class Transmitter {
public:
    Transmitter(const HomophonicCode& code, const LinearBlockCode& ecc, LinearKeystream keystream);

    Transmission transmit(const BitVec& a, Rng& rng);
    [[nodiscard]] std::size_t next_t() const noexcept { return next_t_; }

private:
    const HomophonicCode* code_;
    const LinearBlockCode* ecc_;
    LinearKeystream keystream_;
    std::size_t next_t_ = 1;
};

struct Recovered {
    BitVec a;
    BitVec u;
};

/// Receiver side: strip x(t), ECC-decode, invert G_H. nullopt means NACK.
[[nodiscard]] std::optional<Recovered> receive(const HomophonicCode& code, const LinearBlockCode& ecc,
                                               LinearKeystream& keystream, const BitVec& z, std::size_t t);

/// Delivers cfg.tau blocks over a BSC(cfg.params.p) with ARQ.
///
/// The receiver ACKs a block only when its decoded (a, u) equals what was
/// sent, which models an error-detecting check with no misses. A NACK costs a
/// new transmission with fresh u and the next keystream index. Every attempt
/// is recorded, since a passive listener sees them all. Throws RetryExhausted.
[[nodiscard]] std::vector<TransmissionRecord> run_session(const SessionConfig& cfg, const HomophonicCode& code,
                                                          const LinearBlockCode& ecc,
                                                          const LinearKeystream& keystream);

struct RecordFileHeader {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t l = 0;
};

/// Record file:
///
///     # n=7,m=4,l=2
///     t,attempts,ack,a,u,y,v,z
///     1,1,1,<hex a>,<hex u>,<hex y>,<hex v>,<hex z>
///
/// Hex packs bits leftmost-first, four per digit, zero-padded at the end.
void write_records(std::ostream& os, const RecordFileHeader& header, const std::vector<TransmissionRecord>& records);
[[nodiscard]] std::vector<TransmissionRecord> read_records(std::istream& is, RecordFileHeader& header);

/// CSV with columns t,attempts,ack.
void write_summary_csv(std::ostream& os, const std::vector<TransmissionRecord>& records);

}  // namespace homolpn
