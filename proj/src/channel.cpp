#include "homolpn/channel.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace homolpn {

BscOutput bsc(const BitVec& word, double p, Rng& rng) {
    if (!(p >= 0.0 && p < 0.5)) throw std::invalid_argument("bsc: crossover probability must be in [0, 0.5)");
    BitVec noise(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (rng.bernoulli(p)) noise.set(i);
    }
    return {word ^ noise, std::move(noise)};
}

Transmitter::Transmitter(const HomophonicCode& code, const LinearBlockCode& ecc, LinearKeystream keystream)
    : code_(&code), ecc_(&ecc), keystream_(std::move(keystream)) {
    if (code.m() != ecc.m()) throw DimensionMismatch("homophonic code and ECC disagree on m");
    if (keystream_.n() != ecc.n()) throw DimensionMismatch("keystream length must equal n");
}

Transmission Transmitter::transmit(const BitVec& a, Rng& rng) {
    BitVec u = rng.bits(code_->random_bits());
    const std::size_t t = next_t_++;
    BitVec y = ecc_->encode(encode_h(*code_, a, u)) ^ keystream_.keystream_at(t);
    return {std::move(y), std::move(u), t};
}

std::optional<Recovered> receive(const HomophonicCode& code, const LinearBlockCode& ecc, LinearKeystream& keystream,
                                 const BitVec& z, std::size_t t) {
    const BitVec stripped = z ^ keystream.keystream_at(t);
    try {
        auto decoded = ecc.decode(stripped);
        auto [a, u] = decode_h(code, decoded.message);
        return Recovered{std::move(a), std::move(u)};
    } catch (const DecodeFailure&) {
        return std::nullopt;
    }
}

std::vector<TransmissionRecord> run_session(const SessionConfig& cfg, const HomophonicCode& code,
                                            const LinearBlockCode& ecc, const LinearKeystream& keystream) {
    if (cfg.tau == 0) throw std::invalid_argument("tau must be at least 1");
    if (cfg.max_retries == 0) throw std::invalid_argument("max_retries must be at least 1");
    if (cfg.params.l != code.l() || cfg.params.m != code.m() || cfg.params.n != ecc.n()) {
        throw DimensionMismatch("session parameters do not match the codes");
    }

    Rng root(cfg.seed);
    Rng plaintext_rng = root.split();
    Rng randomness_rng = root.split();
    Rng channel_rng = root.split();

    Transmitter tx(code, ecc, keystream);
    LinearKeystream rx_keystream = keystream;

    std::vector<TransmissionRecord> records;
    records.reserve(cfg.tau);
    for (std::size_t block = 0; block < cfg.tau; ++block) {
        const BitVec a =
            cfg.plaintext_source == PlaintextSource::Zero ? BitVec(code.l()) : plaintext_rng.bits(code.l());
        for (std::size_t attempt = 1;; ++attempt) {
            auto sent = tx.transmit(a, randomness_rng);
            auto channel = bsc(sent.y, cfg.params.p, channel_rng);
            const auto got = receive(code, ecc, rx_keystream, channel.out, sent.t);
            const bool ack = got && got->a == a && got->u == sent.u;

            records.push_back({sent.t, a, std::move(sent.u), std::move(sent.y), std::move(channel.noise),
                               std::move(channel.out), ack, attempt});
            if (ack) break;
            if (attempt == cfg.max_retries) {
                throw RetryExhausted("block " + std::to_string(block + 1) + " not delivered after " +
                                     std::to_string(cfg.max_retries) + " attempts");
            }
        }
    }
    return records;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        parts.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("bad " + std::string(what) + " field '" + std::string(text) + "'");
    }
    return value;
}

std::size_t parse_header_field(std::string_view field, std::string_view key) {
    if (field.size() <= key.size() + 1 || field.substr(0, key.size()) != key || field[key.size()] != '=') {
        throw ParseError("record header field '" + std::string(field) + "' should be " + std::string(key) + "=<n>");
    }
    return parse_count(field.substr(key.size() + 1), key);
}

constexpr std::string_view column_line = "t,attempts,ack,a,u,y,v,z";

}  // namespace

void write_records(std::ostream& os, const RecordFileHeader& header, const std::vector<TransmissionRecord>& records) {
    os << "# n=" << header.n << ",m=" << header.m << ",l=" << header.l << '\n' << column_line << '\n';
    for (const auto& r : records) {
        os << r.t << ',' << r.attempts << ',' << (r.ack ? 1 : 0) << ',' << r.a.to_hex() << ',' << r.u.to_hex() << ','
           << r.y.to_hex() << ',' << r.v.to_hex() << ',' << r.z.to_hex() << '\n';
    }
}

std::vector<TransmissionRecord> read_records(std::istream& is, RecordFileHeader& header) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw ParseError("record file must start with '# n=..'");
    const auto fields = split(std::string_view(line).substr(2), ',');
    if (fields.size() != 3) throw ParseError("record header must be '# n=<n>,m=<m>,l=<l>'");
    header.n = parse_header_field(fields[0], "n");
    header.m = parse_header_field(fields[1], "m");
    header.l = parse_header_field(fields[2], "l");
    if (header.l == 0 || header.l >= header.m || header.m > header.n) throw ParseError("record header dimensions are inconsistent");

    if (!std::getline(is, line) || line != column_line) throw ParseError("missing record column line");

    std::vector<TransmissionRecord> records;
    std::size_t line_no = 2;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 8) throw ParseError("record line " + std::to_string(line_no) + " needs 8 fields");
        TransmissionRecord r;
        r.t = parse_count(cols[0], "t");
        r.attempts = parse_count(cols[1], "attempts");
        if (cols[2] != "0" && cols[2] != "1") throw ParseError("ack must be 0 or 1");
        r.ack = cols[2] == "1";
        r.a = BitVec::from_hex(cols[3], header.l);
        r.u = BitVec::from_hex(cols[4], header.m - header.l);
        r.y = BitVec::from_hex(cols[5], header.n);
        r.v = BitVec::from_hex(cols[6], header.n);
        r.z = BitVec::from_hex(cols[7], header.n);
        records.push_back(std::move(r));
    }
    return records;
}

void write_summary_csv(std::ostream& os, const std::vector<TransmissionRecord>& records) {
    os << "t,attempts,ack\n";
    for (const auto& r : records) os << r.t << ',' << r.attempts << ',' << (r.ack ? 1 : 0) << '\n';
}

}  // namespace homolpn
