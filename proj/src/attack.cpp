#include "homolpn/attack.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "homolpn/rng.hpp"

namespace homolpn {

CpaTranscript transcript_from_records(const std::vector<TransmissionRecord>& records, BitMatrix g, BitMatrix s,
                                      double p) {
    if (g.cols() != s.rows() || s.rows() != s.cols()) {
        throw MalformedTranscript("G must be m x n and S must be n x n");
    }
    CpaTranscript transcript{{}, std::move(g), std::move(s), p};
    transcript.z_samples.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.t != i + 1) {
            throw MalformedTranscript("record " + std::to_string(i) + " has t=" + std::to_string(r.t) + ", expected " +
                                      std::to_string(i + 1));
        }
        if (!r.a.is_zero()) {
            throw MalformedTranscript("record t=" + std::to_string(r.t) + " has non-zero plaintext; not a CPA run");
        }
        if (r.z.size() != transcript.s.rows()) throw MalformedTranscript("sample length does not match n");
        transcript.z_samples.push_back(r.z);
    }
    return transcript;
}

double noise_lower_bound(double p, std::size_t w) {
    if (!(p >= 0.0 && p < 0.5)) throw std::domain_error("noise_lower_bound: p must be in [0, 0.5)");
    return (1.0 - std::pow(1.0 - 2.0 * p, static_cast<double>(w + 1))) / 2.0;
}

double xor_fold_estimate(double p, std::size_t fold, std::size_t trials, std::uint64_t seed) {
    if (fold == 0 || trials == 0) throw std::invalid_argument("xor_fold_estimate: fold and trials must be >= 1");
    Rng rng(seed);
    std::size_t odd = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        bool parity = false;
        for (std::size_t k = 0; k < fold; ++k) parity ^= rng.bernoulli(p);
        odd += parity ? 1 : 0;
    }
    return static_cast<double>(odd) / static_cast<double>(trials);
}

LpnInstance eliminate_randomness(const CpaTranscript& transcript, std::size_t l) {
    const std::size_t m = transcript.g.rows();
    const std::size_t n = transcript.g.cols();
    if (l == 0 || l >= m) throw std::invalid_argument("eliminate_randomness: need 0 < l < m");
    if (transcript.s.rows() != n || transcript.s.cols() != n) throw MalformedTranscript("S must be n x n");

    const std::size_t r = m - l;
    // Row i holds the u-coefficients of equation i: column i of G*.
    const BitMatrix u_coeffs = transcript.g.block(l, 0, r, n).transpose();
    std::vector<std::size_t> u_columns(r);
    std::iota(u_columns.begin(), u_columns.end(), 0);

    LpnInstance instance;
    instance.n = n;
    instance.tau = transcript.tau();
    const std::size_t per_sample = n - r;
    instance.rows.reserve(transcript.tau() * per_sample);

    BitMatrix power = transcript.s;
    for (std::size_t i = 0; i < transcript.tau(); ++i) {
        const std::size_t t = i + 1;
        if (t > 1) power = mat_mul(power, transcript.s);
        const BitVec& z = transcript.z_samples[i];
        if (z.size() != n) throw MalformedTranscript("sample length does not match n");

        const BitMatrix system = u_coeffs.hconcat(power.transpose());
        const auto [reduced, record] = eliminate(system, u_columns);
        if (reduced.rows() != per_sample) instance.degenerate_samples.push_back(t);

        const BitVec d = replay_bits(record, z);
        for (std::size_t j = 0; j < reduced.rows(); ++j) {
            instance.rows.push_back(reduced.row(j).slice(r, n));
            instance.rhs.push_back(d[j] ? 1 : 0);
            instance.combo_weights.push_back(record.row_ops[j].size());
        }
    }

    std::size_t w_eff = 0;
    if (!instance.combo_weights.empty()) {
        w_eff = *std::min_element(instance.combo_weights.begin(), instance.combo_weights.end()) - 1;
    }
    instance.epsilon_bound = noise_lower_bound(transcript.p, w_eff);
    return instance;
}

double empirical_noise(const LpnInstance& instance, const BitVec& key) {
    if (instance.rows.empty()) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t j = 0; j < instance.rows.size(); ++j) {
        if (static_cast<std::uint8_t>(key.dot(instance.rows[j])) != instance.rhs[j]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(instance.rows.size());
}

KeyRecovery brute_force_recover(const LpnInstance& instance) {
    if (instance.n > max_brute_force_bits) {
        throw TooLarge("brute force limited to n <= " + std::to_string(max_brute_force_bits) + ", got n=" +
                       std::to_string(instance.n));
    }
    if (instance.rows.empty()) throw EmptyInstance("LPN instance has no equations");

    // Integer k encodes BitVec::from_uint(k, n), so ascending k is lexicographic order.
    std::vector<std::uint32_t> masks;
    masks.reserve(instance.rows.size());
    for (const auto& row : instance.rows) masks.push_back(static_cast<std::uint32_t>(row.to_uint()));

    const std::uint32_t key_count = std::uint32_t{1} << instance.n;
    std::size_t best_hits = 0;
    std::uint32_t best_key = 0;
    for (std::uint32_t k = 0; k < key_count; ++k) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < masks.size(); ++j) {
            hits += static_cast<std::size_t>((std::popcount(k & masks[j]) & 1) == instance.rhs[j]);
        }
        if (hits > best_hits || k == 0) {
            best_hits = hits;
            best_key = k;
        }
    }
    return {BitVec::from_uint(best_key, instance.n),
            static_cast<double>(best_hits) / static_cast<double>(instance.rows.size())};
}

namespace {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("bad " + std::string(what) + " value '" + std::string(text) + "'");
    }
    return value;
}

std::string_view header_value(std::string_view field, std::string_view key) {
    if (field.size() <= key.size() || field.substr(0, key.size()) != key || field[key.size()] != '=') {
        throw ParseError("LPN header field '" + std::string(field) + "' should start with " + std::string(key) + "=");
    }
    return field.substr(key.size() + 1);
}

}  // namespace

void export_lpn(const LpnInstance& instance, std::ostream& os) {
    os << "n=" << instance.n << ",epsilon=" << format_double(instance.epsilon_bound) << ",tau=" << instance.tau
       << ",rows=" << instance.rows.size() << '\n';
    for (std::size_t j = 0; j < instance.rows.size(); ++j) {
        os << instance.rows[j].to_string() << ',' << static_cast<int>(instance.rhs[j]) << ','
           << instance.combo_weights[j] << '\n';
    }
    if (!os) throw std::runtime_error("export_lpn: write failed");
}

LpnInstance import_lpn(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("LPN file is empty");
    std::vector<std::string_view> fields;
    {
        std::string_view rest = line;
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
            fields.push_back(rest.substr(0, pos));
        }
        fields.push_back(rest);
    }
    if (fields.size() != 4) throw ParseError("LPN header must be n=..,epsilon=..,tau=..,rows=..");

    LpnInstance instance;
    instance.n = parse_number<std::size_t>(header_value(fields[0], "n"), "n");
    instance.epsilon_bound = parse_number<double>(header_value(fields[1], "epsilon"), "epsilon");
    instance.tau = parse_number<std::size_t>(header_value(fields[2], "tau"), "tau");
    const auto count = parse_number<std::size_t>(header_value(fields[3], "rows"), "rows");

    for (std::size_t j = 0; j < count; ++j) {
        if (!std::getline(is, line)) throw ParseError("LPN file ends after " + std::to_string(j) + " rows");
        const std::string_view view = line;
        const auto c1 = view.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
        if (c2 == std::string_view::npos) throw ParseError("LPN row needs three comma-separated fields");
        const auto bits = view.substr(0, c1);
        const auto rhs = view.substr(c1 + 1, c2 - c1 - 1);
        if (bits.size() != instance.n) throw ParseError("LPN row has wrong length");
        if (rhs != "0" && rhs != "1") throw ParseError("LPN right-hand side must be 0 or 1");
        instance.rows.push_back(BitVec::from_string(bits));
        instance.rhs.push_back(rhs == "1" ? 1 : 0);
        instance.combo_weights.push_back(parse_number<std::size_t>(view.substr(c2 + 1), "combo_weight"));
    }
    while (std::getline(is, line)) {
        if (!line.empty()) throw ParseError("LPN file has more rows than its header declares");
    }
    return instance;
}

}  // namespace homolpn
