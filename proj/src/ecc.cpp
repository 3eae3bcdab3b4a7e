#include "homolpn/ecc.hpp"

#include <string>

namespace homolpn {

LinearBlockCode LinearBlockCode::from_generator(BitMatrix generator, std::size_t max_redundancy) {
    const std::size_t m = generator.rows();
    const std::size_t n = generator.cols();
    if (m == 0 || m > n) {
        throw DimensionMismatch("generator must be m x n with 0 < m <= n, got " + std::to_string(m) + "x" +
                                std::to_string(n));
    }
    if (!generator.block(0, 0, m, m).is_identity()) {
        throw std::invalid_argument("generator is not systematic: first m columns must be I_m");
    }
    if (n - m > max_redundancy) {
        throw TableTooLarge("syndrome table needs 2^" + std::to_string(n - m) + " entries, cap is 2^" +
                            std::to_string(max_redundancy));
    }

    LinearBlockCode code;
    const BitMatrix redundancy = generator.block(0, m, m, n - m);
    code.parity_check_ = redundancy.transpose().hconcat(BitMatrix::identity(n - m));
    code.generator_ = std::move(generator);
    code.build_table(max_redundancy);
    return code;
}

LinearBlockCode LinearBlockCode::from_systematic_parity(const BitMatrix& p_block, const BitMatrix& q_block,
                                                        std::size_t max_redundancy) {
    if (p_block.cols() != q_block.cols()) throw DimensionMismatch("P and Q must have the same column count");
    const std::size_t random_rows = p_block.rows();
    const std::size_t data_rows = q_block.rows();
    const std::size_t m = random_rows + data_rows;
    // [[I_{m-l}, 0, P], [0, I_l, Q]] is [I_m | [P; Q]].
    BitMatrix generator = BitMatrix::identity(m).hconcat(p_block.vconcat(q_block));
    return from_generator(std::move(generator), max_redundancy);
}

void LinearBlockCode::build_table(std::size_t max_redundancy) {
    const std::size_t n = this->n();
    const std::size_t r = n - m();
    if (r > max_redundancy) throw TableTooLarge("redundancy exceeds table cap");
    const std::size_t table_size = std::size_t{1} << r;
    syndrome_table_.assign(table_size, std::nullopt);

    // Syndrome contribution of each single-bit error, as an integer.
    std::vector<std::uint64_t> column_syndrome(n);
    for (std::size_t j = 0; j < n; ++j) {
        column_syndrome[j] = r == 0 ? 0 : parity_check_.column(j).to_uint();
    }

    std::size_t filled = 0;
    auto insert = [&](const std::vector<std::size_t>& positions) {
        std::uint64_t s = 0;
        for (auto pos : positions) s ^= column_syndrome[pos];
        if (syndrome_table_[s]) return false;
        BitVec e(n);
        for (auto pos : positions) e.set(pos);
        syndrome_table_[s] = std::move(e);
        ++filled;
        return true;
    };

    // Weight by weight, first writer wins, so each entry is a minimal-weight leader.
    t_capability_ = 0;
    insert({});
    for (std::size_t weight = 1; weight <= n && filled < table_size; ++weight) {
        bool collided = false;
        std::vector<std::size_t> idx(weight);
        for (std::size_t i = 0; i < weight; ++i) idx[i] = i;
        while (true) {
            if (!insert(idx)) collided = true;
            // Next combination in lexicographic order.
            std::size_t k = weight;
            while (k > 0 && idx[k - 1] == n - weight + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < weight; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (collided) break;
        t_capability_ = weight;
    }
}

std::optional<BitVec> LinearBlockCode::coset_leader(const BitVec& syndrome) const {
    if (syndrome.size() != n() - m()) throw DimensionMismatch("syndrome length mismatch");
    const std::uint64_t index = syndrome.empty() ? 0 : syndrome.to_uint();
    return syndrome_table_.at(index);
}

BitVec LinearBlockCode::syndrome(const BitVec& word) const {
    if (word.size() != n()) throw DimensionMismatch("word length mismatch");
    return vec_mat_mul(word, parity_check_.transpose());
}

BitVec LinearBlockCode::encode(const BitVec& msg) const {
    if (msg.size() != m()) {
        throw DimensionMismatch("encode: message has " + std::to_string(msg.size()) + " bits, code expects " +
                                std::to_string(m()));
    }
    return vec_mat_mul(msg, generator_);
}

DecodeResult LinearBlockCode::decode(const BitVec& word) const {
    if (word.size() != n()) {
        throw DimensionMismatch("decode: word has " + std::to_string(word.size()) + " bits, code expects " +
                                std::to_string(n()));
    }
    const auto leader = coset_leader(syndrome(word));
    if (!leader || leader->weight() > t_capability_) {
        throw DecodeFailure("syndrome exceeds correction capability t=" + std::to_string(t_capability_));
    }
    const BitVec corrected = word ^ *leader;
    return {corrected.slice(0, m()), leader->weight()};
}

LinearBlockCode hamming_7_4() {
    return LinearBlockCode::from_generator(BitMatrix::from_strings({
        "1000110",
        "0100101",
        "0010011",
        "0001111",
    }));
}

}  // namespace homolpn
