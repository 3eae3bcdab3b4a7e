#include "homolpn/keystream.hpp"

#include <stdexcept>
#include <string>

#include "homolpn/rng.hpp"

namespace homolpn {

BitMatrix random_state_matrix(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_state_matrix: n must be at least 1");
    BitMatrix s = BitMatrix::identity(n);
    if (n == 1) return s;
    Rng rng(seed);
    const std::size_t ops = 4 * n * n;
    for (std::size_t k = 0; k < ops; ++k) {
        const auto i = static_cast<std::size_t>(rng.below(n));
        auto j = static_cast<std::size_t>(rng.below(n - 1));
        if (j >= i) ++j;
        if (rng.next() & 1U) {
            s.xor_row(i, j);
        } else {
            s.swap_rows(i, j);
        }
    }
    return s;
}

LinearKeystream::LinearKeystream(BitMatrix s, BitVec key) : s_(std::move(s)), key_(std::move(key)) {
    if (s_.rows() != s_.cols()) throw DimensionMismatch("state matrix must be square");
    if (s_.rows() != key_.size()) {
        throw DimensionMismatch("key length " + std::to_string(key_.size()) + " does not match state dimension " +
                                std::to_string(s_.rows()));
    }
    if (rank(s_) != s_.rows()) throw NotInvertible("state matrix must be invertible");
    cached_t_ = 1;
    cached_power_ = s_;
}

const BitMatrix& LinearKeystream::power(std::size_t t) {
    if (t == 0) throw std::invalid_argument("keystream index t starts at 1");
    if (t < cached_t_) {
        cached_t_ = 1;
        cached_power_ = s_;
    }
    while (cached_t_ < t) {
        cached_power_ = mat_mul(cached_power_, s_);
        ++cached_t_;
    }
    return cached_power_;
}

BitVec LinearKeystream::keystream_at(std::size_t t) { return vec_mat_mul(key_, power(t)); }

std::vector<BitVec> LinearKeystream::state_columns(std::size_t t) {
    const BitMatrix transposed = power(t).transpose();
    std::vector<BitVec> cols;
    cols.reserve(n());
    for (std::size_t i = 0; i < n(); ++i) cols.push_back(transposed.row(i));
    return cols;
}

}  // namespace homolpn
