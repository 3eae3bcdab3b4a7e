#pragma once

// Dense bit-packed vectors and matrices over GF(2).
//
// Bit 0 of a vector is its leftmost printed digit, so "1000110" has bit 0
// set and bit 6 clear. Matrix rows print the same way.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace homolpn {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotInvertible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BitVec {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVec() = default;
    explicit BitVec(std::size_t len);

    /// Parses a string of '0'/'1' characters.
    static BitVec from_string(std::string_view bits);
    /// Unit vector e_index of the given length.
    static BitVec unit(std::size_t len, std::size_t index);
    /// Low `len` bits of `value`, most significant first (bit 0 = MSB).
    static BitVec from_uint(std::uint64_t value, std::size_t len);

    [[nodiscard]] std::size_t size() const noexcept { return len_; }
    [[nodiscard]] bool empty() const noexcept { return len_ == 0; }

    /// Bounds-checked access; throws std::out_of_range.
    [[nodiscard]] bool at(std::size_t i) const;
    [[nodiscard]] bool operator[](std::size_t i) const noexcept {
        return (words_[i / word_bits] >> (i % word_bits)) & 1U;
    }
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i);

    [[nodiscard]] std::size_t weight() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept;
    /// Inner product over GF(2).
    [[nodiscard]] bool dot(const BitVec& other) const;

    [[nodiscard]] BitVec slice(std::size_t first, std::size_t count) const;
    [[nodiscard]] BitVec concat(const BitVec& tail) const;

    /// Inverse of from_uint; requires size() <= 64.
    [[nodiscard]] std::uint64_t to_uint() const;

    BitVec& operator^=(const BitVec& other);
    friend BitVec operator^(BitVec lhs, const BitVec& rhs) {
        lhs ^= rhs;
        return lhs;
    }
    friend bool operator==(const BitVec&, const BitVec&) = default;

    [[nodiscard]] std::string to_string() const;
    /// Packs bits into hex nibbles, leftmost bit first; the tail is zero-padded.
    [[nodiscard]] std::string to_hex() const;
    static BitVec from_hex(std::string_view hex, std::size_t len);

    [[nodiscard]] std::span<const word_type> words() const noexcept { return words_; }

private:
    void check_same_size(const BitVec& other) const;

    std::size_t len_ = 0;
    std::vector<word_type> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);
    /// Builds from explicit rows; all must have the same length.
    static BitMatrix from_rows(std::vector<BitVec> rows);
    /// Convenience for literals: {"1000110", "0100101", ...}.
    static BitMatrix from_strings(const std::vector<std::string_view>& rows);
    static BitMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return row_count_; }
    [[nodiscard]] std::size_t cols() const noexcept { return col_count_; }

    [[nodiscard]] bool at(std::size_t r, std::size_t c) const;
    [[nodiscard]] bool operator()(std::size_t r, std::size_t c) const noexcept { return data_[r][c]; }
    void set(std::size_t r, std::size_t c, bool value = true);

    [[nodiscard]] const BitVec& row(std::size_t r) const { return data_.at(r); }
    [[nodiscard]] BitVec column(std::size_t c) const;
    void set_row(std::size_t r, BitVec value);
    void xor_row(std::size_t target, std::size_t source) { data_[target] ^= data_[source]; }
    void swap_rows(std::size_t a, std::size_t b) { std::swap(data_[a], data_[b]); }

    [[nodiscard]] BitMatrix transpose() const;
    [[nodiscard]] BitMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
    /// [this | right]
    [[nodiscard]] BitMatrix hconcat(const BitMatrix& right) const;
    /// [this ; below]
    [[nodiscard]] BitMatrix vconcat(const BitMatrix& below) const;

    [[nodiscard]] std::size_t count_ones() const noexcept;
    /// Fraction of entries equal to one; 0 for an empty matrix.
    [[nodiscard]] double density() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] bool is_identity() const noexcept;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    /// Text format: "ROWS COLS" then one line of '0'/'1' per row.
    [[nodiscard]] std::string to_text() const;
    static BitMatrix from_text(std::string_view text);

private:
    std::size_t row_count_ = 0;
    std::size_t col_count_ = 0;
    std::vector<BitVec> data_;
};

std::ostream& operator<<(std::ostream& os, const BitVec& v);
std::ostream& operator<<(std::ostream& os, const BitMatrix& m);

[[nodiscard]] BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
[[nodiscard]] BitVec vec_mat_mul(const BitVec& v, const BitMatrix& m);
[[nodiscard]] BitMatrix invert(const BitMatrix& m);
[[nodiscard]] std::size_t rank(BitMatrix m);

/// Row operations performed by eliminate().
struct EliminationRecord {
    /// Target columns that received a pivot, in processing order.
    std::vector<std::size_t> pivot_columns;
    /// Input row consumed as pivot for each entry of pivot_columns.
    std::vector<std::size_t> pivot_rows;
    /// For each output row, the sorted input-row indices whose XOR produced it.
    std::vector<std::vector<std::size_t>> row_ops;
    /// Unknowns removed by a pivot (columns that were already zero are not counted).
    std::size_t eliminated_count = 0;
};

struct Elimination {
    BitMatrix reduced;
    EliminationRecord record;
};

/// Clears `eliminate_cols` from `system` by Gaussian elimination.
///
/// Columns are processed in the order given. For each, the lowest-index row
/// not yet used as a pivot and holding a one in that column becomes the pivot
/// and is XORed into every other remaining row with a one there. Pivot rows
/// still carry the eliminated unknowns and are dropped; the surviving rows are
/// returned in ascending input order.
[[nodiscard]] Elimination eliminate(const BitMatrix& system, std::span<const std::size_t> eliminate_cols);

/// XORs input rows as listed in `record.row_ops`.
[[nodiscard]] BitMatrix replay_rows(const EliminationRecord& record, const BitMatrix& input);
/// Same replay applied to a right-hand-side column.
[[nodiscard]] BitVec replay_bits(const EliminationRecord& record, const BitVec& rhs);

}  // namespace homolpn
