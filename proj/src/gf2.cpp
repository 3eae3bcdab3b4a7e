#include "homolpn/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <ostream>
#include <sstream>

namespace homolpn {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + BitVec::word_bits - 1) / BitVec::word_bits; }

}  // namespace

BitVec::BitVec(std::size_t len) : len_(len), words_(words_for(len), 0) {}

BitVec BitVec::from_string(std::string_view bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw ParseError("bit string contains '" + std::string(1, bits[i]) + "'");
        }
    }
    return v;
}

BitVec BitVec::unit(std::size_t len, std::size_t index) {
    BitVec v(len);
    v.set(index);
    return v;
}

BitVec BitVec::from_uint(std::uint64_t value, std::size_t len) {
    if (len > 64) throw std::invalid_argument("from_uint: length exceeds 64");
    BitVec v(len);
    for (std::size_t i = 0; i < len; ++i) {
        if ((value >> (len - 1 - i)) & 1U) v.set(i);
    }
    return v;
}

std::uint64_t BitVec::to_uint() const {
    if (len_ > 64) throw std::invalid_argument("to_uint: length exceeds 64");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < len_; ++i) value = (value << 1) | static_cast<std::uint64_t>((*this)[i]);
    return value;
}

bool BitVec::at(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("bit index " + std::to_string(i) + " >= length " + std::to_string(len_));
    return (*this)[i];
}

void BitVec::set(std::size_t i, bool value) {
    if (i >= len_) throw std::out_of_range("bit index " + std::to_string(i) + " >= length " + std::to_string(len_));
    const word_type mask = word_type{1} << (i % word_bits);
    if (value) {
        words_[i / word_bits] |= mask;
    } else {
        words_[i / word_bits] &= ~mask;
    }
}

void BitVec::flip(std::size_t i) {
    if (i >= len_) throw std::out_of_range("bit index " + std::to_string(i) + " >= length " + std::to_string(len_));
    words_[i / word_bits] ^= word_type{1} << (i % word_bits);
}

std::size_t BitVec::weight() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool BitVec::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
}

bool BitVec::dot(const BitVec& other) const {
    check_same_size(other);
    word_type acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

BitVec BitVec::slice(std::size_t first, std::size_t count) const {
    if (first + count > len_) throw std::out_of_range("slice exceeds vector length");
    BitVec out(count);
    for (std::size_t i = 0; i < count; ++i) {
        if ((*this)[first + i]) out.set(i);
    }
    return out;
}

BitVec BitVec::concat(const BitVec& tail) const {
    BitVec out(len_ + tail.len_);
    out.words_.assign(out.words_.size(), 0);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    for (std::size_t i = 0; i < tail.len_; ++i) {
        if (tail[i]) out.set(len_ + i);
    }
    return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    check_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

void BitVec::check_same_size(const BitVec& other) const {
    if (len_ != other.len_) {
        throw DimensionMismatch("bit vector lengths differ: " + std::to_string(len_) + " vs " +
                                std::to_string(other.len_));
    }
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if ((*this)[i]) s[i] = '1';
    }
    return s;
}

std::string BitVec::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve((len_ + 3) / 4);
    for (std::size_t i = 0; i < len_; i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < len_ && (*this)[i + j]) nibble |= 1U;
        }
        s.push_back(digits[nibble]);
    }
    return s;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t len) {
    if (hex.size() != (len + 3) / 4) {
        throw ParseError("hex field '" + std::string(hex) + "' does not encode " + std::to_string(len) + " bits");
    }
    BitVec v(len);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        unsigned nibble = 0;
        auto [ptr, ec] = std::from_chars(hex.data() + i, hex.data() + i + 1, nibble, 16);
        if (ec != std::errc{} || ptr != hex.data() + i + 1) {
            throw ParseError("invalid hex digit in '" + std::string(hex) + "'");
        }
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t bit = 4 * i + j;
            const bool one = (nibble >> (3 - j)) & 1U;
            if (bit < len) {
                if (one) v.set(bit);
            } else if (one) {
                throw ParseError("hex field '" + std::string(hex) + "' has non-zero padding");
            }
        }
    }
    return v;
}

std::ostream& operator<<(std::ostream& os, const BitVec& v) { return os << v.to_string(); }

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : row_count_(rows), col_count_(cols), data_(rows, BitVec(cols)) {}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows) {
    BitMatrix m;
    m.row_count_ = rows.size();
    m.col_count_ = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != m.col_count_) throw DimensionMismatch("rows of unequal length");
    }
    m.data_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string_view>& rows) {
    std::vector<BitVec> parsed;
    parsed.reserve(rows.size());
    for (auto r : rows) parsed.push_back(BitVec::from_string(r));
    return from_rows(std::move(parsed));
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].set(i);
    return m;
}

bool BitMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= row_count_) throw std::out_of_range("row index out of range");
    return data_[r].at(c);
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    if (r >= row_count_) throw std::out_of_range("row index out of range");
    data_[r].set(c, value);
}

BitVec BitMatrix::column(std::size_t c) const {
    if (c >= col_count_) throw std::out_of_range("column index out of range");
    BitVec out(row_count_);
    for (std::size_t r = 0; r < row_count_; ++r) {
        if (data_[r][c]) out.set(r);
    }
    return out;
}

void BitMatrix::set_row(std::size_t r, BitVec value) {
    if (value.size() != col_count_) throw DimensionMismatch("row length does not match column count");
    data_.at(r) = std::move(value);
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(col_count_, row_count_);
    for (std::size_t r = 0; r < row_count_; ++r) {
        for (std::size_t c = 0; c < col_count_; ++c) {
            if (data_[r][c]) t.data_[c].set(r);
        }
    }
    return t;
}

BitMatrix BitMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
    if (row0 + rows > row_count_ || col0 + cols > col_count_) throw std::out_of_range("block exceeds matrix");
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) out.data_[r] = data_[row0 + r].slice(col0, cols);
    return out;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& right) const {
    if (row_count_ != right.row_count_) throw DimensionMismatch("hconcat: row counts differ");
    BitMatrix out;
    out.row_count_ = row_count_;
    out.col_count_ = col_count_ + right.col_count_;
    out.data_.reserve(row_count_);
    for (std::size_t r = 0; r < row_count_; ++r) out.data_.push_back(data_[r].concat(right.data_[r]));
    return out;
}

BitMatrix BitMatrix::vconcat(const BitMatrix& below) const {
    if (col_count_ != below.col_count_) throw DimensionMismatch("vconcat: column counts differ");
    BitMatrix out = *this;
    out.row_count_ += below.row_count_;
    out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
    return out;
}

std::size_t BitMatrix::count_ones() const noexcept {
    std::size_t total = 0;
    for (const auto& r : data_) total += r.weight();
    return total;
}

double BitMatrix::density() const noexcept {
    const std::size_t entries = row_count_ * col_count_;
    return entries == 0 ? 0.0 : static_cast<double>(count_ones()) / static_cast<double>(entries);
}

bool BitMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const BitVec& r) { return r.is_zero(); });
}

bool BitMatrix::is_identity() const noexcept {
    if (row_count_ != col_count_) return false;
    for (std::size_t r = 0; r < row_count_; ++r) {
        if (data_[r].weight() != 1 || !data_[r][r]) return false;
    }
    return true;
}

std::string BitMatrix::to_text() const {
    std::string s = std::to_string(row_count_) + " " + std::to_string(col_count_) + "\n";
    for (const auto& r : data_) {
        s += r.to_string();
        s += '\n';
    }
    return s;
}

BitMatrix BitMatrix::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    if (!std::getline(in, header)) throw ParseError("matrix text is empty");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    std::size_t rows = 0;
    std::size_t cols = 0;
    {
        const char* first = header.data();
        const char* last = header.data() + header.size();
        auto r1 = std::from_chars(first, last, rows);
        if (r1.ec != std::errc{} || r1.ptr == last || *r1.ptr != ' ') {
            throw ParseError("matrix header must be 'ROWS COLS', got '" + header + "'");
        }
        auto r2 = std::from_chars(r1.ptr + 1, last, cols);
        if (r2.ec != std::errc{} || r2.ptr != last) {
            throw ParseError("matrix header must be 'ROWS COLS', got '" + header + "'");
        }
    }

    BitMatrix m(rows, cols);
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) {
            throw ParseError("matrix text has " + std::to_string(r) + " rows, header says " + std::to_string(rows));
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() != cols) {
            throw ParseError("matrix row " + std::to_string(r) + " has " + std::to_string(line.size()) +
                             " columns, header says " + std::to_string(cols));
        }
        m.data_[r] = BitVec::from_string(line);
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line != "\r") throw ParseError("trailing data after matrix rows");
    }
    return m;
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) os << m.row(r) << '\n';
    return os;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) out.set_row(i, vec_mat_mul(a.row(i), b));
    return out;
}

BitVec vec_mat_mul(const BitVec& v, const BitMatrix& m) {
    if (v.size() != m.rows()) {
        throw DimensionMismatch("vec_mat_mul: vector of length " + std::to_string(v.size()) + " times " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    BitVec out(m.cols());
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t]) out ^= m.row(t);
    }
    return out;
}

BitMatrix invert(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("invert: matrix is not square");
    const std::size_t n = m.rows();
    BitMatrix work = m.hconcat(BitMatrix::identity(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && !work(pivot, col)) ++pivot;
        if (pivot == n) throw NotInvertible("matrix is singular (no pivot in column " + std::to_string(col) + ")");
        work.swap_rows(col, pivot);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && work(r, col)) work.xor_row(r, col);
        }
    }
    return work.block(0, n, n, n);
}

std::size_t rank(BitMatrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows() && !m(pivot, col)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(r, pivot);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, col)) m.xor_row(i, r);
        }
        ++r;
    }
    return r;
}

Elimination eliminate(const BitMatrix& system, std::span<const std::size_t> eliminate_cols) {
    const std::size_t n_rows = system.rows();
    {
        std::vector<std::size_t> sorted(eliminate_cols.begin(), eliminate_cols.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("eliminate: duplicate column index");
        }
        if (!sorted.empty() && sorted.back() >= system.cols()) {
            throw std::out_of_range("eliminate: column index out of range");
        }
    }

    BitMatrix work = system;
    // combos.row(i): which input rows are folded into working row i.
    BitMatrix combos = BitMatrix::identity(n_rows);
    std::vector<bool> is_pivot(n_rows, false);
    EliminationRecord record;

    for (const std::size_t col : eliminate_cols) {
        std::size_t pivot = 0;
        while (pivot < n_rows && (is_pivot[pivot] || !work(pivot, col))) ++pivot;
        if (pivot == n_rows) continue;
        is_pivot[pivot] = true;
        record.pivot_columns.push_back(col);
        record.pivot_rows.push_back(pivot);
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (!is_pivot[r] && work(r, col)) {
                work.xor_row(r, pivot);
                combos.xor_row(r, pivot);
            }
        }
    }
    record.eliminated_count = record.pivot_rows.size();

    std::vector<BitVec> kept;
    kept.reserve(n_rows - record.eliminated_count);
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (is_pivot[r]) continue;
        kept.push_back(work.row(r));
        std::vector<std::size_t> ops;
        const BitVec& combo = combos.row(r);
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (combo[i]) ops.push_back(i);
        }
        record.row_ops.push_back(std::move(ops));
    }

    BitMatrix reduced = kept.empty() ? BitMatrix(0, system.cols()) : BitMatrix::from_rows(std::move(kept));
    return {std::move(reduced), std::move(record)};
}

BitMatrix replay_rows(const EliminationRecord& record, const BitMatrix& input) {
    BitMatrix out(record.row_ops.size(), input.cols());
    for (std::size_t j = 0; j < record.row_ops.size(); ++j) {
        BitVec acc(input.cols());
        for (const std::size_t i : record.row_ops[j]) acc ^= input.row(i);
        out.set_row(j, std::move(acc));
    }
    return out;
}

BitVec replay_bits(const EliminationRecord& record, const BitVec& rhs) {
    BitVec out(record.row_ops.size());
    for (std::size_t j = 0; j < record.row_ops.size(); ++j) {
        bool acc = false;
        for (const std::size_t i : record.row_ops[j]) acc ^= rhs.at(i);
        if (acc) out.set(j);
    }
    return out;
}

}  // namespace homolpn
