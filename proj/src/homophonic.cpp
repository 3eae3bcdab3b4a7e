#include "homolpn/homophonic.hpp"

#include <algorithm>
#include <limits>

namespace homolpn {

void SystemParams::check() const {
    if (l == 0) throw InfeasibleParams("l must be at least 1");
    if (l >= m) throw InfeasibleParams("l < m violated: the scheme needs at least one random bit (m - l >= 1)");
    if (m > 2 * l) throw InfeasibleParams("m <= 2l violated: more random bits than data bits");
    if (m >= n) throw InfeasibleParams("m < n violated");
    if (!(p >= 0.0 && p < 0.5)) throw InfeasibleParams("0 <= p < 0.5 violated");
}

HomophonicCode HomophonicCode::from_matrix(BitMatrix g_h, std::size_t l, std::size_t w) {
    if (g_h.rows() != g_h.cols()) throw DimensionMismatch("G_H must be square");
    if (l == 0 || l >= g_h.rows()) throw InfeasibleParams("need 0 < l < m");
    HomophonicCode code;
    code.g_h_inv_ = invert(g_h);
    const std::size_t m = g_h.rows();
    code.g_h4_ = g_h.block(l, m - l, m - l, l);
    code.g_h_ = std::move(g_h);
    code.l_ = l;
    code.w_ = w;
    return code;
}

HomophonicCode build_generic(const SystemParams& params, const LinearBlockCode& ecc) {
    params.check();
    if (ecc.m() != params.m || ecc.n() != params.n) {
        throw DimensionMismatch("ECC is (" + std::to_string(ecc.m()) + "," + std::to_string(ecc.n()) +
                                "), params ask for (" + std::to_string(params.m) + "," + std::to_string(params.n) +
                                ")");
    }
    const std::size_t m = params.m;
    const std::size_t l = params.l;
    const std::size_t r = m - l;
    if (params.w + 1 > r) {
        throw InfeasibleParams("rank(G*) >= w + 1 unreachable: w + 1 = " + std::to_string(params.w + 1) +
                               " exceeds m - l = " + std::to_string(r) + " (the rank of G*)");
    }

    // Columns of G4 as vectors over the m - l random rows.
    const std::size_t d = 2 * l - m;
    std::vector<BitVec> columns;
    columns.reserve(l);
    for (std::size_t j = 0; j < d; ++j) columns.push_back(BitVec::unit(r, (r + j - std::min(d, r)) % r));
    for (std::size_t j = 0; j < r; ++j) columns.push_back(BitVec::unit(r, j));

    const std::size_t target = std::max<std::size_t>(params.w, 1);
    for (std::size_t j = 0; j < l; ++j) {
        std::size_t attempts = 0;
        while (columns[j].weight() < target) {
            if (attempts++ == l) {
                throw InfeasibleParams("column " + std::to_string(j) + " of G4 cannot reach weight " +
                                       std::to_string(target));
            }
            const std::size_t current = columns[j].weight();
            std::size_t pick = l;
            for (std::size_t k = 0; k < l && pick == l; ++k) {
                if (k != j && (columns[j] ^ columns[k]).weight() > current) pick = k;
            }
            if (pick == l) {
                // Greedy is stuck; G* already contains I_{m-l}, so setting a
                // missing bit directly cannot lower its rank.
                std::size_t row = 0;
                while (columns[j][row]) ++row;
                columns[j].set(row);
                continue;
            }
            columns[j] ^= columns[pick];
        }
    }

    BitMatrix g_h(m, m);
    for (std::size_t i = 0; i < l; ++i) g_h.set(i, r + i);
    for (std::size_t i = 0; i < r; ++i) {
        g_h.set(l + i, i);
        for (std::size_t j = 0; j < l; ++j) {
            if (columns[j][i]) g_h.set(l + i, r + j);
        }
    }
    return HomophonicCode::from_matrix(std::move(g_h), l, params.w);
}

BitVec encode_h(const HomophonicCode& code, const BitVec& a, const BitVec& u) {
    if (a.size() != code.l() || u.size() != code.random_bits()) {
        throw DimensionMismatch("encode_h: expected |a| = " + std::to_string(code.l()) + ", |u| = " +
                                std::to_string(code.random_bits()));
    }
    return vec_mat_mul(a.concat(u), code.g_h());
}

std::pair<BitVec, BitVec> decode_h(const HomophonicCode& code, const BitVec& word) {
    if (word.size() != code.m()) throw DimensionMismatch("decode_h: word length must be m");
    const BitVec au = vec_mat_mul(word, code.g_h_inv());
    return {au.slice(0, code.l()), au.slice(code.l(), code.random_bits())};
}

BitMatrix compose(const HomophonicCode& code, const LinearBlockCode& ecc) {
    if (code.m() != ecc.m()) throw DimensionMismatch("compose: G_H is m x m but G_ECC has a different m");
    return mat_mul(code.g_h(), ecc.generator());
}

CriteriaReport validate(const BitMatrix& g_h, std::size_t l, std::size_t w, const LinearBlockCode& ecc) {
    if (g_h.rows() != g_h.cols()) throw DimensionMismatch("G_H must be square");
    const std::size_t m = g_h.rows();
    if (ecc.m() != m) throw DimensionMismatch("G_H and G_ECC disagree on m");
    if (l == 0 || l >= m) throw InfeasibleParams("need 0 < l < m");

    CriteriaReport report;
    report.invertible = rank(g_h) == m;
    report.density_g_h = g_h.density();
    report.density_g_h_inv =
        report.invertible ? invert(g_h).density() : std::numeric_limits<double>::quiet_NaN();

    const BitMatrix g4 = g_h.block(l, m - l, m - l, l);
    report.min_column_weight = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < l; ++j) {
        report.min_column_weight = std::min(report.min_column_weight, g4.column(j).weight());
    }
    report.mixing_ok = report.min_column_weight > 0;

    const BitMatrix g = mat_mul(g_h, ecc.generator());
    report.density_g = g.density();
    report.g_star = g.block(l, 0, m - l, g.cols());
    report.g_star_rank = rank(report.g_star);

    const bool base = report.invertible && report.mixing_ok && report.min_column_weight >= w;
    report.passes_strict = base && report.g_star_rank >= w + 1;
    report.passes_lenient = base && report.g_star_rank >= w;
    return report;
}

CriteriaReport validate(const HomophonicCode& code, const LinearBlockCode& ecc) {
    return validate(code.g_h(), code.l(), code.w(), ecc);
}

std::optional<std::size_t> infer_generic_split(const BitMatrix& g_h) {
    if (g_h.rows() != g_h.cols() || g_h.rows() < 2) return std::nullopt;
    const std::size_t m = g_h.rows();
    for (std::size_t l = (m + 1) / 2; l < m; ++l) {
        const std::size_t r = m - l;
        if (g_h.block(0, 0, l, r).is_zero() && g_h.block(0, r, l, l).is_identity() &&
            g_h.block(l, 0, r, r).is_identity()) {
            return l;
        }
    }
    return std::nullopt;
}

}  // namespace homolpn
