#include "phantom/zring.hpp"

#include <bit>
#include <stdexcept>

namespace phantom {

namespace {

int val2(std::uint8_t x, unsigned l) {
    if (x == 0) return static_cast<int>(l);
    return std::countr_zero(static_cast<unsigned>(x));
}

// Unit inverse mod 2^l (x odd).
std::uint8_t inv_unit(std::uint8_t x, unsigned l) {
    std::uint8_t mask = static_cast<std::uint8_t>((1u << l) - 1);
    std::uint8_t y = 1;
    for (unsigned i = 0; i < l; ++i) y = static_cast<std::uint8_t>(y * (2 - x * y)) & mask;
    return y & mask;
}

}  // namespace

ZMat howell_form(const ZMat& m_in) {
    unsigned l = m_in.mod_bits;
    std::uint8_t mask = m_in.mask();
    std::vector<std::vector<std::uint8_t>> rows;
    for (std::size_t i = 0; i < m_in.rows; ++i) {
        std::vector<std::uint8_t> r(m_in.cols);
        for (std::size_t j = 0; j < m_in.cols; ++j) r[j] = m_in.at(i, j);
        rows.push_back(std::move(r));
    }
    std::vector<std::vector<std::uint8_t>> done;
    for (std::size_t col = 0; col < m_in.cols; ++col) {
        // Pick the unreduced row with minimal 2-adic valuation at this column.
        std::size_t best = rows.size();
        int bestv = static_cast<int>(l);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            int v = val2(rows[i][col], l);
            if (v < bestv) {
                bestv = v;
                best = i;
            }
        }
        if (best == rows.size()) continue;
        auto pivot = rows[best];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        // Normalize the pivot entry to exactly 2^v.
        std::uint8_t unit = static_cast<std::uint8_t>(pivot[col] >> bestv);
        std::uint8_t uinv = inv_unit(unit, l);
        for (auto& x : pivot) x = static_cast<std::uint8_t>(x * uinv) & mask;
        // Eliminate below.
        for (auto& r : rows) {
            if (r[col] == 0) continue;
            std::uint8_t q = static_cast<std::uint8_t>(r[col] >> bestv);
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] = static_cast<std::uint8_t>(r[j] - q * pivot[j]) & mask;
        }
        // Reduce entries above the pivot modulo its value.
        for (auto& d : done) {
            std::uint8_t pv = pivot[col];
            if (pv == 0) continue;
            std::uint8_t q = static_cast<std::uint8_t>(d[col] / pv);
            if (q == 0) continue;
            for (std::size_t j = 0; j < d.size(); ++j)
                d[j] = static_cast<std::uint8_t>(d[j] - q * pivot[j]) & mask;
        }
        // Annihilator row re-enters the elimination queue.
        if (bestv > 0) {
            std::vector<std::uint8_t> ann(pivot.size());
            std::uint8_t factor = static_cast<std::uint8_t>(1u << (l - bestv));
            bool nonzero = false;
            for (std::size_t j = 0; j < pivot.size(); ++j) {
                ann[j] = static_cast<std::uint8_t>(pivot[j] * factor) & mask;
                nonzero |= ann[j] != 0;
            }
            if (nonzero) rows.push_back(std::move(ann));
        }
        done.push_back(std::move(pivot));
    }
    ZMat out(done.size(), m_in.cols, l);
    for (std::size_t i = 0; i < done.size(); ++i)
        for (std::size_t j = 0; j < m_in.cols; ++j) out.at(i, j) = done[i][j];
    return out;
}

ZMat kernel_mod2l(const ZMat& m) {
    unsigned l = m.mod_bits;
    // Howell-reduce [M^T | I]; rows with zero left block give kernel generators.
    ZMat aug(m.cols, m.rows + m.cols, l);
    for (std::size_t i = 0; i < m.cols; ++i) {
        for (std::size_t j = 0; j < m.rows; ++j) aug.at(i, j) = m.at(j, i);
        aug.at(i, m.rows + i) = 1;
    }
    ZMat h = howell_form(aug);
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < h.rows; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < m.rows && zero; ++j)
            if (h.at(i, j)) zero = false;
        if (zero) zero_rows.push_back(i);
    }
    ZMat out(zero_rows.size(), m.cols, l);
    for (std::size_t i = 0; i < zero_rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out.at(i, j) = h.at(zero_rows[i], m.rows + j);
    return out;
}

std::vector<std::uint8_t> zmat_vecmul(const std::vector<std::uint8_t>& x, const ZMat& m) {
    if (x.size() != m.rows) throw std::invalid_argument("zmat_vecmul shape mismatch");
    std::vector<std::uint8_t> out(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            out[j] = static_cast<std::uint8_t>(out[j] + x[i] * m.at(i, j)) & m.mask();
    }
    return out;
}

}  // namespace phantom
