#include "phantom/poly.hpp"

#include <bit>
#include <stdexcept>

namespace phantom {

BitVec monomial_eval(std::uint32_t vars, std::size_t m) {
    BitVec v(std::size_t{1} << m);
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << m); ++c)
        if ((c & vars) == vars) v.set(c, true);
    return v;
}

BitVec negated_complement_eval(std::uint32_t vars, std::size_t m) {
    std::uint32_t outside = ~vars & ((std::uint32_t{1} << m) - 1);
    BitVec v(std::size_t{1} << m);
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << m); ++c)
        if ((c & outside) == 0) v.set(c, true);
    return v;
}

std::vector<std::uint32_t> monomials_of_degree(std::size_t m, std::size_t d) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == d) out.push_back(mask);
    return out;
}

std::vector<std::uint32_t> monomials_up_to_degree(std::size_t m, std::size_t r) {
    std::vector<std::uint32_t> out;
    for (std::size_t d = 0; d <= r; ++d)
        for (auto mono : monomials_of_degree(m, d)) out.push_back(mono);
    return out;
}

BitMatrix rm_generator(std::size_t r, std::size_t m) {
    BitMatrix g(0, std::size_t{1} << m);
    for (auto mono : monomials_up_to_degree(m, r)) g.append_row(monomial_eval(mono, m));
    return g;
}

Perm affine_perm(const BitMatrix& a, const BitVec& b) {
    std::size_t m = a.rows();
    if (a.cols() != m || b.size() != m) throw std::invalid_argument("affine_perm shape mismatch");
    if (!is_invertible(a)) throw std::invalid_argument("affine_perm needs invertible A");
    std::size_t points = std::size_t{1} << m;
    Perm sigma(points);
    for (std::size_t v = 0; v < points; ++v) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < m; ++i) {
            bool bit = b.get(i);
            for (std::size_t j = 0; j < m; ++j)
                if (a.get(i, j)) bit ^= (v >> j) & 1;
            if (bit) w |= std::size_t{1} << i;
        }
        sigma[v] = w;  // sigma(v) = T(v)
    }
    return perm_inverse(sigma);
}

BitVec substitute_eval(std::uint32_t vars, const BitMatrix& a, const BitVec& b, std::size_t m) {
    std::size_t points = std::size_t{1} << m;
    BitVec out(points);
    for (std::size_t v = 0; v < points; ++v) {
        bool val = true;
        for (std::size_t i = 0; i < m && val; ++i) {
            if (!((vars >> i) & 1)) continue;
            bool xi = b.get(i);
            for (std::size_t j = 0; j < m; ++j)
                if (a.get(i, j)) xi ^= (v >> j) & 1;
            val = xi;
        }
        out.set(v, val);
    }
    return out;
}

}  // namespace phantom
