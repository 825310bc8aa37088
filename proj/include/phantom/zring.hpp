#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace phantom {

/// Dense matrix over Z_{2^l}, l <= 6.
struct ZMat {
    std::size_t rows = 0, cols = 0;
    unsigned mod_bits = 2;  // modulus 2^mod_bits
    std::vector<std::uint8_t> a;

    ZMat() = default;
    ZMat(std::size_t r, std::size_t c, unsigned l)
        : rows(r), cols(c), mod_bits(l), a(r * c, 0) {}
    std::uint8_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    std::uint8_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint8_t mask() const { return static_cast<std::uint8_t>((1u << mod_bits) - 1); }
};

/// Howell normal form: canonical spanning set of the row module, including
/// annihilator combinations.
ZMat howell_form(const ZMat& m);

/// Rows generate the full kernel {x : M x^T = 0 mod 2^l}.
ZMat kernel_mod2l(const ZMat& m);

/// x * M over Z_{2^l}.
std::vector<std::uint8_t> zmat_vecmul(const std::vector<std::uint8_t>& x, const ZMat& m);

}  // namespace phantom
