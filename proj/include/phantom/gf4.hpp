#pragma once

#include "phantom/code.hpp"

#include <cstdint>
#include <vector>

namespace phantom {

/// GF(4) element in the self-dual normal basis {w, w^2}: x = g1 w + g2 w^2,
/// packed as g1 | g2 << 1.
struct Gf4 {
    std::uint8_t v = 0;

    static constexpr Gf4 zero() { return {0}; }
    static constexpr Gf4 one() { return {3}; }  // 1 = w + w^2
    static constexpr Gf4 omega() { return {1}; }
    static constexpr Gf4 omega2() { return {2}; }

    bool g1() const { return v & 1; }
    bool g2() const { return (v >> 1) & 1; }
    bool is_zero() const { return v == 0; }
    bool operator==(const Gf4&) const = default;
};

Gf4 gf4_add(Gf4 a, Gf4 b);
Gf4 gf4_mul(Gf4 a, Gf4 b);
/// Conjugate x^2 (swaps the normal-basis coordinates).
Gf4 gf4_conj(Gf4 a);
/// tr(x) = x + x^2 in {0, 1}.
int gf4_trace(Gf4 a);

using Gf4Vec = std::vector<Gf4>;
using Gf4Mat = std::vector<Gf4Vec>;

/// GF(4)-linear CSS qudit code with one logical qudit.
struct Gf4Code {
    std::size_t n = 0;
    Gf4Mat hx, hz;
    Gf4Vec lx;
};

/// GF(2^e) with a runtime-selected irreducible polynomial (Rabin test).
class F2e {
public:
    explicit F2e(unsigned degree);
    unsigned degree() const { return e_; }
    std::uint64_t order() const { return (std::uint64_t{1} << e_) - 1; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t exp) const;

private:
    unsigned e_;
    std::uint64_t poly_;  // includes the x^e term
};

/// Quantum quadratic-residue code over GF(4) for an odd prime p with
/// p mod 8 in {3, 5, 7}: X stabilizers from the dual QR code, Z stabilizers
/// equal (p = 8k+3) or conjugate (p = 8k-1, 8k-3).
Gf4Code qr_gf4(std::size_t p);

/// [[2n, 2k]] qubit code: each GF(4) entry expanded in the {w, w^2} basis,
/// with the w and w^2 scalar multiples of every generator row included.
CssCode binarize(const Gf4Code& code);

}  // namespace phantom
