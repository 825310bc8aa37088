#pragma once

#include "phantom/f2.hpp"

#include <cstddef>
#include <string>

namespace phantom {

/// Per-type Pauli weights of an operator.
struct WeightVector {
    std::size_t wx = 0, wz = 0, wy = 0;
    std::size_t total() const { return wx + wz + wy; }
    auto operator<=>(const WeightVector&) const = default;
};

/// n-qubit Pauli operator i^phase * X^x Z^z with phase tracked mod 4.
struct PauliOp {
    std::size_t n = 0;
    BitVec x, z;
    int phase = 0;  // exponent of i

    PauliOp() = default;
    explicit PauliOp(std::size_t nq) : n(nq), x(nq), z(nq) {}
    PauliOp(BitVec xv, BitVec zv, int ph = 0);

    /// From a symplectic row (x|z).
    static PauliOp from_symplectic(const BitVec& row, int phase = 0);
    BitVec to_symplectic() const { return x.concat(z); }

    std::size_t weight() const;
    WeightVector weight_vector() const;

    bool commutes(const PauliOp& o) const;
    bool is_identity() const { return x.zero() && z.zero() && phase % 4 == 0; }

    PauliOp& operator*=(const PauliOp& o);
    friend PauliOp operator*(PauliOp a, const PauliOp& b) { a *= b; return a; }
    bool operator==(const PauliOp&) const = default;

    /// e.g. "+XIZY", phase prefix in {+, i, -, -i}.
    std::string str() const;
};

}  // namespace phantom
