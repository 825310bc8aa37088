#include "phantom/pauli.hpp"

#include <stdexcept>

namespace phantom {

PauliOp::PauliOp(BitVec xv, BitVec zv, int ph)
    : n(xv.size()), x(std::move(xv)), z(std::move(zv)), phase(((ph % 4) + 4) % 4) {
    if (x.size() != z.size()) throw std::invalid_argument("x/z size mismatch");
}

PauliOp PauliOp::from_symplectic(const BitVec& row, int phase) {
    if (row.size() % 2) throw std::invalid_argument("symplectic row must have even length");
    std::size_t n = row.size() / 2;
    return PauliOp(row.slice(0, n), row.slice(n, 2 * n), phase);
}

std::size_t PauliOp::weight() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (x.get(i) || z.get(i));
    return c;
}

WeightVector PauliOp::weight_vector() const {
    WeightVector w;
    for (std::size_t i = 0; i < n; ++i) {
        bool xi = x.get(i), zi = z.get(i);
        if (xi && zi) ++w.wy;
        else if (xi) ++w.wx;
        else if (zi) ++w.wz;
    }
    return w;
}

bool PauliOp::commutes(const PauliOp& o) const {
    return (x.dot(o.z) ^ z.dot(o.x)) == 0;
}

PauliOp& PauliOp::operator*=(const PauliOp& o) {
    if (n != o.n) throw std::invalid_argument("PauliOp size mismatch");
    // (X^x1 Z^z1)(X^x2 Z^z2): moving X^x2 past Z^z1 costs (-1)^{z1.x2} = i^{2 z1.x2}.
    phase = (phase + o.phase + 2 * (z.dot(o.x) ? 1 : 0)) % 4;
    x ^= o.x;
    z ^= o.z;
    return *this;
}

std::string PauliOp::str() const {
    // Display phase relative to Pauli letters: X^1 Z^1 = -i Y, so each Y
    // absorbs one power of i.
    static const char* prefix[4] = {"+", "i", "-", "-i"};
    int disp = phase;
    std::string body;
    for (std::size_t i = 0; i < n; ++i) {
        bool xi = x.get(i), zi = z.get(i);
        if (xi && zi) disp -= 1;
        body += xi ? (zi ? 'Y' : 'X') : (zi ? 'Z' : 'I');
    }
    return prefix[((disp % 4) + 4) % 4] + body;
}

}  // namespace phantom
