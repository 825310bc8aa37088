#include "phantom/gf4.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace phantom {

Gf4 gf4_add(Gf4 a, Gf4 b) { return {static_cast<std::uint8_t>(a.v ^ b.v)}; }

Gf4 gf4_mul(Gf4 a, Gf4 b) {
    bool c1 = a.g1(), c2 = a.g2(), d1 = b.g1(), d2 = b.g2();
    bool cross = (c1 && d2) ^ (c2 && d1);
    bool g1 = (c2 && d2) ^ cross;
    bool g2 = (c1 && d1) ^ cross;
    return {static_cast<std::uint8_t>(g1 | (g2 << 1))};
}

Gf4 gf4_conj(Gf4 a) { return {static_cast<std::uint8_t>(a.g2() | (a.g1() << 1))}; }

int gf4_trace(Gf4 a) { return a.g1() ^ a.g2(); }

namespace {

// Polynomial arithmetic over F2 on uint64 coefficients (bit i = x^i).
std::uint64_t pmul_raw(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

int pdeg(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

std::uint64_t pmod(std::uint64_t a, std::uint64_t m) {
    int dm = pdeg(m);
    while (pdeg(a) >= dm) a ^= m << (pdeg(a) - dm);
    return a;
}

std::uint64_t pgcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = pmod(a, b);
        std::swap(a, b);
    }
    return a;
}

std::uint64_t pmulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return pmod(pmul_raw(a, b), m);
}

// x^(2^iter) mod f via repeated squaring of the current residue.
std::uint64_t frobenius_power(std::uint64_t start, unsigned iter, std::uint64_t f) {
    std::uint64_t x = start;
    for (unsigned i = 0; i < iter; ++i) x = pmulmod(x, x, f);
    return x;
}

bool is_irreducible(std::uint64_t f, unsigned e) {
    // Rabin: x^(2^e) == x mod f, and gcd(x^(2^(e/q)) - x, f) = 1 for primes q | e.
    std::uint64_t x = 2;
    if (frobenius_power(x, e, f) != x) return false;
    unsigned n = e;
    std::vector<unsigned> primes;
    for (unsigned q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            primes.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) primes.push_back(n);
    for (unsigned q : primes) {
        std::uint64_t y = frobenius_power(x, e / q, f) ^ x;
        if (pgcd(y, f) != 1) return false;
    }
    return true;
}

}  // namespace

F2e::F2e(unsigned degree) : e_(degree) {
    if (degree < 2 || degree > 30) throw std::invalid_argument("F2e degree out of range");
    std::uint64_t top = std::uint64_t{1} << degree;
    for (std::uint64_t low = 1; low < top; low += 2) {
        if (is_irreducible(top | low, degree)) {
            poly_ = top | low;
            return;
        }
    }
    throw std::runtime_error("no irreducible polynomial found");
}

std::uint64_t F2e::mul(std::uint64_t a, std::uint64_t b) const { return pmulmod(a, b, poly_); }

std::uint64_t F2e::pow(std::uint64_t a, std::uint64_t exp) const {
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) r = mul(r, a);
        a = mul(a, a);
        exp >>= 1;
    }
    return r;
}

namespace {

bool is_prime(std::size_t p) {
    if (p < 2) return false;
    for (std::size_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

Gf4Code qr_gf4(std::size_t p) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("qr_gf4: p must be an odd prime");
    std::size_t pm8 = p % 8;
    if (pm8 != 3 && pm8 != 5 && pm8 != 7)
        throw std::invalid_argument("qr_gf4: p mod 8 must be 3, 5, or 7");

    // m = multiplicative order of 4 mod p; splitting field GF(4^m).
    unsigned m = 1;
    std::size_t acc = 4 % p;
    while (acc != 1) {
        acc = acc * 4 % p;
        ++m;
    }
    F2e field(2 * m);

    // Primitive p-th root xi and cube root omega.
    std::uint64_t xi = 0, om = 0;
    for (std::uint64_t a = 2; xi == 0 || om == 0; ++a) {
        if (xi == 0) {
            std::uint64_t z = field.pow(a, field.order() / p);
            if (z != 1) xi = z;
        }
        if (om == 0) {
            std::uint64_t z = field.pow(a, field.order() / 3);
            if (z != 1) om = z;
        }
    }
    std::uint64_t om2 = field.mul(om, om);
    auto to_gf4 = [&](std::uint64_t x) {
        if (x == 0) return Gf4::zero();
        if (x == 1) return Gf4::one();
        if (x == om) return Gf4::omega();
        if (x == om2) return Gf4::omega2();
        throw std::runtime_error("coefficient outside the GF(4) subfield");
    };

    // Quadratic residues/nonresidues mod p.
    std::vector<bool> residue(p, false);
    for (std::size_t i = 1; i < p; ++i) residue[i * i % p] = true;

    // Generator polynomial of Q_p^perp: zeros at xi^i, i in -N union {0}.
    auto poly_from_zeros = [&](const std::vector<std::size_t>& zeros) {
        std::vector<std::uint64_t> c{1};
        for (auto i : zeros) {
            std::uint64_t root = field.pow(xi, i);
            std::vector<std::uint64_t> next(c.size() + 1, 0);
            for (std::size_t d = 0; d < c.size(); ++d) {
                next[d + 1] ^= c[d];
                next[d] ^= field.mul(c[d], root);
            }
            c = std::move(next);
        }
        return c;
    };
    std::vector<std::size_t> x_zeros{0}, l_zeros;
    for (std::size_t i = 1; i < p; ++i)
        if (!residue[i]) {
            x_zeros.push_back((p - i) % p);
            l_zeros.push_back((p - i) % p);
        }
    std::sort(x_zeros.begin(), x_zeros.end());
    auto gx = poly_from_zeros(x_zeros);
    auto gl = poly_from_zeros(l_zeros);

    Gf4Code code;
    code.n = p;
    std::size_t rows = p - (gx.size() - 1);  // dim of Q_p^perp = (p-1)/2
    for (std::size_t s = 0; s < rows; ++s) {
        Gf4Vec row(p, Gf4::zero());
        for (std::size_t d = 0; d < gx.size(); ++d) row[s + d] = to_gf4(gx[d]);
        code.hx.push_back(std::move(row));
    }
    if (pm8 == 3) {
        code.hz = code.hx;
    } else {
        for (const auto& row : code.hx) {
            Gf4Vec conj(p);
            for (std::size_t j = 0; j < p; ++j) conj[j] = gf4_conj(row[j]);
            code.hz.push_back(std::move(conj));
        }
    }
    code.lx.assign(p, Gf4::zero());
    for (std::size_t d = 0; d < gl.size(); ++d) code.lx[d] = to_gf4(gl[d]);
    return code;
}

CssCode binarize(const Gf4Code& code) {
    auto expand = [&](const Gf4Mat& rows) {
        BitMatrix out(0, 2 * code.n);
        const Gf4 scalars[3] = {Gf4::one(), Gf4::omega(), Gf4::omega2()};
        for (const auto& row : rows)
            for (const auto& s : scalars) {
                BitVec bin(2 * code.n);
                for (std::size_t j = 0; j < code.n; ++j) {
                    Gf4 e = gf4_mul(s, row[j]);
                    bin.set(2 * j, e.g1());
                    bin.set(2 * j + 1, e.g2());
                }
                out.append_row(std::move(bin));
            }
        return out;
    };
    CssCode out = make_css(expand(code.hx), expand(code.hz));
    out.name = "binarized";
    return out;
}

}  // namespace phantom
