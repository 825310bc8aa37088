#include "phantom/tableau.hpp"

#include <doctest.h>

#include <random>

using namespace phantom;

namespace {

PauliOp pauli(const std::string& s) {
    PauliOp p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'X': p.x.set(i, true); break;
            case 'Z': p.z.set(i, true); break;
            case 'Y': p.x.set(i, true); p.z.set(i, true); p.phase = (p.phase + 1) % 4; break;
            default: break;
        }
    }
    return p;
}

CssCode code_422_fig_basis() {
    CssCode c = make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    c.logicals = LogicalBasisCss{
        BitMatrix::from_strings({"1100", "1010"}),  // X1 = XXII, X2 = XIXI
        BitMatrix::from_strings({"1010", "1100"}),  // Z1 = ZIZI, Z2 = ZZII
    };
    return c;
}

Gate random_gate(std::size_t n, std::mt19937_64& rng) {
    switch (rng() % 8) {
        case 0: return Gate::h(rng() % n);
        case 1: return Gate::s(rng() % n);
        case 2: return Gate::sdg(rng() % n);
        case 3: return Gate::x(rng() % n);
        case 4: return Gate::z(rng() % n);
        case 5: {
            std::size_t a = rng() % n, b = rng() % n;
            if (a == b) b = (b + 1) % n;
            return Gate::cnot(a, b);
        }
        case 6: {
            std::size_t a = rng() % n, b = rng() % n;
            if (a == b) b = (b + 1) % n;
            return Gate::cz(a, b);
        }
        default: {
            Perm p = perm_identity(n);
            for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
            return Gate::permutation(p);
        }
    }
}

}  // namespace

TEST_CASE("single-gate conjugation table") {
    CHECK(conjugate(pauli("X"), Gate::h(0)).str() == "+Z");
    CHECK(conjugate(pauli("Z"), Gate::h(0)).str() == "+X");
    CHECK(conjugate(pauli("Y"), Gate::h(0)).str() == "-Y");
    CHECK(conjugate(pauli("X"), Gate::s(0)).str() == "+Y");
    CHECK(conjugate(pauli("Y"), Gate::s(0)).str() == "-X");
    CHECK(conjugate(pauli("Z"), Gate::s(0)).str() == "+Z");
    CHECK(conjugate(pauli("X"), Gate::sdg(0)).str() == "-Y");
    CHECK(conjugate(pauli("Z"), Gate::x(0)).str() == "-Z");
    CHECK(conjugate(pauli("X"), Gate::z(0)).str() == "-X");
    // CNOT_{12}: Z_2 -> Z_1 Z_2, X_1 -> X_1 X_2, Y Y -> -X Z.
    CHECK(conjugate(pauli("IZ"), Gate::cnot(0, 1)).str() == "+ZZ");
    CHECK(conjugate(pauli("XI"), Gate::cnot(0, 1)).str() == "+XX");
    CHECK(conjugate(pauli("YY"), Gate::cnot(0, 1)).str() == "-XZ");
    CHECK(conjugate(pauli("XI"), Gate::cz(0, 1)).str() == "+XZ");
    CHECK(conjugate(pauli("XX"), Gate::cz(0, 1)).str() == "+YY");
}

TEST_CASE("conjugation is multiplicative with exact phases") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 4;
        Circuit c(n);
        for (int g = 0; g < 12; ++g) c.add(random_gate(n, rng));
        PauliOp a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a.x.set(i, rng() & 1); a.z.set(i, rng() & 1);
            b.x.set(i, rng() & 1); b.z.set(i, rng() & 1);
        }
        a.phase = rng() % 4;
        b.phase = rng() % 4;
        CHECK(conjugate(a * b, c) == conjugate(a, c) * conjugate(b, c));
    }
}

TEST_CASE("gate algebra identities") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng() % 3;
        PauliOp p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p.x.set(i, rng() & 1);
            p.z.set(i, rng() & 1);
        }
        p.phase = rng() % 4;
        std::size_t q = rng() % n, r = (q + 1) % n;
        CHECK(conjugate(conjugate(p, Gate::h(q)), Gate::h(q)) == p);
        CHECK(conjugate(conjugate(p, Gate::s(q)), Gate::sdg(q)) == p);
        PauliOp s4 = p;
        for (int i = 0; i < 4; ++i) s4 = conjugate(s4, Gate::s(q));
        CHECK(s4 == p);
        PauliOp via_swap = conjugate(p, Gate::swap(q, r));
        PauliOp via_cnots =
            conjugate(conjugate(conjugate(p, Gate::cnot(q, r)), Gate::cnot(r, q)), Gate::cnot(q, r));
        CHECK(via_swap == via_cnots);
        CHECK(conjugate(p, Gate::cz(q, r)) == conjugate(p, Gate::cz(r, q)));
    }
}

TEST_CASE("tableau invariants preserved by random circuits") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng() % 5;
        auto t = CliffordTableau::identity(n);
        for (int g = 0; g < 30; ++g) t.apply(random_gate(n, rng));
        CHECK(t.check_invariants());
    }
}

TEST_CASE("PERM then inverse PERM is the identity on the tableau") {
    std::mt19937_64 rng(31);
    std::size_t n = 5;
    Perm p = perm_identity(n);
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
    auto t = CliffordTableau::identity(n);
    t.apply(Gate::permutation(p));
    t.apply(Gate::permutation(perm_inverse(p)));
    auto id = CliffordTableau::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(t.destabilizer(i) == id.destabilizer(i));
        CHECK(t.stabilizer(i) == id.stabilizer(i));
    }
}

TEST_CASE("[[4,2,2]]: permuting qubits 1 and 3 implements CNOT_12") {
    CssCode c = code_422_fig_basis();
    Circuit circ(4);
    circ.add(Gate::permutation({2, 1, 0, 3}));
    auto act = logical_action(c, circ);
    CHECK(act.codespace_preserved);
    CHECK(act.f == f_cnot(2, 0, 1));
    CHECK(act.pauli_frame.zero());

    // Permuting qubits 1 and 2 implements CNOT_21.
    Circuit circ2(4);
    circ2.add(Gate::permutation({1, 0, 2, 3}));
    auto act2 = logical_action(c, circ2);
    CHECK(act2.codespace_preserved);
    CHECK(act2.f == f_cnot(2, 1, 0));
}

TEST_CASE("identity circuit acts as logical identity") {
    CssCode c = code_422_fig_basis();
    auto act = logical_action(c, Circuit(4));
    CHECK(act.codespace_preserved);
    CHECK(act.f == f_identity(2));
    CHECK(act.pauli_frame.zero());
}

TEST_CASE("H^4 on [[4,2,2]] acts as logical HxH followed by SWAP") {
    CssCode c = code_422_fig_basis();
    Circuit circ(4);
    for (std::size_t q = 0; q < 4; ++q) circ.add(Gate::h(q));
    auto act = logical_action(c, circ);
    CHECK(act.codespace_preserved);
    CHECK(act.f == mul(f_h_all(2), f_swap(2, 0, 1)));
    CHECK(verify_claim(c, circ, mul(f_h_all(2), f_swap(2, 0, 1))));
}

TEST_CASE("a stabilizer-breaking permutation is rejected") {
    BitMatrix h = BitMatrix::from_strings({"1010101", "0110011", "0001111"});
    CssCode steane = make_css(h, h);
    ensure_logicals(steane);
    bool found_breaker = false;
    for (std::size_t a = 0; a < 7 && !found_breaker; ++a)
        for (std::size_t b = a + 1; b < 7 && !found_breaker; ++b) {
            Perm p = perm_identity(7);
            std::swap(p[a], p[b]);
            Circuit circ(7);
            circ.add(Gate::permutation(p));
            auto act = logical_action(steane, circ);
            if (!act.codespace_preserved) {
                found_breaker = true;
                CHECK(!verify_claim(steane, circ, f_identity(1)));
            }
        }
    CHECK(found_breaker);
}

TEST_CASE("permutation circuits act as diag(A, A^{-T})") {
    CssCode c = code_422_fig_basis();
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit circ(4);
        for (int g = 0; g < 6; ++g) {
            Perm p = perm_identity(4);
            for (std::size_t i = 4; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
            circ.add(Gate::permutation(p));
        }
        auto act = logical_action(c, circ);
        REQUIRE(act.codespace_preserved);
        BitMatrix a = act.f.submatrix(0, 2, 0, 2);
        CHECK(act.f == f_from_xx(a));
    }
}
