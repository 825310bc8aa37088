#include "phantom/gates.hpp"

#include <doctest.h>

#include <bit>
#include <random>
#include <set>

using namespace phantom;

namespace {

CssCode code_422() {
    return make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
}

}  // namespace

TEST_CASE("howell kernel matches brute force at small moduli") {
    std::mt19937_64 rng(3);
    for (unsigned level : {2u, 3u}) {
        std::uint8_t mod = static_cast<std::uint8_t>(1u << level);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t rows = 1 + rng() % 3, cols = 2 + rng() % 2;
            ZMat m(rows, cols, level);
            for (auto& x : m.a) x = static_cast<std::uint8_t>(rng() % mod);
            ZMat ker = kernel_mod2l(m);
            // Every kernel generator annihilates.
            for (std::size_t i = 0; i < ker.rows; ++i) {
                for (std::size_t r = 0; r < rows; ++r) {
                    unsigned acc = 0;
                    for (std::size_t c = 0; c < cols; ++c) acc += m.at(r, c) * ker.at(i, c);
                    CHECK(acc % mod == 0);
                }
            }
            // The generated module covers every annihilating vector.
            std::set<std::vector<std::uint8_t>> reach;
            std::size_t combos = 1;
            for (std::size_t i = 0; i < ker.rows; ++i) combos *= mod;
            for (std::size_t cb = 0; cb < combos; ++cb) {
                std::vector<std::uint8_t> x(cols, 0);
                std::size_t t = cb;
                for (std::size_t i = 0; i < ker.rows; ++i) {
                    std::uint8_t c = static_cast<std::uint8_t>(t % mod);
                    t /= mod;
                    for (std::size_t j = 0; j < cols; ++j)
                        x[j] = static_cast<std::uint8_t>(x[j] + c * ker.at(i, j)) & (mod - 1);
                }
                reach.insert(x);
            }
            std::size_t total = 1;
            for (std::size_t j = 0; j < cols; ++j) total *= mod;
            std::size_t kernel_count = 0;
            for (std::size_t v = 0; v < total; ++v) {
                std::vector<std::uint8_t> x(cols);
                std::size_t t = v;
                for (std::size_t j = 0; j < cols; ++j) {
                    x[j] = static_cast<std::uint8_t>(t % mod);
                    t /= mod;
                }
                bool ann = true;
                for (std::size_t r = 0; r < rows && ann; ++r) {
                    unsigned acc = 0;
                    for (std::size_t c = 0; c < cols; ++c) acc += m.at(r, c) * x[c];
                    if (acc % mod) ann = false;
                }
                if (ann) {
                    ++kernel_count;
                    CHECK(reach.count(x));
                }
            }
            CHECK(reach.size() == kernel_count);
        }
    }
}

TEST_CASE("diagonal gates on [[8,3,2]] contain the CCZ-type rotation") {
    CssCode code = phantom_qrm(3, 1);  // the [[8,3,2]] hypercube
    PhasePoly target;
    target.mod_bits = 3;
    target.add_term(0b111, 4);  // 4 x1 x2 x3 mod 8
    auto gamma = find_diagonal_gate(code, 3, target, /*up_to_pauli=*/true);
    REQUIRE(gamma.has_value());
    PhasePoly got = logical_phase_poly(*gamma, code, 3);
    CHECK(got.coeff.at(0b111) == 4);
    CHECK(verify_diagonal_exact(code, *gamma, 3, got));
    CHECK(verify_diagonal_statevector(code, *gamma, 3, got));
}

TEST_CASE("diagonal gates on [[16,4,2]] contain a CCCZ at level 4") {
    CssCode code = phantom_qrm(4, 1);
    PhasePoly target;
    target.mod_bits = 4;
    target.add_term(0b1111, 8);  // 8 x1 x2 x3 x4 mod 16
    auto gamma = find_diagonal_gate(code, 4, target, true);
    REQUIRE(gamma.has_value());
    PhasePoly got = logical_phase_poly(*gamma, code, 4);
    CHECK(got.coeff.at(0b1111) == 8);
    CHECK(verify_diagonal_exact(code, *gamma, 4, got));
}

TEST_CASE("uniform Z rotation acts as a logical Z-type Pauli or identity") {
    CssCode code = code_422();
    RotationAssignment gamma;
    gamma.gamma.assign(4, 2);
    PhasePoly poly = logical_phase_poly(gamma, code, 2);
    for (auto [mono, c] : poly.coeff) {
        CHECK(std::popcount(mono) == 1);  // only linear terms
        CHECK(c == 2);                    // Z coefficients
    }
}

TEST_CASE("zero rotation is the identity and always in the kernel") {
    CssCode code = code_422();
    RotationAssignment zero;
    zero.gamma.assign(4, 0);
    PhasePoly poly = logical_phase_poly(zero, code, 2);
    CHECK(poly.coeff.empty());
}

TEST_CASE("kernel violation is rejected") {
    CssCode code = code_422();
    RotationAssignment bad;
    bad.gamma = {1, 0, 0, 0};  // single S breaks the stabilizer condition
    CHECK_THROWS(logical_phase_poly(bad, code, 2));
}

TEST_CASE("[[4,2,2]] admits a CZ-type rotation at level 2") {
    CssCode code = code_422();
    PhasePoly target;
    target.mod_bits = 2;
    target.add_term(0b11, 2);  // 2 x1 x2 mod 4
    auto gamma = find_diagonal_gate(code, 2, target, true);
    REQUIRE(gamma.has_value());
    PhasePoly got = logical_phase_poly(*gamma, code, 2);
    CHECK(got.coeff.count(0b11));
    CHECK(got.coeff.at(0b11) == 2);
    CHECK(verify_diagonal_exact(code, *gamma, 2, got));
}

TEST_CASE("automorphism gates of the [[4,2,2]]") {
    CssCode code = code_422();
    ensure_logicals(code);
    auto res = automorphism_gates(code);
    CHECK(res.complete);
    CHECK(!res.gates.empty());

    // H on every qubit with the identity permutation: logical HxH SWAP.
    bool found_h4 = false, found_cnot = false;
    for (const auto& g : res.gates) {
        bool all_h = g.perm == perm_identity(4);
        if (all_h)
            for (int l : g.local) all_h &= l == 1;
        if (all_h) {
            found_h4 = true;
            CHECK(g.action.f == mul(f_h_all(2), f_swap(2, 0, 1)));
        }
        bool pure_perm = true;
        for (int l : g.local) pure_perm &= l == 0;
        if (pure_perm && g.action.f == f_cnot(2, 0, 1)) found_cnot = true;
    }
    CHECK(found_h4);
    CHECK(found_cnot);

    // Every returned gate preserves the codespace with all-positive signs.
    for (const auto& g : res.gates) CHECK(g.action.codespace_preserved);
}

TEST_CASE("automorphism gates of a trivial code are all of S_n x S3^n") {
    CssCode triv = make_css(BitMatrix(0, 2), BitMatrix(0, 2));
    auto res = automorphism_gates(triv);
    CHECK(res.complete);
    CHECK(res.gates.size() == 2 * 6 * 6);
    for (const auto& g : res.gates) CHECK(g.action.f == f_identity(2));
}

TEST_CASE("embedded code construction") {
    CssCode toy = make_css(BitMatrix(0, 2), BitMatrix(0, 2));
    EmbeddedCode emb = embedded_code(toy);
    CHECK(emb.code.n == 3);
    CHECK(emb.code.k == 2);
    CHECK(emb.code.rz() == 1);

    CssCode code = code_422();
    EmbeddedCode e2 = embedded_code(code);
    CHECK(e2.code.n == 10);
    CHECK(e2.code.k == 2);
    CHECK(validate_css(e2.code));
}

TEST_CASE("fold gates on the [[4,2,2]] include an SS fold") {
    CssCode code = code_422();
    auto fold = find_fold_gate(code, SolverHandle::internal(), FoldKind::SS, 0, 1);
    REQUIRE(fold.has_value());
    ensure_logicals(code);
    CHECK(verify_claim(code, fold->circuit.to_circuit(), mul(f_s(2, 0), f_s(2, 1)), true));
}

TEST_CASE("fold gates on the [[8,3,2]]") {
    CssCode code = phantom_qrm(3, 1);
    auto fold = find_fold_gate(code, SolverHandle::internal(), FoldKind::SS, 0, 1);
    REQUIRE(fold.has_value());
    CHECK(verify_claim(code, fold->circuit.to_circuit(), mul(f_s(3, 0), f_s(3, 1)), true));
    auto cz = find_fold_gate(code, SolverHandle::internal(), FoldKind::CZ, 0, 2);
    REQUIRE(cz.has_value());
    CHECK(verify_claim(code, cz->circuit.to_circuit(), f_cz(3, 0, 2), true));
}
