#include "phantom/construct.hpp"

#include <doctest.h>

#include <random>

using namespace phantom;

namespace {

bool witness_checks(const CssCode& code_in, const PhantomWitness& w) {
    CssCode code = code_in;
    code.logicals = w.basis;
    GateSetClaim claim;
    auto targets = minimal_gateset(w.k);
    for (std::size_t t = 0; t < targets.size(); ++t)
        claim.items.push_back({w.minimal[t], targets[t]});
    for (const auto& [pair, perm] : w.cnot_perms)
        claim.items.push_back({perm, f_cnot(w.k, pair.first, pair.second)});
    return check_perm_gateset_css(code, claim);
}

}  // namespace

TEST_CASE("gf4 arithmetic") {
    CHECK(gf4_mul(Gf4::omega(), Gf4::omega()) == Gf4::omega2());
    CHECK(gf4_mul(Gf4::omega(), Gf4::omega2()) == Gf4::one());
    CHECK(gf4_mul(Gf4::one(), Gf4::omega()) == Gf4::omega());
    CHECK(gf4_trace(Gf4::omega()) == 1);
    CHECK(gf4_trace(Gf4::one()) == 0);
    CHECK(gf4_trace(Gf4::zero()) == 0);
    CHECK(gf4_conj(Gf4::omega2()) == Gf4::omega());
    CHECK(gf4_conj(Gf4::one()) == Gf4::one());
    // Field laws, exhaustively.
    for (std::uint8_t a = 0; a < 4; ++a)
        for (std::uint8_t b = 0; b < 4; ++b) {
            CHECK(gf4_mul({a}, {b}) == gf4_mul({b}, {a}));
            CHECK(gf4_conj(gf4_mul({a}, {b})) == gf4_mul(gf4_conj({a}), gf4_conj({b})));
            for (std::uint8_t c = 0; c < 4; ++c)
                CHECK(gf4_mul({a}, gf4_add({b}, {c})) ==
                      gf4_add(gf4_mul({a}, {b}), gf4_mul({a}, {c})));
        }
}

TEST_CASE("qr_gf4(3) binarizes to the reference [[6,2,2]]") {
    Gf4Code q3 = qr_gf4(3);
    CHECK(q3.n == 3);
    CssCode bin = binarize(q3);
    CHECK(bin.n == 6);
    CHECK(bin.k == 2);
    BitMatrix ref = BitMatrix::from_strings({"100111", "011110"});
    CHECK(row_span_equal(bin.hx, ref));
    CHECK(row_span_equal(bin.hz, ref));
    CHECK(distance_css(bin).d() == 2);
}

TEST_CASE("qr_gf4(5) binarizes to a [[10,2,3]]") {
    CssCode bin = binarize(qr_gf4(5));
    CHECK(bin.n == 10);
    CHECK(bin.k == 2);
    auto d = distance_css(bin);
    CHECK(d.dx == 3);
    CHECK(d.dz == 3);
}

TEST_CASE("bc(3) is a phantom [[12,2,4]]") {
    CssCode code = bc_code(3);
    CHECK(code.n == 12);
    CHECK(code.k == 2);
    auto d = distance_css(code);
    CHECK(d.dx == 4);
    CHECK(d.dz == 4);
    // Per-block XXXX / ZZZZ stabilizers.
    Rref rx = rref(code.hx), rz = rref(code.hz);
    for (std::size_t b = 0; b < 3; ++b) {
        BitVec block(code.n);
        for (std::size_t c = 0; c < 4; ++c) block.set(4 * b + c, true);
        CHECK(in_row_span(rx, block));
        CHECK(in_row_span(rz, block));
    }
    CHECK(witness_checks(code, bc_witness(3, code)));
}

TEST_CASE("bc(5) is a phantom [[20,2,6]]") {
    CssCode code = bc_code(5);
    CHECK(code.n == 20);
    CHECK(code.k == 2);
    auto d = distance_css(code);
    CHECK(d.dx == 6);
    CHECK(d.dz == 6);
    CHECK(witness_checks(code, bc_witness(5, code)));
}

TEST_CASE("bc(11) reaches distance 10 on [[44,2,10]]") {
    CssCode code = bc_code(11);
    CHECK(code.n == 44);
    CHECK(code.k == 2);
    DistanceOptions opts;
    opts.span_walk_limit = 0;
    opts.weight_limit = 10;
    auto d = distance_css(code, opts);
    CHECK(d.exact);
    CHECK(d.dx == 10);
    CHECK(d.dz == 10);
    CHECK(witness_checks(code, bc_witness(11, code)));
}

TEST_CASE("rm_generator basics") {
    CHECK(rm_generator(0, 2) == BitMatrix::from_strings({"1111"}));
    BitMatrix rm13 = rm_generator(1, 3);
    REQUIRE(rm13.rows() == 4);
    CHECK(rm13.row(0) == BitVec::from_string("11111111"));
    CHECK(rm13.row(1) == BitVec::from_string("01010101"));  // x1 (low bit)
    CHECK(rm13.row(2) == BitVec::from_string("00110011"));  // x2
    CHECK(rm13.row(3) == BitVec::from_string("00001111"));  // x3
    for (std::size_t m = 2; m <= 5; ++m)
        for (std::size_t r = 0; r <= m; ++r) {
            std::size_t dim = 0;
            for (std::size_t i = 0; i <= r; ++i) {
                std::size_t c = 1;
                for (std::size_t j = 0; j < i; ++j) c = c * (m - j) / (j + 1);
                dim += c;
            }
            CHECK(rank(rm_generator(r, m)) == dim);
        }
}

TEST_CASE("affine_perm matches substitution") {
    // A from the worked m=3 example: x1' = x1 + x2 swaps coordinates (2,3) and (6,7).
    BitMatrix a = BitMatrix::from_strings({"110", "010", "001"});
    Perm p = affine_perm(a, BitVec(3));
    Perm expect = perm_identity(8);
    std::swap(expect[2], expect[3]);
    std::swap(expect[6], expect[7]);
    CHECK(p == expect);
    CHECK(affine_perm(BitMatrix::identity(3), BitVec(3)) == perm_identity(8));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 2 + rng() % 4;
        BitMatrix aa = BitMatrix::random_invertible(m, rng);
        BitVec b(m);
        for (std::size_t i = 0; i < m; ++i) b.set(i, rng() & 1);
        std::uint32_t mono = rng() & ((1u << m) - 1);
        Perm perm = affine_perm(aa, b);
        CHECK(apply_perm(monomial_eval(mono, m), perm) == substitute_eval(mono, aa, b, m));
    }
}

TEST_CASE("affine_perm is a group action") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = 2 + rng() % 3;
        BitMatrix a1 = BitMatrix::random_invertible(m, rng);
        BitMatrix a2 = BitMatrix::random_invertible(m, rng);
        BitVec b1(m), b2(m);
        for (std::size_t i = 0; i < m; ++i) {
            b1.set(i, rng() & 1);
            b2.set(i, rng() & 1);
        }
        BitVec btot = mul(b1, a2.transpose()) ^ b2;  // A2 b1 + b2
        Perm lhs = perm_compose(affine_perm(a2, b2), affine_perm(a1, b1));
        CHECK(lhs == affine_perm(mul(a2, a1), btot));
    }
}

TEST_CASE("qrm parameters and distances") {
    CssCode c83 = qrm(3, 1);
    CHECK(c83.n == 8);
    CHECK(c83.k == 3);
    auto d83 = distance_css(c83);
    CHECK(d83.dx == 4);
    CHECK(d83.dz == 2);

    CssCode c16 = qrm(4, 2);
    CHECK(c16.n == 16);
    CHECK(c16.k == 6);
    auto d16 = distance_css(c16);
    CHECK(d16.dx == 4);
    CHECK(d16.dz == 4);
}

TEST_CASE("phantom qRM [[16,3,4]]") {
    CssCode code = phantom_qrm(4, 2);
    CHECK(code.n == 16);
    CHECK(code.k == 3);
    auto d = distance_css(code);
    CHECK(d.dx == 4);
    CHECK(d.dz == 4);
    CHECK(witness_checks(code, qrm_phantom_witness(code)));
}

TEST_CASE("phantom qRM base case is the [[4,2,2]]") {
    CssCode code = phantom_qrm(2, 1);
    CHECK(code.n == 4);
    CHECK(code.k == 2);
    CHECK(distance_css(code).d() == 2);
    CHECK(is_phantom_bruteforce(code).has_value());
}

TEST_CASE("balanced [[64,4,8]] stabilizer ranks") {
    CssCode code = phantom_qrm_balanced_64_4_8();
    CHECK(code.n == 64);
    CHECK(code.k == 4);
    CHECK(code.rx() == 32);
    CHECK(code.rz() == 28);
    CHECK(validate_css(code));
    CHECK(witness_checks(code, qrm_phantom_witness(code)));
}

TEST_CASE("qrm orbit structure at (6,3)") {
    auto orbits = qrm_orbits(6, 3);
    REQUIRE(orbits.size() == 4);
    CHECK(orbits[0].size() == 4);  // empty prefix
    CHECK(orbits[1].size() == 6);  // x1
    CHECK(orbits[2].size() == 6);  // x2
    CHECK(orbits[3].size() == 4);  // x1 x2 (retained)
}

TEST_CASE("hypercube and punctured hypercube") {
    CssCode h2 = hypercube(2);
    CHECK(h2.n == 4);
    CHECK(h2.k == 2);
    CssCode p3 = punctured_hypercube(3);
    CHECK(p3.n == 7);
    CHECK(p3.k == 3);
    auto d = distance_css(p3);
    CHECK(d.dx == 3);
    CHECK(d.dz == 2);
    CHECK(p3.rx() == 1);  // one X stabilizer on all 7 qubits
    CHECK(p3.hx.row(0).weight() == 7);
    CHECK(is_phantom_bruteforce(p3).has_value());

    CssCode p4 = punctured_hypercube(4);
    CHECK(p4.n == 15);
    CHECK(p4.k == 4);
    auto d4 = distance_css(p4);
    CHECK(std::min(d4.dx, d4.dz) == 2);
}

TEST_CASE("glued [[4,2,2]] family") {
    CssCode g1 = glued_422(1);
    CHECK(g1.n == 4);
    CHECK(g1.k == 2);

    CssCode g2 = glued_422(2);
    CHECK(g2.n == 8);
    CHECK(g2.k == 2);
    auto d = distance_css(g2);
    CHECK(d.dx == 2);
    CHECK(d.dz == 4);
    CHECK(is_phantom_bruteforce(g2).has_value());
    CHECK(witness_checks(g2, glued_422_witness(2, g2)));

    CssCode g2p = glued_422(2, /*punctured=*/true);
    CHECK(g2p.n == 7);
    CHECK(g2p.k == 2);
    auto dp = distance_css(g2p);
    CHECK(dp.dx == 2);
    CHECK(dp.dz == 3);

    CssCode g3 = glued_422(3);
    CHECK(g3.n == 12);
    auto d3 = distance_css(g3);
    CHECK(d3.dx == 2);
    CHECK(d3.dz == 6);
}

TEST_CASE("hypergraph product phantom codes") {
    CssCode h2 = hgp_phantom(2);
    CHECK(h2.n == 7);
    CHECK(h2.k == 2);
    CHECK(distance_css(h2).d() == 2);
    CHECK(is_phantom_bruteforce(h2).has_value());
    CHECK(witness_checks(h2, hgp_phantom_witness(2, h2)));

    CssCode h3 = hgp_phantom(3);
    CHECK(h3.n == 49);
    CHECK(h3.k == 3);
    DistanceOptions opts;
    opts.span_walk_limit = 0;
    opts.weight_limit = 4;
    auto d = distance_css(h3, opts);
    CHECK(d.exact);
    CHECK(d.d() == 4);
    CHECK(witness_checks(h3, hgp_phantom_witness(3, h3)));
}

TEST_CASE("simple concatenation") {
    CssCode outer = punctured_hypercube(3);  // [[7,3,(3,2)]]
    // Phase-flip repetition [[2,1,(1,2)]].
    CssCode rep = make_css(BitMatrix::from_strings({"11"}), BitMatrix(0, 2), "rep2");
    CssCode code = concat_simple(outer, rep);
    CHECK(code.n == 14);
    CHECK(code.k == 3);
    auto d = distance_css(code);
    CHECK(d.dx == 3);
    CHECK(d.dz == 4);

    CssCode triv = make_css(BitMatrix(0, 1), BitMatrix(0, 1), "triv");
    CssCode same = concat_simple(outer, triv);
    CHECK(same.n == outer.n);
    CHECK(same.k == outer.k);
    auto w = is_phantom_bruteforce(outer);
    REQUIRE(w.has_value());
    CHECK(witness_checks(code, concat_simple_witness(*w, 2, code)));
}

TEST_CASE("connect_dual produces the tesseract from the dual hypercube") {
    CssCode primal = hadamard_dual(hypercube(3));  // [[8,3,(2,4)]]
    ensure_logicals(primal);
    CssCode code = connect_dual(primal);
    CHECK(code.n == 16);
    CHECK(code.k == 6);
    auto d = distance_css(code);
    CHECK(d.dx == 4);
    CHECK(d.dz == 4);
    CHECK(connect_dual_distance_formula(primal) == 4);

    CssCode primal2 = hadamard_dual(punctured_hypercube(3));  // [[7,3,(2,3)]]
    ensure_logicals(primal2);
    CssCode code2 = connect_dual(primal2);
    CHECK(code2.n == 14);
    CHECK(code2.k == 6);
    auto d2 = distance_css(code2);
    CHECK(d2.dx == 3);
    CHECK(d2.dz == 3);
    CHECK(connect_dual_distance_formula(primal2) == 3);
}

TEST_CASE("doubling a non-CSS code") {
    // [[5,1,3]] cyclic check matrix.
    BitMatrix h = BitMatrix::from_strings({
        "1001001100",
        "0100100110",
        "1010000011",
        "0101010001",
    });
    StabilizerCode s = make_stabilizer(h, 5);
    CssCode doubled = double_noncss(s);
    CHECK(doubled.n == 10);
    CHECK(doubled.k == 2);
    auto d = distance_css(doubled);
    CHECK(d.d() >= 3);
    CHECK(d.d() <= 6);

    // A CSS input yields two disjoint copies.
    CssCode base = make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    CssCode dd = double_noncss(StabilizerCode::from_css(base));
    CHECK(dd.n == 8);
    CHECK(dd.k == 4);
    CHECK(validate_css(dd));
}

TEST_CASE("doubled codes support pairwise CNOT products under pi + pi") {
    CssCode base = make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    auto w = is_phantom_bruteforce(base);
    REQUIRE(w.has_value());
    CssCode fixed = base;
    fixed.logicals = w->basis;
    CssCode doubled = double_noncss(StabilizerCode::from_css(fixed));
    const Perm& pi = w->cnot_perms.at({0, 1});
    Perm dpi(8);
    for (std::size_t i = 0; i < 4; ++i) {
        dpi[i] = pi[i];
        dpi[4 + i] = 4 + pi[i];
    }
    Circuit circ(8);
    circ.add(Gate::permutation(dpi));
    auto act = logical_action(doubled, circ);
    REQUIRE(act.codespace_preserved);
    // CNOT_{12} on the first pair and CNOT_{43} on the mirrored pair.
    BitMatrix expect = mul(f_cnot(4, 0, 1), f_cnot(4, 3, 2));
    CHECK(act.f == expect);
}

TEST_CASE("fold involutions on [[16,3,4]]") {
    CssCode code = phantom_qrm(4, 2);
    FoldCircuit ss = fold_involution(code, FoldKind::SS);
    // tau matches the affine reversal-plus-ones map.
    for (std::uint32_t v = 0; v < 16; ++v) {
        std::uint32_t rev = 0;
        for (int j = 0; j < 4; ++j)
            if ((v >> j) & 1) rev |= 1u << (3 - j);
        CHECK(ss.tau[v] == (rev ^ 0xFu));
    }
    CHECK(verify_claim(code, ss.to_circuit(), mul(f_s(3, 0), f_s(3, 1)), true));

    FoldCircuit cz = fold_involution(code, FoldKind::CZ);
    CHECK(verify_claim(code, cz.to_circuit(), f_cz(3, 0, 1), true));
    // CZ supports are disjoint by construction; involution verified inside.
    std::vector<bool> seen(code.n, false);
    for (auto [a, b] : cz.cz_pairs) {
        CHECK(!seen[a]);
        CHECK(!seen[b]);
        seen[a] = seen[b] = true;
    }
}

TEST_CASE("partial fold on [[16,4,2]]") {
    CssCode code = phantom_qrm(4, 1);  // the [[16,4,2]] hypercube
    CHECK(code.n == 16);
    CHECK(code.k == 4);
    FoldCircuit ss = fold_involution(code, FoldKind::SS);
    // Only the x3 = x4 = 0 subcube is addressed.
    for (std::uint32_t v = 4; v < 16; ++v) {
        CHECK(ss.tau[v] == v);
        CHECK(ss.s_power[v] == 0);
    }
    CHECK(verify_claim(code, ss.to_circuit(), mul(f_s(4, 0), f_s(4, 1)), true));
}
