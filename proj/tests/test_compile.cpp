#include "phantom/compile.hpp"

#include "phantom/construct.hpp"

#include <doctest.h>

#include <random>

using namespace phantom;

namespace {

BitMatrix random_gl(std::size_t dim, std::mt19937_64& rng) {
    return BitMatrix::random_invertible(dim, rng);
}

LogicalCnotCircuit random_circuit(std::size_t blocks, std::size_t k, std::size_t len,
                                  std::mt19937_64& rng, bool unidirectional = false) {
    LogicalCnotCircuit c;
    c.blocks = blocks;
    c.k = k;
    for (std::size_t g = 0; g < len; ++g) {
        std::size_t cb = rng() % blocks, tb = rng() % blocks;
        if (unidirectional) {
            if (blocks == 1) tb = cb;
            else {
                cb = rng() % (blocks - 1);
                tb = cb + 1 + rng() % (blocks - cb - 1);
            }
        }
        std::size_t ci = rng() % k, ti = rng() % k;
        if (cb == tb && ci == ti) ti = (ti + 1) % k;
        c.gates.push_back({cb, ci, tb, ti});
    }
    return c;
}

}  // namespace

TEST_CASE("two-block compile basics") {
    std::size_t k = 2;
    // In-block only: relabels, zero transversal depth.
    BitMatrix x = BitMatrix::identity(2 * k);
    auto s = compile_two_blocks(x, k);
    CHECK(s.transversal_depth() == 0);
    CHECK(verify_schedule(s, x));

    // [[I, I], [0, I]]: exactly one transversal layer.
    BitMatrix up = BitMatrix::identity(2 * k);
    up.set(0, 2, true);
    up.set(1, 3, true);
    auto s2 = compile_two_blocks(up, k);
    CHECK(s2.transversal_depth() == 1);
    CHECK(verify_schedule(s2, up));
    CHECK(!s2.residual);
}

TEST_CASE("two-block compile is exhaustive over GL(4, F2)") {
    std::size_t k = 2;
    auto gl4 = gl_group(4);
    REQUIRE(gl4.size() == 20160);
    for (const auto& x : gl4) {
        auto s = compile_two_blocks(x, k);
        CHECK(verify_schedule(s, x));
        CHECK(s.transversal_depth() <= 4);
        bool lower_zero = x.submatrix(k, 2 * k, 0, k).is_zero();
        bool upper_zero = x.submatrix(0, k, k, 2 * k).is_zero();
        if (lower_zero || upper_zero) {
            CHECK(s.transversal_depth() <= 2);
            CHECK(!s.residual);
        }
    }
}

TEST_CASE("multiblock compile meets the depth bound") {
    std::mt19937_64 rng(7);
    for (std::size_t a = 1; a <= 3; ++a) {
        std::size_t blocks = std::size_t{1} << a;
        for (std::size_t k = 2; k <= 3; ++k) {
            for (int trial = 0; trial < 40; ++trial) {
                auto c = random_circuit(blocks, k, 3 * blocks * k, rng);
                BitMatrix x = circuit_matrix(c);
                auto s = compile_multiblock(c);
                CHECK(verify_schedule(s, x));
                CHECK(s.transversal_depth() <= 4 * (blocks - 1));
            }
        }
    }
}

TEST_CASE("unidirectional circuits compile at half depth with no residual") {
    std::mt19937_64 rng(11);
    for (std::size_t a = 1; a <= 3; ++a) {
        std::size_t blocks = std::size_t{1} << a;
        for (int trial = 0; trial < 40; ++trial) {
            auto c = random_circuit(blocks, 2, 2 * blocks, rng, /*unidirectional=*/true);
            BitMatrix x = circuit_matrix(c);
            auto s = compile_multiblock(c);
            CHECK(verify_schedule(s, x));
            CHECK(s.transversal_depth() <= 2 * (blocks - 1));
            CHECK(!s.residual);
        }
    }
}

TEST_CASE("empty circuit compiles to an empty schedule") {
    LogicalCnotCircuit c;
    c.blocks = 4;
    c.k = 2;
    auto s = compile_multiblock(c);
    CHECK(s.transversal_depth() == 0);
    CHECK(!s.residual);
    CHECK(verify_schedule(s, BitMatrix::identity(8)));
}

TEST_CASE("non-power-of-two block counts are padded transparently") {
    std::mt19937_64 rng(13);
    auto c = random_circuit(3, 2, 12, rng);
    BitMatrix x = circuit_matrix(c);
    auto s = compile_multiblock(c);
    CHECK(s.blocks == 3);
    CHECK(verify_schedule(s, x));
    CHECK(s.transversal_depth() <= 4 * (4 - 1));
}

TEST_CASE("cross-block swap schedules") {
    // Zero pairs: empty schedule.
    auto s0 = compile_logical_swap_pairs({}, 2);
    CHECK(s0.layers.empty());

    // k=2 single swap: the displayed four-transversal circuit.
    auto target = [](std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
        BitMatrix t = BitMatrix::identity(2 * k);
        for (auto [i, j] : ps) {
            t.set(i, i, false);
            t.set(k + j, k + j, false);
            t.set(i, k + j, true);
            t.set(k + j, i, true);
        }
        return t;
    };
    auto s1 = compile_logical_swap_pairs({{0, 0}}, 2);
    CHECK(s1.transversal_depth() == 4);
    CHECK(verify_schedule(s1, target(2, {{0, 0}})));

    // k=4, two swaps, still depth four.
    auto s2 = compile_logical_swap_pairs({{0, 2}, {1, 3}}, 4);
    CHECK(s2.transversal_depth() == 4);
    CHECK(verify_schedule(s2, target(4, {{0, 2}, {1, 3}})));

    // Heavy flow: swapping both logicals of a k=2 code is a free block swap.
    auto s3 = compile_logical_swap_pairs({{0, 0}, {1, 1}}, 2);
    CHECK(s3.transversal_depth() == 0);
    CHECK(verify_schedule(s3, target(2, {{0, 0}, {1, 1}})));

    // k=3 with two swaps: block swap plus one physical swap.
    auto s4 = compile_logical_swap_pairs({{0, 0}, {1, 2}}, 3);
    CHECK(s4.transversal_depth() <= 4);
    CHECK(verify_schedule(s4, target(3, {{0, 0}, {1, 2}})));
}

TEST_CASE("residual permutation compilation") {
    std::mt19937_64 rng(17);
    // Identity: empty.
    CHECK(residual_permutation(perm_identity(8), 4, 2).layers.empty());

    // In-block-only permutation: relabels only, zero transversal depth.
    Perm inblock = {1, 0, 2, 3, 5, 4, 7, 6};
    auto s = residual_permutation(inblock, 4, 2);
    CHECK(s.transversal_depth() == 0);
    CHECK(verify_schedule(s, BitMatrix::perm_matrix(inblock)));

    for (std::size_t k = 2; k <= 4; ++k) {
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t blocks = 4;
            Perm p = perm_identity(blocks * k);
            for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
            auto sched = residual_permutation(p, blocks, k);
            CHECK(verify_schedule(sched, BitMatrix::perm_matrix(p)));
            CHECK(sched.transversal_depth() <= 8 * k + 8);
        }
    }
}

TEST_CASE("deleting a layer breaks verification") {
    std::mt19937_64 rng(23);
    auto c = random_circuit(2, 2, 8, rng);
    BitMatrix x = circuit_matrix(c);
    auto s = compile_multiblock(c);
    REQUIRE(verify_schedule(s, x));
    bool all_still_pass = true;
    for (std::size_t drop = 0; drop < s.layers.size(); ++drop) {
        PhysicalSchedule mut = s;
        mut.layers.erase(mut.layers.begin() + static_cast<std::ptrdiff_t>(drop));
        if (!verify_schedule(mut, x)) all_still_pass = false;
    }
    CHECK(!all_still_pass);
}

TEST_CASE("two-block schedules verify on physical [[4,2,2]] blocks") {
    CssCode block = make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    auto w = is_phantom_bruteforce(block);
    REQUIRE(w.has_value());

    // Combined two-block code with the witness basis on each block.
    std::size_t n = 4, k = 2;
    BitMatrix hx(0, 2 * n), hz(0, 2 * n), lx(0, 2 * n), lz(0, 2 * n);
    for (int b = 0; b < 2; ++b) {
        BitVec row(2 * n);
        for (std::size_t q = 0; q < n; ++q) row.set(b * n + q, true);
        hx.append_row(row);
        hz.append_row(row);
    }
    for (int b = 0; b < 2; ++b)
        for (std::size_t i = 0; i < k; ++i) {
            BitVec xr(2 * n), zr(2 * n);
            for (std::size_t q = 0; q < n; ++q) {
                xr.set(b * n + q, w->basis.lx.get(i, q));
                zr.set(b * n + q, w->basis.lz.get(i, q));
            }
            lx.append_row(xr);
            lz.append_row(zr);
        }
    CssCode two = make_css(hx, hz);
    two.logicals = LogicalBasisCss{lx, lz};
    REQUIRE(validate_css(two));

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        BitMatrix x = random_gl(2 * k, rng);
        auto s = compile_two_blocks(x, k);
        REQUIRE(verify_schedule(s, x));
        Circuit phys = schedule_to_physical(s, block, *w);
        auto act = logical_action(two, phys);
        REQUIRE(act.codespace_preserved);
        PhysicalSchedule no_res = s;
        no_res.residual.reset();
        CHECK(act.f == f_from_xx(schedule_matrix(no_res)));
    }
}
