#include "phantom/phantom.hpp"

#include "phantom/sat_instances.hpp"
#include "phantom/tableau.hpp"

#include <doctest.h>

#include <random>

using namespace phantom;

namespace {

CssCode code_422() {
    return make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
}

// Binarized [[3,1,2]]_4 code: a [[6,2,2]] that is not phantom.
CssCode code_622_binarized() {
    BitMatrix h = BitMatrix::from_strings({"100111", "011110"});
    return make_css(h, h);
}

}  // namespace

TEST_CASE("minimal gateset shape and closure") {
    auto g2 = minimal_gateset(2);
    REQUIRE(g2.size() == 2);
    CHECK(g2[0] == f_cnot(2, 0, 1));
    CHECK(g2[1] == f_swap(2, 0, 1));
    CHECK(minimal_gateset(3).size() == 3);
    CHECK_THROWS(minimal_gateset(1));

    // Closure: the generated group contains all CNOT_ab, k <= 4.
    for (std::size_t k = 2; k <= 4; ++k) {
        auto gens = minimal_gateset(k);
        std::vector<BitMatrix> gen_xx;
        for (auto& g : gens) gen_xx.push_back(g.submatrix(0, k, 0, k));
        std::unordered_set<std::uint64_t> reach;
        std::vector<BitMatrix> frontier{BitMatrix::identity(k)};
        reach.insert(matrix_key(frontier[0]));
        while (!frontier.empty()) {
            std::vector<BitMatrix> next;
            for (auto& a : frontier)
                for (auto& g : gen_xx) {
                    BitMatrix b = mul(a, g);
                    if (reach.insert(matrix_key(b)).second) next.push_back(b);
                }
            frontier.swap(next);
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (a != b) CHECK(reach.count(matrix_key(f_cnot(k, a, b).submatrix(0, k, 0, k))));
    }
}

TEST_CASE("check_perm_gateset on the [[4,2,2]] figure permutations") {
    CssCode c = code_422();
    c.logicals = LogicalBasisCss{
        BitMatrix::from_strings({"1100", "1010"}),
        BitMatrix::from_strings({"1010", "1100"}),
    };
    GateSetClaim claim;
    claim.items.push_back({{2, 1, 0, 3}, f_cnot(2, 0, 1)});  // swap qubits 1,3
    claim.items.push_back({{1, 0, 2, 3}, f_cnot(2, 1, 0)});  // swap qubits 1,2
    claim.items.push_back({perm_identity(4), f_identity(2)});
    CHECK(check_perm_gateset_css(c, claim));
    CHECK(check_perm_gateset(StabilizerCode::from_css(c), claim));

    GateSetClaim wrong;
    wrong.items.push_back({{2, 1, 0, 3}, f_cnot(2, 1, 0)});
    CHECK(!check_perm_gateset_css(c, wrong));
}

TEST_CASE("[[4,2,2]] brute-force witness") {
    auto w = is_phantom_bruteforce(code_422());
    REQUIRE(w.has_value());
    CHECK(w->k == 2);
    CHECK(w->minimal.size() == 2);
    // Composed CNOT permutations for every ordered pair verify independently.
    GateSetClaim claim;
    for (const auto& [pair, perm] : w->cnot_perms)
        claim.items.push_back({perm, f_cnot(2, pair.first, pair.second)});
    CssCode c = code_422();
    c.logicals = w->basis;
    CHECK(check_perm_gateset_css(c, claim));
}

TEST_CASE("binarized [[6,2,2]] is not phantom") {
    CHECK(!is_phantom_bruteforce(code_622_binarized()).has_value());
}

TEST_CASE("[[4,2,2]] SAT phantomness with the internal solver") {
    auto res = is_phantom_sat(code_422(), SolverHandle::internal());
    REQUIRE(res.verdict == PhantomVerdict::Phantom);
    REQUIRE(res.witness.has_value());
    auto rep = permutation_period_checks(*res.witness);
    CHECK(rep.all_even);
}

TEST_CASE("[[6,2,2]] SAT phantomness is UNSAT") {
    auto res = is_phantom_sat(code_622_binarized(), SolverHandle::internal());
    CHECK(res.verdict == PhantomVerdict::NotPhantom);
}

TEST_CASE("SAT and brute force agree on small random CSS codes") {
    std::mt19937_64 rng(23);
    int checked = 0;
    while (checked < 12) {
        std::size_t n = 4 + rng() % 3;
        BitMatrix hz = BitMatrix::random(2, n, rng);
        Rref rz = rref(hz);
        if (rz.mat.rows() == 0) continue;
        BitMatrix dual = kernel(rz.mat);
        if (dual.rows() == 0) continue;
        BitMatrix hx(0, n);
        hx.append_row(dual.row(rng() % dual.rows()));
        Rref rx = rref(hx);
        if (rx.mat.rows() == 0) continue;
        CssCode code;
        try {
            code = make_css(rx.mat, rz.mat);
        } catch (...) {
            continue;
        }
        if (code.k < 2) continue;
        ++checked;
        bool brute = is_phantom_bruteforce(code).has_value();
        auto sat = is_phantom_sat(code, SolverHandle::internal());
        CHECK(sat.verdict == (brute ? PhantomVerdict::Phantom : PhantomVerdict::NotPhantom));
    }
}

TEST_CASE("phantom verdict is invariant under CSS basis change") {
    CssCode c = code_422();
    ensure_logicals(c);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        BitMatrix r = BitMatrix::random_invertible(2, rng);
        CssCode rotated = c;
        rotated.logicals->lx = mul(r, c.logicals->lx);
        rotated.logicals->lz = mul(inverse(r)->transpose(), c.logicals->lz);
        REQUIRE(validate_css(rotated));
        CHECK(is_phantom_bruteforce(rotated).has_value());
    }
}

TEST_CASE("PiH deformations preserve the phantom verdict") {
    std::mt19937_64 rng(37);
    CssCode base = code_422();
    CssCode notp = code_622_binarized();
    for (int trial = 0; trial < 10; ++trial) {
        auto deform = [&](const CssCode& c) {
            Perm p = perm_identity(c.n);
            for (std::size_t i = c.n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
            CssCode out = make_css(c.hx.permute_cols(p), c.hz.permute_cols(p));
            if (rng() & 1) out = hadamard_dual(out);
            return out;
        };
        CHECK(is_phantom_bruteforce(deform(base)).has_value());
        CHECK(!is_phantom_bruteforce(deform(notp)).has_value());
    }
}

TEST_CASE("discovery at (n=4, r=1, k=2, d=2) is SAT and decodes to a [[4,2,2]]") {
    DiscoverySpec spec;
    spec.n = 4;
    spec.k = 2;
    spec.r = 1;
    spec.dx = spec.dz = 2;
    spec.css = true;
    spec.phantom = true;
    auto inst = discovery_instance(spec);
    auto res = solve(inst.formula, SolverHandle::internal());
    REQUIRE(res.sat());
    CssCode code = inst.decode_css(res.model);
    CHECK(code.n == 4);
    CHECK(code.k == 2);
    auto d = distance_css(code);
    CHECK(d.dx == 2);
    CHECK(d.dz == 2);
    CHECK(is_phantom_bruteforce(code).has_value());
}

TEST_CASE("discovery at n=3, k=2, d=2 is UNSAT for every r") {
    for (std::size_t r = 0; r <= 1; ++r) {
        DiscoverySpec spec;
        spec.n = 3;
        spec.k = 2;
        spec.r = r;
        spec.dx = spec.dz = 2;
        auto inst = discovery_instance(spec);
        CHECK(solve(inst.formula, SolverHandle::internal()).status == SolveStatus::Unsat);
    }
}

TEST_CASE("non-phantom CSS discovery at (n=6, k=3, d=2) is SAT for some rank split") {
    bool found = false;
    for (std::size_t r = 1; r <= 2 && !found; ++r) {
        DiscoverySpec spec;
        spec.n = 6;
        spec.k = 3;
        spec.r = r;
        spec.dx = spec.dz = 2;
        spec.phantom = false;
        auto inst = discovery_instance(spec);
        auto res = solve(inst.formula, SolverHandle::internal());
        if (!res.sat()) continue;
        found = true;
        CssCode code = inst.decode_css(res.model);
        CHECK(code.k == 3);
        CHECK(distance_css(code).d() == 2);
    }
    CHECK(found);
}

TEST_CASE("general-mode discovery finds a [[4,2,2]]-parameter stabilizer code") {
    DiscoverySpec spec;
    spec.n = 4;
    spec.k = 2;
    spec.r = 1;
    spec.dx = 2;
    spec.css = false;
    spec.phantom = false;
    auto inst = discovery_instance(spec);
    auto res = solve(inst.formula, SolverHandle::internal());
    REQUIRE(res.sat());
    StabilizerCode code = inst.decode_stabilizer(res.model);
    CHECK(code.n == 4);
    CHECK(code.k == 2);
    CHECK(distance_stabilizer(code) == 2);
}

TEST_CASE("phantom witness decoded from SAT passes period checks") {
    auto res = is_phantom_sat(code_422(), SolverHandle::internal(), /*involutions_only=*/true);
    REQUIRE(res.verdict == PhantomVerdict::Phantom);
    auto rep = permutation_period_checks(*res.witness);
    for (const auto& g : rep.generators) CHECK(g.single_layer_swap);
}
