#include "phantom/cnf.hpp"
#include "phantom/sat_instances.hpp"
#include "phantom/solver.hpp"

#include <doctest.h>

#include <random>

using namespace phantom;

namespace {

// Number of models over the listed variables (projection count).
std::size_t model_count(const CnfFormula& f, const std::vector<int>& vars) {
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
        CnfFormula g = f;
        for (std::size_t i = 0; i < vars.size(); ++i)
            g.add_clause({(mask >> i) & 1 ? vars[i] : -vars[i]});
        if (solve_internal(g).sat()) ++count;
    }
    return count;
}

bool brute_force_sat(int nvars, const std::vector<std::vector<int>>& clauses) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nvars); ++mask) {
        bool ok = true;
        for (const auto& cl : clauses) {
            bool sat = false;
            for (int l : cl) {
                bool v = (mask >> (std::abs(l) - 1)) & 1;
                if ((l > 0) == v) { sat = true; break; }
            }
            if (!sat) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("solver basics") {
    CnfFormula f;
    int x = f.new_var();
    f.add_clause({x});
    auto r = solve_internal(f);
    REQUIRE(r.sat());
    CHECK(r.model[static_cast<std::size_t>(x)]);

    f.add_clause({-x});
    CHECK(solve_internal(f).status == SolveStatus::Unsat);

    CnfFormula empty;
    CHECK(solve_internal(empty).sat());
}

TEST_CASE("internal solver agrees with brute force on random 3-SAT") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        int nvars = 6 + static_cast<int>(rng() % 6);
        int nclauses = 10 + static_cast<int>(rng() % 40);
        CnfFormula f;
        std::vector<int> vars;
        for (int i = 0; i < nvars; ++i) vars.push_back(f.new_var());
        std::vector<std::vector<int>> raw;
        for (int c = 0; c < nclauses; ++c) {
            std::vector<int> cl;
            for (int j = 0; j < 3; ++j) {
                int v = vars[rng() % nvars];
                cl.push_back((rng() & 1) ? v : -v);
            }
            raw.push_back(cl);
            f.add_clause(cl);
        }
        // brute force over the raw vars only (var 1 is the pinned constant)
        std::vector<std::vector<int>> shifted;
        for (auto cl : raw) {
            for (auto& l : cl) l = l > 0 ? l - 1 : l + 1;
            shifted.push_back(cl);
        }
        CHECK(solve_internal(f).sat() == brute_force_sat(nvars, shifted));
    }
}

TEST_CASE("pigeonhole instances are unsat") {
    // 5 pigeons, 4 holes.
    CnfFormula f;
    int p[5][4];
    for (auto& row : p)
        for (auto& v : row) v = f.new_var();
    for (auto& row : p) f.add_clause({row[0], row[1], row[2], row[3]});
    for (int h = 0; h < 4; ++h)
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) f.add_clause({-p[i][h], -p[j][h]});
    CHECK(solve_internal(f).status == SolveStatus::Unsat);
}

TEST_CASE("xor_clause basics and model counts") {
    {
        CnfFormula f;
        int x = f.new_var();
        f.xor_clause(std::vector<int>{x}, true);
        auto r = solve_internal(f);
        REQUIRE(r.sat());
        CHECK(r.model[static_cast<std::size_t>(x)]);
    }
    {
        CnfFormula f;
        int x = f.new_var(), y = f.new_var();
        f.xor_clause(std::vector<int>{x, y}, false);
        CHECK(model_count(f, {x, y}) == 2);  // x == y
    }
    {
        // 8-literal chain: 2^7 solutions over the original vars.
        CnfFormula f;
        std::vector<int> vars;
        for (int i = 0; i < 8; ++i) vars.push_back(f.new_var());
        f.xor_clause(vars, true);
        CHECK(model_count(f, vars) == 128);
    }
}

TEST_CASE("matrix product constraints") {
    {
        // A = B = I fixed forces C = I on derived product bits.
        CnfFormula f;
        auto a = f.constant_matrix(BitMatrix::identity(2));
        auto b = f.constant_matrix(BitMatrix::identity(2));
        f.matrix_product_constraint(a, b, BitMatrix::identity(2));
        CHECK(solve_internal(f).sat());
        CnfFormula g;
        g.matrix_product_constraint(g.constant_matrix(BitMatrix::identity(2)),
                                    g.constant_matrix(BitMatrix::identity(2)), BitMatrix(2, 2));
        CHECK(solve_internal(g).status == SolveStatus::Unsat);
    }
    {
        // 2x2 free A, B with C = 0: A = 0 with arbitrary B is a model.
        CnfFormula f;
        auto a = f.new_matrix(2, 2);
        auto b = f.new_matrix(2, 2);
        f.matrix_product_constraint(a, b, BitMatrix(2, 2));
        for (auto l : a.lits) f.add_clause({-l});
        f.add_clause({b.at(0, 0)});
        f.add_clause({b.at(1, 1)});
        CHECK(solve_internal(f).sat());
    }
    {
        // GL gadget: exactly |GL(2,F2)| = 6 invertible assignments for A.
        CnfFormula f;
        auto [a, ainv] = f.gl_var(2);
        CHECK(model_count(f, a.lits) == 6);
    }
}

TEST_CASE("permutation_var model counts") {
    {
        CnfFormula f;
        auto p = f.permutation_var(1);
        auto r = solve_internal(f);
        REQUIRE(r.sat());
        CHECK(f.lit_value(r.model, p.at(0, 0)));
    }
    {
        CnfFormula f;
        auto p = f.permutation_var(3);
        CHECK(model_count(f, p.lits) == 6);
    }
    {
        CnfFormula f;
        auto p = f.permutation_var(3, /*involution=*/true);
        std::vector<int> distinct;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) distinct.push_back(p.at(i, j));
        CHECK(model_count(f, distinct) == 4);  // identity + three transpositions
    }
}

TEST_CASE("dimacs output is well-formed") {
    CnfFormula f;
    int x = f.new_var(), y = f.new_var();
    f.add_clause({x, -y});
    std::string d = f.to_dimacs();
    CHECK(d.rfind("p cnf 3 2", 0) == 0);  // pinned constant adds var 1 + unit clause
    CHECK(d.find("2 -3 0\n") != std::string::npos);
}

TEST_CASE("solver handle from env falls back to internal") {
    unsetenv("PHANTOM_SAT_SOLVER");
    auto h = SolverHandle::from_env();
    CHECK(h.mode == SolverHandle::Mode::Internal);
}
