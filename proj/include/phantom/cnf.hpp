#pragma once

#include "phantom/f2.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace phantom {

/// Clause database with fresh-variable allocation and structured variable
/// groups. Literals are signed DIMACS integers; variable 1 is pinned true so
/// constants can flow through the gadget builders.
class CnfFormula {
public:
    CnfFormula();

    int num_vars() const { return nvars_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<std::vector<int>>& clauses() const { return clauses_; }

    int new_var() { return ++nvars_; }
    int true_lit() const { return 1; }
    int false_lit() const { return -1; }

    void add_clause(std::vector<int> lits);

    /// Clauses satisfiable iff XOR of lits equals parity; Tseitin chain of
    /// arity 3.
    void xor_clause(std::span<const int> lits, bool parity);
    /// Fresh (or folded) literal equal to the XOR of lits.
    int xor_lit(std::span<const int> lits);
    /// Memoized AND gate.
    int and_lit(int a, int b);
    int or_lit(std::span<const int> lits);

    void at_most_one(std::span<const int> lits);
    void exactly_one(std::span<const int> lits);

    /// A rows x cols grid of literals.
    struct MatrixVar {
        std::size_t rows = 0, cols = 0;
        std::vector<int> lits;  // row-major
        int at(std::size_t r, std::size_t c) const { return lits[r * cols + c]; }
        int& at(std::size_t r, std::size_t c) { return lits[r * cols + c]; }
    };

    MatrixVar new_matrix(std::size_t rows, std::size_t cols);
    MatrixVar constant_matrix(const BitMatrix& m);
    /// n x n grid with exactly-one row/column constraints; with involution
    /// set, upper and lower triangles share variables (A = A^T).
    MatrixVar permutation_var(std::size_t n, bool involution = false);
    /// Invertible matrix: returns (A, A') with A A' = I imposed.
    std::pair<MatrixVar, MatrixVar> gl_var(std::size_t k);

    /// Derived product bits (AND per term, XOR per entry).
    MatrixVar matrix_product(const MatrixVar& a, const MatrixVar& b);
    /// Asserts A B = C for a constant C.
    void matrix_product_constraint(const MatrixVar& a, const MatrixVar& b, const BitMatrix& c);
    void matrix_equals(const MatrixVar& a, const BitMatrix& value);
    MatrixVar transpose(const MatrixVar& a);

    /// Decode helpers against a model indexed by variable (model[v] true/false).
    bool lit_value(const std::vector<bool>& model, int lit) const;
    BitMatrix decode_matrix(const std::vector<bool>& model, const MatrixVar& m) const;

    std::string to_dimacs() const;

private:
    int xor3(int a, int b, int c);  // fresh var d with d = a^b^c

    int nvars_ = 0;
    std::vector<std::vector<int>> clauses_;
    std::map<std::pair<int, int>, int> and_cache_;
};

}  // namespace phantom
