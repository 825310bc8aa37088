#pragma once

#include "phantom/f2.hpp"

#include <cstdint>
#include <vector>

namespace phantom {

/// Monomials over m binary variables are variable-subset bitmasks; evaluation
/// vectors are indexed by the coordinate v in [0, 2^m) with x_i(v) = bit i.

BitVec monomial_eval(std::uint32_t vars, std::size_t m);
/// prod_{i not in vars} (x_i + 1): indicator of the subcube where every
/// variable outside the monomial is zero.
BitVec negated_complement_eval(std::uint32_t vars, std::size_t m);

std::vector<std::uint32_t> monomials_of_degree(std::size_t m, std::size_t d);
/// Degree <= r, ordered by (degree, mask).
std::vector<std::uint32_t> monomials_up_to_degree(std::size_t m, std::size_t r);

/// Generator matrix of RM(r, m): evaluation vectors of all monomials of
/// degree <= r.
BitMatrix rm_generator(std::size_t r, std::size_t m);

/// Coordinate permutation realizing the substitution pullback of
/// T(x) = A x + b: apply_perm(eval(f), result) = eval(f o T).
Perm affine_perm(const BitMatrix& a, const BitVec& b);

/// Evaluation vector of f(Ax + b) for a monomial f (oracle for affine_perm).
BitVec substitute_eval(std::uint32_t vars, const BitMatrix& a, const BitVec& b, std::size_t m);

}  // namespace phantom
