#pragma once

#include "phantom/code.hpp"
#include "phantom/gf4.hpp"
#include "phantom/phantom.hpp"
#include "phantom/poly.hpp"
#include "phantom/tableau.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace phantom {

/// Quantum Reed-Muller code: X stabilizers RM(l-1, m), Z stabilizers
/// RM(m-l-1, m), logicals from the degree-l monomials.
CssCode qrm(std::size_t m, std::size_t l);

/// Orbits of the degree-l monomials under the invertible transforms of the
/// suffix variables x_l..x_m (modulo lower-degree terms), computed by closure
/// under transvections. Orbits are labelled by the prefix part and returned
/// ordered by prefix mask.
std::vector<std::vector<std::uint32_t>> qrm_orbits(std::size_t m, std::size_t l);

/// Retains the m-l+1 logicals x_1..x_{l-1} x_j and promotes every other
/// degree-l orbit: the default policy fixes them to Z-type stabilizers.
CssCode phantom_qrm(std::size_t m, std::size_t l);

enum class OrbitSector { X, Z };

/// Balanced variant: each non-retained orbit goes whole to X or Z.
/// Assignments are aligned with qrm_orbits minus the full-prefix orbit.
CssCode phantom_qrm_balanced(std::size_t m, std::size_t l,
                             const std::vector<OrbitSector>& assign);

/// The [[64,4,8]] balancing used as the reference preset: the x1-prefix orbit
/// to Z, the x2-prefix and empty-prefix orbits to X.
CssCode phantom_qrm_balanced_64_4_8();

CssCode hypercube(std::size_t d);
/// Truncates the X sector and shortens the Z sector at the given qubit.
CssCode puncture_css(const CssCode& code, std::size_t qubit);
CssCode punctured_hypercube(std::size_t d);

CssCode glued_422(std::size_t m, bool punctured = false);

/// Hypergraph product of the [2^k-1, k] simplex code (all weight-3 dual
/// codewords as checks) with the [2^{k-1}, 1] repetition code.
CssCode hgp_phantom(std::size_t k);

/// Concatenation with a k = 1 inner code; outer relabelling witnesses lift
/// blockwise.
CssCode concat_simple(const CssCode& outer, const CssCode& inner);

/// Connects a CSS code with its Hadamard-dual through transversal CNOTs.
CssCode connect_dual(const CssCode& primal);
/// Closed-form distance of connect_dual output, minimized over the displayed
/// sets (independent of the brute-force route).
std::size_t connect_dual_distance_formula(const CssCode& primal);

/// CSS code from doubling a (possibly non-CSS) stabilizer code (A|B).
CssCode double_noncss(const StabilizerCode& code);

/// Per-qudit [[4,2,2]] concatenation of a binarized GF(4) code (qubit pairs
/// (2j, 2j+1) become blocks of four).
CssCode concat_422(const CssCode& paired);

/// Binarize-and-concatenate family from the GF(4) quadratic-residue codes.
CssCode bc_code(std::size_t p);

enum class FoldKind { SS, CZ };

/// Depth-one S/CZ pattern along a coordinate involution.
struct FoldCircuit {
    std::size_t n = 0;
    Perm tau;
    std::vector<int> s_power;  // Z-rotation power mod 4 per qubit
    std::vector<std::pair<std::size_t, std::size_t>> cz_pairs;
    Circuit to_circuit() const;
};

/// Algebraic fold involution for a default phantom qRM code (m, l derived
/// from (n, k)); SS implements S on logicals 1,2, CZ the controlled-Z between
/// them, each verified by tableau before returning.
FoldCircuit fold_involution(const CssCode& qrm_code, FoldKind kind);

/// Builds a phantom witness from generator permutations whose induced
/// actions generate the needed CNOT/SWAP targets (BFS word search).
std::optional<PhantomWitness> witness_from_generators(const CssCode& code,
                                                      const std::vector<Perm>& gens);

/// Algebraic witnesses for the construction families.
PhantomWitness qrm_phantom_witness(const CssCode& code);
PhantomWitness hgp_phantom_witness(std::size_t k, const CssCode& code);
PhantomWitness glued_422_witness(std::size_t m, const CssCode& code);
PhantomWitness bc_witness(std::size_t p, const CssCode& code);
PhantomWitness concat_simple_witness(const PhantomWitness& outer, std::size_t inner_n,
                                     const CssCode& code);

}  // namespace phantom
