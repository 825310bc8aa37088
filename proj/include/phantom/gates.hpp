#pragma once

#include "phantom/code.hpp"
#include "phantom/construct.hpp"
#include "phantom/solver.hpp"
#include "phantom/tableau.hpp"
#include "phantom/zring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace phantom {

/// Logical gate from a qubit permutation plus per-qubit single-qubit
/// Cliffords, with the Pauli correction folded into the circuit.
struct AutomorphismGate {
    Perm perm;
    std::vector<int> local;  // per-qubit index into {I, H, S, HS, SH, HSH}
    Circuit circuit;
    LogicalAction action;
};

struct AutomorphismSearchResult {
    std::vector<AutomorphismGate> gates;
    bool complete = true;  // false when the node budget truncated the search
};

/// Exhaustive search of column permutations of [Hx | Hz | Hx+Hz] that map
/// per-qubit triples to triples and preserve the row span.
AutomorphismSearchResult automorphism_gates(const CssCode& code,
                                            std::size_t node_budget = 50'000'000);

/// Integer-coefficient polynomial over logical bits modulo 2^mod_bits.
struct PhasePoly {
    unsigned mod_bits = 3;
    std::map<std::uint32_t, std::uint8_t> coeff;  // logical-set mask -> coefficient

    void add_term(std::uint32_t mono, std::uint8_t c);
    std::uint8_t eval(std::uint32_t x) const;
    bool operator==(const PhasePoly&) const = default;
    std::string str() const;
};

struct RotationAssignment {
    std::vector<std::uint8_t> gamma;  // per-qubit Z-rotation power in [0, 2^l)
};

struct DiagonalGate {
    RotationAssignment rotation;
    PhasePoly poly;
};

/// Kernel generators of the level-l constraint matrix, each with its logical
/// phase polynomial.
std::vector<DiagonalGate> diagonal_gates(const CssCode& code, unsigned level);

/// Phase polynomial of a rotation assignment; throws when gamma violates the
/// kernel conditions.
PhasePoly logical_phase_poly(const RotationAssignment& gamma, const CssCode& code,
                             unsigned level);

/// Rotation assignment realizing the target polynomial as a combination of
/// kernel generators (linear terms matched modulo Pauli when requested).
std::optional<RotationAssignment> find_diagonal_gate(const CssCode& code, unsigned level,
                                                     const PhasePoly& target,
                                                     bool up_to_pauli = true);

/// Exact enumeration check: every codeword of each logical class picks up the
/// same phase, equal to the polynomial value.
bool verify_diagonal_exact(const CssCode& code, const RotationAssignment& gamma,
                           unsigned level, const PhasePoly& expected);
/// Same check through a dense complex statevector.
bool verify_diagonal_statevector(const CssCode& code, const RotationAssignment& gamma,
                                 unsigned level, const PhasePoly& expected);

struct EmbeddedCode {
    CssCode code;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // ancilla -> data pair
};

/// One ancilla per data pair, entangled by CNOTs: stabilizers propagated and
/// a Z_x Z_i Z_j stabilizer added per ancilla.
EmbeddedCode embedded_code(const CssCode& code);

struct FoldGate {
    FoldKind kind;
    std::size_t a = 0, b = 0;  // logical pair
    FoldCircuit circuit;
};

/// Depth-one S/CZ fold gates found through the embedded-code kernel
/// conditions, solved per target with the matching constraint; every result
/// is tableau-verified. An empty list means no depth-one solution was found.
std::vector<FoldGate> fold_gates(const CssCode& code, const SolverHandle& solver);
std::optional<FoldGate> find_fold_gate(const CssCode& code, const SolverHandle& solver,
                                       FoldKind kind, std::size_t a, std::size_t b);

}  // namespace phantom
