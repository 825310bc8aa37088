#pragma once

#include "phantom/code.hpp"
#include "phantom/phantom.hpp"
#include "phantom/tableau.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace phantom {

/// Ordered CNOT list over (block, logical index) pairs.
struct LogicalCnotCircuit {
    std::size_t blocks = 0, k = 0;
    // (control block, control index, target block, target index)
    std::vector<std::array<std::size_t, 4>> gates;
};

/// X-sector action of the circuit as a GL(blocks * k) matrix.
BitMatrix circuit_matrix(const LogicalCnotCircuit& c);

struct ScheduleLayer {
    enum class Kind { Transversal, Relabel, BlockSwap };
    Kind kind = Kind::Relabel;
    // Transversal: disjoint (control, target) block pairs, one CNOT depth.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    // Relabel: zero-cost in-block CNOT circuit (X-sector action) on one block.
    std::size_t block = 0;
    BitMatrix gl;
};

/// Layered interblock transversal-CNOT + per-block relabelling program; the
/// trailing residual permutes logical qubits at zero cost.
struct PhysicalSchedule {
    std::size_t blocks = 0, k = 0;
    std::vector<ScheduleLayer> layers;
    std::optional<Perm> residual;  // over blocks * k logicals, applied last

    std::size_t transversal_depth() const;
};

/// Total X-sector action of the schedule including the residual.
BitMatrix schedule_matrix(const PhysicalSchedule& s);

/// Arbitrary two-block CNOT circuit: transversal depth <= 4 in general,
/// <= 2 with no residual for block-triangular (unidirectional) inputs.
PhysicalSchedule compile_two_blocks(const BitMatrix& x, std::size_t k);

/// Recursive block-PLDU over 2^a blocks with cyclic scheduling of the
/// off-diagonal terms; depth <= 4 (2^a - 1), or 2 (2^a - 1) unidirectional.
/// Non-power-of-two block counts are padded with virtual identity blocks.
PhysicalSchedule compile_multiblock(const LogicalCnotCircuit& c);
PhysicalSchedule compile_multiblock_matrix(const BitMatrix& x, std::size_t blocks, std::size_t k);

/// Cross-block swaps of the listed (index in block A, index in block B)
/// logical pairs in exactly four transversal layers.
PhysicalSchedule compile_logical_swap_pairs(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t k,
    std::size_t block_a = 0, std::size_t block_b = 1, std::size_t blocks = 2);

/// Physical realization of a logical permutation: two involution layers, each
/// edge-coloured over block pairs (at most k+1 colours) and executed through
/// four-layer swap circuits; total transversal depth <= 8k + 8.
PhysicalSchedule residual_permutation(const Perm& perm, std::size_t blocks, std::size_t k);

/// Layer-by-layer symplectic propagation against the target, up to the
/// declared residual.
bool verify_schedule(const PhysicalSchedule& s, const BitMatrix& target);

/// Expands the schedule into a physical circuit over blocks * n qubits,
/// realizing relabellings through the code's phantom witness.
Circuit schedule_to_physical(const PhysicalSchedule& s, const CssCode& code,
                             const PhantomWitness& witness);

}  // namespace phantom
