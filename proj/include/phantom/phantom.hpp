#pragma once

#include "phantom/code.hpp"
#include "phantom/f2.hpp"
#include "phantom/solver.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace phantom {

/// A claimed pairing of qubit permutations with target logical Cliffords
/// (2k x 2k symplectic maps).
struct GateSetClaim {
    std::vector<std::pair<Perm, BitMatrix>> items;
};

/// The minimal target set {CNOT_12, SWAP_12, ..., SWAP_(k-1)k} as symplectic
/// maps; generates every CNOT_ab. Requires k >= 2.
std::vector<BitMatrix> minimal_gateset(std::size_t k);

/// True iff every claimed permutation preserves the codespace and induces the
/// claimed logical action modulo stabilizers (general stabilizer version).
bool check_perm_gateset(const StabilizerCode& code, const GateSetClaim& claim);

/// CSS specialization; claims are restricted to CNOT circuits.
bool check_perm_gateset_css(const CssCode& code, const GateSetClaim& claim);

/// One permutation per ordered logical pair implementing CNOT_ab, plus the
/// basis they act in.
struct PhantomWitness {
    std::size_t n = 0, k = 0;
    LogicalBasisCss basis;
    std::vector<Perm> minimal;                           // aligned with minimal_gateset(k)
    std::map<std::pair<std::size_t, std::size_t>, Perm> cnot_perms;
};

/// Composes the minimal-generator permutations into one per CNOT_ab pair by
/// BFS word search over the induced GL(k) actions.
void complete_witness(PhantomWitness& w);

/// Permutation realizing the X-sector action `target` (a CNOT circuit) from
/// the witness generators, if reachable.
std::optional<Perm> compose_gl(const PhantomWitness& w, const BitMatrix& target);

struct BruteForceOptions {
    bool involutions_only = false;
    std::size_t max_n = 8;  // guard against factorial blow-up
};

/// Lexicographic search over S_n for a witness of the minimal gate set.
std::optional<PhantomWitness> is_phantom_bruteforce(const CssCode& code,
                                                    const BruteForceOptions& opts = {});

enum class PhantomVerdict { Phantom, NotPhantom, Unknown };

struct PhantomSatResult {
    PhantomVerdict verdict = PhantomVerdict::Unknown;
    std::optional<PhantomWitness> witness;
    std::string message;
};

/// SAT-based phantomness decision; a SAT witness is decoded and re-verified
/// through check_perm_gateset_css before being returned.
PhantomSatResult is_phantom_sat(const CssCode& code, const SolverHandle& solver,
                                bool involutions_only = false);

struct PermutationPeriod {
    std::size_t period = 0;
    bool even = false;
    bool single_layer_swap = false;  // period <= 2
    bool trivial = false;            // identity permutation
};

struct PeriodReport {
    std::vector<PermutationPeriod> generators;
    bool all_even = true;  // over non-trivial generators
};

PeriodReport permutation_period_checks(const PhantomWitness& w);

/// All X-sector logical actions induced by codespace-preserving qubit
/// permutations, as packed GL(k) keys (k <= 8), with one witness permutation
/// per action. The set is a subgroup of GL(k, F2).
struct PermActionGroup {
    std::size_t k = 0;
    std::unordered_map<std::uint64_t, Perm> actions;  // key -> first witness (lex order)
    bool contains(const BitMatrix& a) const { return actions.count(matrix_key(a)) > 0; }
};

PermActionGroup perm_action_group(const CssCode& code, bool involutions_only = false);

/// X-sector logical action of a single permutation when it preserves the
/// stabilizer groups; nullopt otherwise.
std::optional<BitMatrix> perm_logical_action(const CssCode& code, const Perm& p);

/// Complete addressable CNOT set on p of the k logical qubits, allowing a free
/// GL(k) basis rotation for p < k. For p == k no rotation is needed.
bool supports_weak_phantom(const PermActionGroup& g, std::size_t p);

/// At least one permutation acting as a single CNOT in some CSS basis, i.e.
/// the action group contains a transvection.
bool supports_any_cnot(const PermActionGroup& g);

}  // namespace phantom
