#pragma once

#include "phantom/code.hpp"
#include "phantom/f2.hpp"
#include "phantom/pauli.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace phantom {

enum class GateKind { H, S, Sdg, X, Z, CNOT, CZ, SWAP, PERM };

struct Gate {
    GateKind kind;
    std::size_t a = 0, b = 0;  // targets; b unused for single-qubit gates
    Perm perm;                 // for PERM only

    static Gate h(std::size_t q) { return {GateKind::H, q}; }
    static Gate s(std::size_t q) { return {GateKind::S, q}; }
    static Gate sdg(std::size_t q) { return {GateKind::Sdg, q}; }
    static Gate x(std::size_t q) { return {GateKind::X, q}; }
    static Gate z(std::size_t q) { return {GateKind::Z, q}; }
    static Gate cnot(std::size_t c, std::size_t t) { return {GateKind::CNOT, c, t}; }
    static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, a, b}; }
    static Gate swap(std::size_t a, std::size_t b) { return {GateKind::SWAP, a, b}; }
    static Gate permutation(Perm p) { Gate g{GateKind::PERM}; g.perm = std::move(p); return g; }
};

struct Circuit {
    std::size_t n = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(std::size_t nq) : n(nq) {}
    Circuit& add(Gate g);
};

/// Conjugates p through g: returns U p U^dagger with exact phase.
PauliOp conjugate(const PauliOp& p, const Gate& g);
PauliOp conjugate(PauliOp p, const Circuit& c);

/// Stabilizer/destabilizer tableau with i-power sign tracking.
class CliffordTableau {
public:
    static CliffordTableau identity(std::size_t n);

    std::size_t num_qubits() const { return n_; }
    const PauliOp& destabilizer(std::size_t i) const { return rows_[i]; }
    const PauliOp& stabilizer(std::size_t i) const { return rows_[n_ + i]; }

    void apply(const Gate& g);
    void apply(const Circuit& c);

    /// Destabilizer i anticommutes with stabilizer i only; all other pairs commute.
    bool check_invariants() const;

private:
    std::size_t n_ = 0;
    std::vector<PauliOp> rows_;  // destabilizers then stabilizers
};

struct LogicalAction {
    bool codespace_preserved = false;
    std::string failure;     // set when not preserved
    BitMatrix f;             // 2k x 2k symplectic action: row i = image of logical i
    BitVec sign_defects;     // 2k bits, 1 where the image of logical i carries -1
    BitVec pauli_frame;      // logical Pauli label (a|b) realizing the defects
};

/// Exact logical action of a physical Clifford circuit on a CSS code.
/// Preservation demands every stabilizer map to a +1 element of the group.
LogicalAction logical_action(const CssCode& code, const Circuit& circuit);

/// True iff the circuit's action equals the claimed symplectic map, with
/// matching Pauli frame unless up_to_pauli is set.
bool verify_claim(const CssCode& code, const Circuit& circuit, const BitMatrix& claimed_f,
                  bool up_to_pauli = true, const BitVec* claimed_frame = nullptr);

/// Symplectic maps of common logical gates (2k x 2k; row = input generator).
BitMatrix f_identity(std::size_t k);
BitMatrix f_cnot(std::size_t k, std::size_t ctrl, std::size_t tgt);
BitMatrix f_swap(std::size_t k, std::size_t a, std::size_t b);
BitMatrix f_s(std::size_t k, std::size_t i);
BitMatrix f_cz(std::size_t k, std::size_t a, std::size_t b);
BitMatrix f_h_all(std::size_t k);
/// diag(A, A^{-T}) for a CNOT circuit with X-sector action A.
BitMatrix f_from_xx(const BitMatrix& a);

}  // namespace phantom
