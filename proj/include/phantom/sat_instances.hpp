#pragma once

#include "phantom/cnf.hpp"
#include "phantom/code.hpp"
#include "phantom/phantom.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace phantom {

/// SAT instance deciding whether the code supports a complete addressable
/// permutation CNOT set on p logical qubits (p = k: phantomness).
struct PhantomInstance {
    CnfFormula formula;
    CssCode code;  // logicals fixed
    std::size_t p = 0;
    std::vector<CnfFormula::MatrixVar> perms;
    std::optional<CnfFormula::MatrixVar> rot;  // GL(k) basis rotation, p < k only

    /// Decodes a model into the witness permutations (aligned with
    /// minimal_gateset(p) targets, embedded on the first p logicals).
    std::vector<Perm> decode(const std::vector<bool>& model) const;
    PhantomWitness decode_witness(const std::vector<bool>& model) const;
};

PhantomInstance phantom_instance(const CssCode& code, std::size_t p = 0,
                                 bool involutions_only = false);

struct DiscoverySpec {
    std::size_t n = 0, k = 0;
    std::size_t r = 0;   // CSS: rank of Hx (Hz rank is n-k-r); general: X-part rank
    std::size_t dx = 2, dz = 2;  // general mode uses dx as the single distance
    bool css = true;
    bool phantom = true;
    bool involutions_only = false;
};

/// Standard-form code discovery instance with exact distance constraints
/// (lower and upper bound families) and optional phantomness constraints.
struct DiscoveryInstance {
    CnfFormula formula;
    DiscoverySpec spec;
    CnfFormula::MatrixVar a1, a2, e;          // CSS submatrices
    std::optional<CnfFormula::MatrixVar> b, c;  // general mode only
    std::vector<CnfFormula::MatrixVar> perms;

    CssCode decode_css(const std::vector<bool>& model) const;
    StabilizerCode decode_stabilizer(const std::vector<bool>& model) const;
};

/// Throws std::length_error when the error-set enumeration would exceed the
/// clause budget.
DiscoveryInstance discovery_instance(const DiscoverySpec& spec,
                                     std::size_t clause_budget = 5'000'000);

}  // namespace phantom
