#pragma once

#include "phantom/code.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace phantom {

/// Expanded Tanner graph: qubit vertices plus one vertex per nontrivial
/// stabilizer-group element, edges labelled by the Pauli type on the qubit.
/// CSS graphs are tripartite (X and Z element parts); general stabilizer
/// graphs use a single element part with X/Z/Y edge colours. Requires n <= 32.
struct TannerGraph {
    struct Elem {
        std::uint32_t xmask = 0, zmask = 0;
        int part = 0;  // 1 = X part, 2 = Z part, 3 = general
    };
    std::size_t n = 0;
    std::vector<Elem> elems;
};

TannerGraph expanded_tanner(const CssCode& code);
TannerGraph expanded_tanner(const StabilizerCode& code);

/// Byte string identifying a PiH-equivalence class: identical strings iff the
/// codes are related by a qubit permutation plus optional global Hadamard.
struct CanonicalForm {
    std::string bytes;
    auto operator<=>(const CanonicalForm&) const = default;
};

/// Minimal serialization over all canonical labellings of the graph
/// (iterated colour refinement + backtracking over the first non-singleton
/// cell, with twin pruning).
std::string canonical_serialization(const TannerGraph& g);

/// Qubit relabelling (old -> new) realizing the minimal serialization.
Perm canonical_label(const TannerGraph& g);

CanonicalForm canonical_form(const CssCode& code);
CanonicalForm canonical_form(const StabilizerCode& code);

}  // namespace phantom
