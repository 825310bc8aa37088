#pragma once

#include "phantom/f2.hpp"
#include "phantom/pauli.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace phantom {

struct LogicalBasisCss {
    BitMatrix lx, lz;  // k x n each, Lx Lz^T = I
};

/// CSS code given by full-row-rank X/Z stabilizer generator matrices.
struct CssCode {
    std::size_t n = 0, k = 0;
    BitMatrix hx, hz;
    std::optional<LogicalBasisCss> logicals;
    std::string name;

    std::size_t rx() const { return hx.rows(); }
    std::size_t rz() const { return hz.rows(); }
};

/// Builds a CssCode from (possibly redundant) generator sets; reduces to full
/// row rank and checks commutation. Throws on Hx Hz^T != 0.
CssCode make_css(BitMatrix hx, BitMatrix hz, std::string name = {});

/// All CssCode invariants, including the logical basis when present.
bool validate_css(const CssCode& code, std::string* why = nullptr);

/// Computes the standard-form logical basis (Lx = (0 E^T I), Lz = (A2^T 0 I)
/// mapped back through the column permutation) and stores it on the code.
void ensure_logicals(CssCode& code);
LogicalBasisCss logical_basis_css(const BitMatrix& hx, const BitMatrix& hz);

/// Swaps the X and Z sectors (global Hadamard).
CssCode hadamard_dual(const CssCode& code);

/// General stabilizer code; h holds r symplectic rows of width 2n.
struct StabilizerCode {
    std::size_t n = 0, k = 0;
    BitMatrix h;
    std::optional<BitMatrix> q;  // 2k x 2n logical basis, X rows then Z rows

    static StabilizerCode from_css(const CssCode& code);
};

StabilizerCode make_stabilizer(BitMatrix h, std::size_t n, std::string* why = nullptr);
bool validate_stabilizer(const StabilizerCode& code, std::string* why = nullptr);
void ensure_logicals(StabilizerCode& code);

struct CssDistance {
    std::size_t dx = 0, dz = 0;
    bool exact = true;
    std::size_t certified_up_to = 0;  // meaningful when !exact
    std::size_t d() const { return dx < dz ? dx : dz; }
};

struct DistanceOptions {
    std::size_t span_walk_limit = 28;    // max rx+k (or rz+k) for the exact walk
    std::size_t weight_limit = 0;        // 0: refuse beyond the walk limit
};

/// Exact per-sector distances via a Gray-coded walk over the $2^{r+k}$ span,
/// or a weight-limited ascending search returning a certified bound.
CssDistance distance_css(const CssCode& code, const DistanceOptions& opts = {});

/// Exact distance over the full Pauli coset walk, 2^{n-k} (2^{2k}-1) candidates.
std::size_t distance_stabilizer(const StabilizerCode& code);

/// Class content of the logical Pauli labelled by (a|b) in F2^{2k} over the
/// given basis: weight vector -> number of physical representatives.
std::map<WeightVector, std::size_t> logical_class_weights(const CssCode& code,
                                                          const BitVec& label);

/// Representative physical Pauli of the logical class (a|b).
PauliOp logical_representative(const CssCode& code, const BitVec& label);

/// Maximum number of length-n weight-d bitstrings with pairwise XOR weight
/// >= d, by exact branch-and-bound (max clique).
std::size_t hamming_B(std::size_t n, std::size_t d);

/// eta * (2^k - 1) <= B(n, d), with eta defaulting to the weight-d class size
/// of the first logical in the limiting sector.
bool check_hamming_bound(const CssCode& code, std::optional<std::size_t> eta = {});

}  // namespace phantom
