#pragma once

#include "phantom/code.hpp"
#include "phantom/tanner.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace phantom {

struct ClassInfo {
    CssCode rep;
    std::size_t dx = 0, dz = 0;
    // k_levels[p-1]: the class supports a complete addressable CNOT set on p
    // logicals (p = 1 meaning at least one permutation CNOT). Filled by
    // filter_phantom for k >= 2, d >= 2 classes.
    std::vector<bool> k_levels;
    bool phantom_checked = false;
};

/// All PiH-inequivalent CSS codes of block length n, one representative per
/// canonical form, layered by k.
struct CodeDatabase {
    std::size_t n = 0;
    std::map<std::size_t, std::map<CanonicalForm, ClassInfo>> layers;

    std::size_t total_classes() const;
};

struct EnumerateOptions {
    std::size_t k_min = 1;
    bool compute_distances = true;
};

/// Candidate (n, k) codes from one (n, k+1) seed: every nontrivial X-logical
/// appended to the X stabilizers (kept only when r_x stays <= r_z) and every
/// nontrivial Z-logical appended to the Z stabilizers.
std::vector<CssCode> extend_codes(const CssCode& seed);

/// Iterative enumeration from the trivial [[n, n]] code down to k_min, with
/// canonical-form deduplication at every layer.
CodeDatabase enumerate_all(std::size_t n, const EnumerateOptions& opts = {});

/// Brute-force weak-phantom stratification (K_1 .. K_k) for every k >= 2
/// class with distance >= min_d.
void filter_phantom(CodeDatabase& db, std::size_t min_d = 2);

struct CountsRow {
    std::size_t n = 0, k = 0, dx = 0, dz = 0;  // dx <= dz stratification
    std::size_t m = 0;
    std::vector<std::size_t> m_k;  // M[K_1], M[K_2], ...
};

/// d >= 2 strata per (k, dx <= dz), mirroring the count-table layout.
std::vector<CountsRow> phantom_counts(const CodeDatabase& db);
/// All-CSS counts per (k, d), including d = 1 rows (no error detection).
std::vector<CountsRow> all_counts(const CodeDatabase& db);

std::string counts_csv(const std::vector<CountsRow>& rows);

/// Directory layout: {dir}/{n}/{k}/forms.bin + index.json + representatives.jsonl.
void save_database(const CodeDatabase& db, const std::string& dir);
CodeDatabase load_database(const std::string& dir, std::size_t n);

/// Non-CSS pipeline (edge-coloured graphs); desk-scale, tested at n <= 4.
std::map<std::size_t, std::map<CanonicalForm, StabilizerCode>> enumerate_all_stabilizer(
    std::size_t n, std::size_t k_min);

}  // namespace phantom
