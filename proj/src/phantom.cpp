#include "phantom/phantom.hpp"

#include "phantom/sat_instances.hpp"
#include "phantom/tableau.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>

namespace phantom {

std::vector<BitMatrix> minimal_gateset(std::size_t k) {
    if (k < 2) throw std::invalid_argument("minimal_gateset requires k >= 2");
    std::vector<BitMatrix> out;
    out.push_back(f_cnot(k, 0, 1));
    for (std::size_t i = 0; i + 1 < k; ++i) out.push_back(f_swap(k, i, i + 1));
    return out;
}

namespace {

Perm doubled_perm(const Perm& p) {
    std::size_t n = p.size();
    Perm full(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        full[i] = p[i];
        full[n + i] = n + p[i];
    }
    return full;
}

bool is_cnot_type(const BitMatrix& f, std::size_t k) {
    if (f.rows() != 2 * k || f.cols() != 2 * k) return false;
    BitMatrix a = f.submatrix(0, k, 0, k);
    if (!is_invertible(a)) return false;
    return f == f_from_xx(a);
}

}  // namespace

bool check_perm_gateset(const StabilizerCode& code_in, const GateSetClaim& claim) {
    StabilizerCode code = code_in;
    ensure_logicals(code);
    std::size_t n = code.n, k = code.k;
    BitMatrix om = omega(n);
    BitMatrix omk = omega(k);
    for (const auto& [perm, f] : claim.items) {
        if (perm.size() != n || !is_perm(perm)) return false;
        if (!is_symplectic(f)) return false;
        Perm full = doubled_perm(perm);
        BitMatrix hp = code.h.permute_cols(full);
        BitMatrix qp = code.q->permute_cols(full);
        BitMatrix hq_t = mul(om, code.q->transpose());
        BitMatrix hh_t = mul(om, code.h.transpose());
        if (mul(qp, hq_t) != mul(f, omk)) return false;     // logical action
        if (!mul(hp, hh_t).is_zero()) return false;          // stabilizers commute
        if (!mul(hp, hq_t).is_zero()) return false;          // stabilizers stay stabilizers
        if (!mul(qp, hh_t).is_zero()) return false;          // logicals stay logical
    }
    return true;
}

bool check_perm_gateset_css(const CssCode& code_in, const GateSetClaim& claim) {
    CssCode code = code_in;
    ensure_logicals(code);
    std::size_t k = code.k;
    const BitMatrix& lx = code.logicals->lx;
    const BitMatrix& lz = code.logicals->lz;
    for (const auto& [perm, f] : claim.items) {
        if (perm.size() != code.n || !is_perm(perm)) return false;
        if (!is_cnot_type(f, k)) return false;
        BitMatrix fxx = f.submatrix(0, k, 0, k);
        BitMatrix fzz = f.submatrix(k, 2 * k, k, 2 * k);
        BitMatrix hxp = code.hx.permute_cols(perm);
        BitMatrix hzp = code.hz.permute_cols(perm);
        BitMatrix lxp = lx.permute_cols(perm);
        BitMatrix lzp = lz.permute_cols(perm);
        if (mul(lxp, lz.transpose()) != fxx) return false;
        if (mul(lzp, lx.transpose()) != fzz) return false;
        if (!mul(hxp, code.hz.transpose()).is_zero()) return false;
        if (!mul(hzp, code.hx.transpose()).is_zero()) return false;
        if (!mul(hxp, lz.transpose()).is_zero()) return false;
        if (!mul(hzp, lx.transpose()).is_zero()) return false;
        if (!mul(lxp, code.hz.transpose()).is_zero()) return false;
        if (!mul(lzp, code.hx.transpose()).is_zero()) return false;
    }
    return true;
}

namespace {

// Group-membership leaf test: every generator row, permuted, must stay inside
// the corresponding stabilizer group (expanded as bitmask sets for n <= 32).
struct GroupSets {
    std::vector<std::uint32_t> hx_rows, hz_rows;
    std::unordered_set<std::uint32_t> xgroup, zgroup;
    std::vector<std::uint64_t> qubit_sig;
};

std::uint32_t row_mask(const BitVec& v) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) m |= 1u << i;
    return m;
}

std::uint32_t permute_mask(std::uint32_t m, const Perm& p) {
    std::uint32_t out = 0;
    while (m) {
        int b = std::countr_zero(m);
        m &= m - 1;
        out |= 1u << p[b];
    }
    return out;
}

std::unordered_set<std::uint32_t> expand_group(const std::vector<std::uint32_t>& gens) {
    std::unordered_set<std::uint32_t> group;
    std::size_t r = gens.size();
    std::uint32_t cur = 0;
    group.insert(0);
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << r); ++g) {
        cur ^= gens[std::countr_zero(g)];
        group.insert(cur);
    }
    return group;
}

GroupSets build_group_sets(const CssCode& code) {
    GroupSets gs;
    for (std::size_t i = 0; i < code.rx(); ++i) gs.hx_rows.push_back(row_mask(code.hx.row(i)));
    for (std::size_t i = 0; i < code.rz(); ++i) gs.hz_rows.push_back(row_mask(code.hz.row(i)));
    gs.xgroup = expand_group(gs.hx_rows);
    gs.zgroup = expand_group(gs.hz_rows);
    // Permutation-invariant qubit signature: counts of group elements of each
    // weight covering the qubit, per sector.
    gs.qubit_sig.assign(code.n, 0);
    for (std::size_t q = 0; q < code.n; ++q) {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        std::vector<std::size_t> wx(code.n + 1, 0), wz(code.n + 1, 0);
        for (auto m : gs.xgroup)
            if (m & (1u << q)) ++wx[std::popcount(m)];
        for (auto m : gs.zgroup)
            if (m & (1u << q)) ++wz[std::popcount(m)];
        for (std::size_t w = 0; w <= code.n; ++w) {
            h = h * 0x100000001b3ull ^ wx[w];
            h = h * 0x100000001b3ull ^ wz[w];
        }
        gs.qubit_sig[q] = h;
    }
    return gs;
}

bool perm_preserves(const GroupSets& gs, const Perm& p) {
    for (auto m : gs.hx_rows)
        if (!gs.xgroup.count(permute_mask(m, p))) return false;
    for (auto m : gs.hz_rows)
        if (!gs.zgroup.count(permute_mask(m, p))) return false;
    return true;
}

// X-sector action A of a codespace-preserving permutation: Lx P = A Lx mod Hx.
std::optional<BitMatrix> induced_action(const CssCode& code, const Perm& p) {
    std::size_t k = code.k;
    BitMatrix basis = code.logicals->lx.vstack(code.hx);
    BitMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        auto coeff = solve_row(basis, apply_perm(code.logicals->lx.row(i), p));
        if (!coeff) return std::nullopt;
        for (std::size_t j = 0; j < k; ++j) a.set(i, j, coeff->get(j));
    }
    return a;
}

// DFS over permutations in lexicographic image order, pruned by qubit
// signatures; callback returns true to stop the search.
template <typename Fn>
void for_each_preserving_perm(const CssCode& code, const GroupSets& gs, bool involutions_only,
                              Fn&& leaf) {
    std::size_t n = code.n;
    Perm image(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    bool stop = false;

    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (stop) return;
        if (pos == n) {
            if (perm_preserves(gs, image)) stop = leaf(image);
            return;
        }
        if (involutions_only && image[pos] != SIZE_MAX) {
            self(self, pos + 1);
            return;
        }
        for (std::size_t cand = 0; cand < n && !stop; ++cand) {
            if (used[cand]) continue;
            if (gs.qubit_sig[pos] != gs.qubit_sig[cand]) continue;
            if (involutions_only) {
                if (cand == pos) {
                    image[pos] = pos;
                    used[pos] = true;
                    self(self, pos + 1);
                    image[pos] = SIZE_MAX;
                    used[pos] = false;
                } else if (cand > pos && image[cand] == SIZE_MAX &&
                           gs.qubit_sig[cand] == gs.qubit_sig[pos]) {
                    image[pos] = cand;
                    image[cand] = pos;
                    used[cand] = true;
                    used[pos] = true;
                    self(self, pos + 1);
                    image[pos] = image[cand] = SIZE_MAX;
                    used[cand] = used[pos] = false;
                }
                continue;
            }
            image[pos] = cand;
            used[cand] = true;
            self(self, pos + 1);
            used[cand] = false;
            image[pos] = SIZE_MAX;
        }
    };
    rec(rec, 0);
}

}  // namespace

std::optional<BitMatrix> perm_logical_action(const CssCode& code_in, const Perm& p) {
    CssCode code = code_in;
    ensure_logicals(code);
    if (!row_span_equal(code.hx.permute_cols(p), code.hx)) return std::nullopt;
    if (!row_span_equal(code.hz.permute_cols(p), code.hz)) return std::nullopt;
    return induced_action(code, p);
}

PermActionGroup perm_action_group(const CssCode& code_in, bool involutions_only) {
    CssCode code = code_in;
    ensure_logicals(code);
    if (code.n > 32) throw std::invalid_argument("perm_action_group: n too large");
    GroupSets gs = build_group_sets(code);
    PermActionGroup out;
    out.k = code.k;
    for_each_preserving_perm(code, gs, involutions_only, [&](const Perm& p) {
        auto a = induced_action(code, p);
        if (a) out.actions.emplace(matrix_key(*a), p);
        return false;
    });
    return out;
}

bool supports_any_cnot(const PermActionGroup& g) {
    if (g.k < 2) return false;
    for (const auto& [key, perm] : g.actions) {
        BitMatrix a = matrix_from_key(key, g.k);
        BitMatrix ai = a;
        for (std::size_t i = 0; i < g.k; ++i) ai.set(i, i, !ai.get(i, i));
        if (ai.is_zero()) continue;  // identity action
        if (rank(ai) != 1) continue;
        if (mul(a, a) == BitMatrix::identity(g.k)) return true;
    }
    return false;
}

bool supports_weak_phantom(const PermActionGroup& g, std::size_t p) {
    if (p < 2 || p > g.k) throw std::invalid_argument("supports_weak_phantom: need 2 <= p <= k");
    std::size_t k = g.k;
    std::vector<BitMatrix> targets;
    targets.push_back(f_cnot(k, 0, 1).submatrix(0, k, 0, k));
    for (std::size_t i = 0; i + 1 < p; ++i)
        targets.push_back(f_swap(k, i, i + 1).submatrix(0, k, 0, k));
    if (p == k) {
        for (const auto& t : targets)
            if (!g.contains(t)) return false;
        return true;
    }
    for (const auto& r : gl_group(k)) {
        BitMatrix rinv = *inverse(r);
        bool all = true;
        for (const auto& t : targets) {
            if (!g.contains(mul(mul(rinv, t), r))) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

std::optional<PhantomWitness> is_phantom_bruteforce(const CssCode& code_in,
                                                    const BruteForceOptions& opts) {
    CssCode code = code_in;
    ensure_logicals(code);
    if (code.k < 2) throw std::invalid_argument("phantomness needs k >= 2");
    if (code.n > opts.max_n)
        throw std::invalid_argument("is_phantom_bruteforce: n exceeds the search cutoff");
    GroupSets gs = build_group_sets(code);
    auto targets = minimal_gateset(code.k);
    std::vector<BitMatrix> target_xx;
    for (auto& t : targets) target_xx.push_back(t.submatrix(0, code.k, 0, code.k));
    std::vector<std::optional<Perm>> found(targets.size());
    std::size_t remaining = targets.size();

    for_each_preserving_perm(code, gs, opts.involutions_only, [&](const Perm& p) {
        auto a = induced_action(code, p);
        if (!a) return false;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (!found[t] && *a == target_xx[t]) {
                found[t] = p;
                --remaining;
            }
        }
        return remaining == 0;
    });
    if (remaining != 0) return std::nullopt;

    PhantomWitness w;
    w.n = code.n;
    w.k = code.k;
    w.basis = *code.logicals;
    for (auto& f : found) w.minimal.push_back(std::move(*f));
    complete_witness(w);
    return w;
}

void complete_witness(PhantomWitness& w) {
    std::size_t k = w.k;
    auto targets = minimal_gateset(k);
    // BFS over the GL(k) group generated by the minimal actions, tracking one
    // realizing permutation per element.
    std::unordered_map<std::uint64_t, Perm> reach;
    std::deque<std::uint64_t> queue;
    BitMatrix id = BitMatrix::identity(k);
    reach[matrix_key(id)] = perm_identity(w.n);
    queue.push_back(matrix_key(id));
    std::vector<BitMatrix> gen_xx;
    for (auto& t : targets) gen_xx.push_back(t.submatrix(0, k, 0, k));
    while (!queue.empty()) {
        std::uint64_t cur = queue.front();
        queue.pop_front();
        BitMatrix a = matrix_from_key(cur, k);
        const Perm& pa = reach[cur];
        for (std::size_t g = 0; g < gen_xx.size(); ++g) {
            BitMatrix next = mul(a, gen_xx[g]);
            std::uint64_t key = matrix_key(next);
            if (reach.count(key)) continue;
            reach[key] = perm_compose(pa, w.minimal[g]);
            queue.push_back(key);
        }
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b) continue;
            BitMatrix t = f_cnot(k, a, b).submatrix(0, k, 0, k);
            auto it = reach.find(matrix_key(t));
            if (it == reach.end())
                throw std::runtime_error("witness generators do not reach CNOT_ab");
            w.cnot_perms[{a, b}] = it->second;
        }
}

std::optional<Perm> compose_gl(const PhantomWitness& w, const BitMatrix& target) {
    std::size_t k = w.k;
    if (!is_invertible(target)) return std::nullopt;
    auto targets = minimal_gateset(k);
    std::unordered_map<std::uint64_t, Perm> reach;
    std::deque<std::uint64_t> queue;
    std::uint64_t goal = matrix_key(target);
    reach[matrix_key(BitMatrix::identity(k))] = perm_identity(w.n);
    queue.push_back(matrix_key(BitMatrix::identity(k)));
    std::vector<BitMatrix> gen_xx;
    for (auto& t : targets) gen_xx.push_back(t.submatrix(0, k, 0, k));
    while (!queue.empty()) {
        std::uint64_t cur = queue.front();
        queue.pop_front();
        if (cur == goal) return reach[cur];
        BitMatrix a = matrix_from_key(cur, k);
        const Perm& pa = reach[cur];
        for (std::size_t g = 0; g < gen_xx.size(); ++g) {
            std::uint64_t key = matrix_key(mul(a, gen_xx[g]));
            if (reach.count(key)) continue;
            reach[key] = perm_compose(pa, w.minimal[g]);
            queue.push_back(key);
        }
    }
    return std::nullopt;
}

PhantomSatResult is_phantom_sat(const CssCode& code_in, const SolverHandle& solver,
                                bool involutions_only) {
    CssCode code = code_in;
    ensure_logicals(code);
    PhantomSatResult out;
    if (code.k < 2) throw std::invalid_argument("phantomness needs k >= 2");
    PhantomInstance inst = phantom_instance(code, code.k, involutions_only);
    SolveResult res = solve(inst.formula, solver);
    switch (res.status) {
        case SolveStatus::Unsat:
            out.verdict = PhantomVerdict::NotPhantom;
            return out;
        case SolveStatus::Timeout:
            out.verdict = PhantomVerdict::Unknown;
            out.message = "solver timeout";
            return out;
        case SolveStatus::Error:
            out.verdict = PhantomVerdict::Unknown;
            out.message = "solver failure: " + res.message;
            return out;
        case SolveStatus::Sat:
            break;
    }
    PhantomWitness w = inst.decode_witness(res.model);
    // Independent re-verification of the decoded witness.
    GateSetClaim claim;
    auto targets = minimal_gateset(code.k);
    for (std::size_t t = 0; t < targets.size(); ++t)
        claim.items.emplace_back(w.minimal[t], targets[t]);
    CssCode with_basis = code;
    with_basis.logicals = w.basis;
    if (!check_perm_gateset_css(with_basis, claim))
        throw std::logic_error("SAT witness failed independent re-verification");
    complete_witness(w);
    out.verdict = PhantomVerdict::Phantom;
    out.witness = std::move(w);
    return out;
}

PeriodReport permutation_period_checks(const PhantomWitness& w) {
    PeriodReport rep;
    auto record = [&](const Perm& p) {
        PermutationPeriod pp;
        pp.period = perm_period(p);
        pp.even = pp.period % 2 == 0;
        pp.single_layer_swap = pp.period <= 2;
        pp.trivial = pp.period == 1;
        if (!pp.trivial && !pp.even) rep.all_even = false;
        rep.generators.push_back(pp);
    };
    for (const auto& p : w.minimal) record(p);
    return rep;
}

}  // namespace phantom
