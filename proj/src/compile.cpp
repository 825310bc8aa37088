#include "phantom/compile.hpp"

#include <algorithm>
#include <stdexcept>

namespace phantom {

BitMatrix circuit_matrix(const LogicalCnotCircuit& c) {
    std::size_t dim = c.blocks * c.k;
    BitMatrix x = BitMatrix::identity(dim);
    for (const auto& [cb, ci, tb, ti] : c.gates) {
        if (cb >= c.blocks || tb >= c.blocks || ci >= c.k || ti >= c.k || (cb == tb && ci == ti))
            throw std::invalid_argument("CNOT indices out of range");
        BitMatrix g = BitMatrix::identity(dim);
        g.set(cb * c.k + ci, tb * c.k + ti, true);
        x = mul(x, g);
    }
    return x;
}

std::size_t PhysicalSchedule::transversal_depth() const {
    std::size_t d = 0;
    for (const auto& l : layers)
        if (l.kind == ScheduleLayer::Kind::Transversal && !l.pairs.empty()) ++d;
    return d;
}

BitMatrix schedule_matrix(const PhysicalSchedule& s) {
    std::size_t dim = s.blocks * s.k;
    BitMatrix m = BitMatrix::identity(dim);
    for (const auto& l : s.layers) {
        BitMatrix g = BitMatrix::identity(dim);
        switch (l.kind) {
            case ScheduleLayer::Kind::Transversal: {
                std::vector<bool> touched(s.blocks, false);
                for (auto [c, t] : l.pairs) {
                    if (touched[c] || touched[t])
                        throw std::invalid_argument("transversal layer touches a block twice");
                    touched[c] = touched[t] = true;
                    for (std::size_t i = 0; i < s.k; ++i)
                        g.set(c * s.k + i, t * s.k + i, true);
                }
                break;
            }
            case ScheduleLayer::Kind::Relabel: {
                for (std::size_t i = 0; i < s.k; ++i)
                    for (std::size_t j = 0; j < s.k; ++j)
                        g.set(l.block * s.k + i, l.block * s.k + j, l.gl.get(i, j));
                break;
            }
            case ScheduleLayer::Kind::BlockSwap: {
                for (auto [a, b] : l.pairs)
                    for (std::size_t i = 0; i < s.k; ++i) {
                        g.set(a * s.k + i, a * s.k + i, false);
                        g.set(b * s.k + i, b * s.k + i, false);
                        g.set(a * s.k + i, b * s.k + i, true);
                        g.set(b * s.k + i, a * s.k + i, true);
                    }
                break;
            }
        }
        m = mul(m, g);
    }
    if (s.residual) m = mul(m, BitMatrix::perm_matrix(*s.residual));
    return m;
}

namespace {

void push_relabel(PhysicalSchedule& s, std::size_t block, const BitMatrix& gl) {
    if (gl == BitMatrix::identity(gl.rows())) return;
    ScheduleLayer l;
    l.kind = ScheduleLayer::Kind::Relabel;
    l.block = block;
    l.gl = gl;
    s.layers.push_back(std::move(l));
}

void push_transversal(PhysicalSchedule& s, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    if (pairs.empty()) return;
    ScheduleLayer l;
    l.kind = ScheduleLayer::Kind::Transversal;
    l.pairs = std::move(pairs);
    s.layers.push_back(std::move(l));
}

// [[I, U], [0, I]] between blocks (a -> b): depth 1 for invertible U, 2 via
// the GL-sum split otherwise, 0 for U = 0.
void emit_upper(PhysicalSchedule& s, std::size_t a, std::size_t b, const BitMatrix& u) {
    if (u.is_zero()) return;
    std::size_t k = u.rows();
    if (is_invertible(u)) {
        push_relabel(s, a, u);
        push_transversal(s, {{a, b}});
        push_relabel(s, a, *inverse(u));
        return;
    }
    auto [u1, u2] = gl_sum_split(u);
    push_relabel(s, a, u1);
    push_transversal(s, {{a, b}});
    BitMatrix mid = mul(*inverse(u1), u2);
    push_relabel(s, a, mid);
    push_transversal(s, {{a, b}});
    push_relabel(s, a, *inverse(u2));
    (void)k;
}

// [[I, 0], [L, I]] with L in the (b-rows, a-cols) block: transversal b -> a.
void emit_lower(PhysicalSchedule& s, std::size_t a, std::size_t b, const BitMatrix& l) {
    if (l.is_zero()) return;
    if (is_invertible(l)) {
        push_relabel(s, b, l);
        push_transversal(s, {{b, a}});
        push_relabel(s, b, *inverse(l));
        return;
    }
    auto [l1, l2] = gl_sum_split(l);
    push_relabel(s, b, l1);
    push_transversal(s, {{b, a}});
    push_relabel(s, b, mul(*inverse(l1), l2));
    push_transversal(s, {{b, a}});
    push_relabel(s, b, *inverse(l2));
}

}  // namespace

PhysicalSchedule compile_two_blocks(const BitMatrix& x, std::size_t k) {
    if (x.rows() != 2 * k || !is_invertible(x))
        throw std::invalid_argument("compile_two_blocks needs invertible 2k x 2k input");
    PhysicalSchedule s;
    s.blocks = 2;
    s.k = k;
    BitMatrix a = x.submatrix(0, k, 0, k);
    BitMatrix b = x.submatrix(0, k, k, 2 * k);
    BitMatrix c = x.submatrix(k, 2 * k, 0, k);
    BitMatrix d = x.submatrix(k, 2 * k, k, 2 * k);
    if (c.is_zero()) {
        // Upper block-triangular: diag(A, D) then [[I, A^{-1}B], [0, I]].
        push_relabel(s, 0, a);
        push_relabel(s, 1, d);
        emit_upper(s, 0, 1, mul(*inverse(a), b));
        return s;
    }
    if (b.is_zero()) {
        push_relabel(s, 0, a);
        push_relabel(s, 1, d);
        emit_lower(s, 0, 1, mul(c, *inverse(a)));
        return s;
    }
    // General: X = L' D' U' P via the transposed block PLDU.
    BlockPldu f = block_pldu(x.transpose(), k);
    // X = (U_w)^T diag(C1^T, C2^T) (L_w)^T P^T with (U_w)^T lower, (L_w)^T upper.
    emit_lower(s, 0, 1, f.u.transpose());
    push_relabel(s, 0, f.c1.transpose());
    push_relabel(s, 1, f.c2.transpose());
    emit_upper(s, 0, 1, f.l.transpose());
    BitMatrix pt = f.p.transpose();
    Perm res(2 * k);
    for (std::size_t i = 0; i < 2 * k; ++i)
        for (std::size_t j = 0; j < 2 * k; ++j)
            if (pt.get(i, j)) res[i] = j;
    if (res != perm_identity(2 * k)) s.residual = res;
    return s;
}

namespace {

// Schedules over disjoint block sets run in parallel: transversal layers zip
// together, relabels attach to their round.
PhysicalSchedule parallel_merge(const PhysicalSchedule& a, const PhysicalSchedule& b,
                                std::size_t blocks, std::size_t k) {
    PhysicalSchedule out;
    out.blocks = blocks;
    out.k = k;
    auto rounds = [](const PhysicalSchedule& s) {
        // Split into segments, each ending with one transversal layer.
        std::vector<std::vector<ScheduleLayer>> seg(1);
        for (const auto& l : s.layers) {
            seg.back().push_back(l);
            if (l.kind == ScheduleLayer::Kind::Transversal) seg.push_back({});
        }
        return seg;
    };
    auto sa = rounds(a), sb = rounds(b);
    std::size_t total = std::max(sa.size(), sb.size());
    for (std::size_t i = 0; i < total; ++i) {
        std::vector<ScheduleLayer> merged;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (auto* src : {i < sa.size() ? &sa[i] : nullptr, i < sb.size() ? &sb[i] : nullptr}) {
            if (!src) continue;
            for (const auto& l : *src) {
                if (l.kind == ScheduleLayer::Kind::Transversal)
                    pairs.insert(pairs.end(), l.pairs.begin(), l.pairs.end());
                else merged.push_back(l);
            }
        }
        out.layers.insert(out.layers.end(), merged.begin(), merged.end());
        push_transversal(out, std::move(pairs));
    }
    return out;
}

// Offsets every block index in the schedule by base.
PhysicalSchedule offset_blocks(const PhysicalSchedule& s, std::size_t base, std::size_t blocks) {
    PhysicalSchedule out;
    out.blocks = blocks;
    out.k = s.k;
    for (auto l : s.layers) {
        if (l.kind == ScheduleLayer::Kind::Relabel) l.block += base;
        else
            for (auto& [a, b] : l.pairs) {
                a += base;
                b += base;
            }
        out.layers.push_back(std::move(l));
    }
    return out;
}

// Compiles X over the contiguous block range [b0, b0 + sz); returns the
// residual permutation over the local sz * k coordinates.
PhysicalSchedule compile_range(const BitMatrix& x, std::size_t b0, std::size_t sz, std::size_t k,
                               std::size_t blocks, Perm& residual) {
    PhysicalSchedule s;
    s.blocks = blocks;
    s.k = k;
    residual = perm_identity(sz * k);
    if (sz == 1) {
        push_relabel(s, b0, x);
        return s;
    }
    std::size_t half = sz / 2;
    std::size_t mdim = half * k;

    BitMatrix a = x.submatrix(0, mdim, 0, mdim);
    BitMatrix b = x.submatrix(0, mdim, mdim, 2 * mdim);
    BitMatrix c = x.submatrix(mdim, 2 * mdim, 0, mdim);
    BitMatrix d = x.submatrix(mdim, 2 * mdim, mdim, 2 * mdim);

    BitMatrix lpart, upart, c1, c2;
    Perm pcol = perm_identity(2 * mdim);
    if (c.is_zero()) {
        lpart = BitMatrix(mdim, mdim);
        c1 = a;
        c2 = d;
        upart = mul(*inverse(a), b);
    } else if (b.is_zero()) {
        upart = BitMatrix(mdim, mdim);
        c1 = a;
        c2 = d;
        lpart = mul(c, *inverse(a));
    } else {
        BlockPldu f = block_pldu(x.transpose(), mdim);
        lpart = f.u.transpose();
        c1 = f.c1.transpose();
        c2 = f.c2.transpose();
        upart = f.l.transpose();
        BitMatrix pt = f.p.transpose();
        for (std::size_t i = 0; i < 2 * mdim; ++i)
            for (std::size_t j = 0; j < 2 * mdim; ++j)
                if (pt.get(i, j)) pcol[i] = j;
    }

    // Cyclic rounds of two-block triangular terms; each round touches
    // disjoint block pairs and costs at most two transversal layers.
    auto rounds = [&](const BitMatrix& mat, bool lower) {
        for (std::size_t round = 0; round < half; ++round) {
            PhysicalSchedule stage;
            stage.blocks = blocks;
            stage.k = k;
            for (std::size_t i = 0; i < half; ++i) {
                std::size_t j = (i + round) % half;
                BitMatrix sub(k, k);
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t cc = 0; cc < k; ++cc)
                        sub.set(r, cc, lower ? mat.get(j * k + r, i * k + cc)
                                             : mat.get(i * k + r, j * k + cc));
                if (sub.is_zero()) continue;
                PhysicalSchedule pairsched;
                pairsched.blocks = blocks;
                pairsched.k = k;
                if (lower) emit_lower(pairsched, b0 + i, b0 + half + j, sub);
                else emit_upper(pairsched, b0 + i, b0 + half + j, sub);
                stage = parallel_merge(stage, pairsched, blocks, k);
            }
            s.layers.insert(s.layers.end(), stage.layers.begin(), stage.layers.end());
        }
    };

    rounds(lpart, /*lower=*/true);

    Perm r1, r2;
    PhysicalSchedule s1 = compile_range(c1, b0, half, k, blocks, r1);
    PhysicalSchedule s2 = compile_range(c2, b0 + half, half, k, blocks, r2);
    PhysicalSchedule mid = parallel_merge(s1, s2, blocks, k);
    s.layers.insert(s.layers.end(), mid.layers.begin(), mid.layers.end());

    // Children residuals conjugate through the upper part: U' = R1 U R2^{-1}.
    Perm rboth(2 * mdim);
    for (std::size_t i = 0; i < mdim; ++i) {
        rboth[i] = r1[i];
        rboth[mdim + i] = mdim + r2[i];
    }
    BitMatrix r1m = BitMatrix::perm_matrix(r1);
    BitMatrix r2m = BitMatrix::perm_matrix(r2);
    BitMatrix uprime = mul(mul(r1m, upart), *inverse(r2m));

    rounds(uprime, /*lower=*/false);

    // residual = diag(R1, R2) followed by the column permutation.
    residual = perm_compose(rboth, pcol);
    return s;
}

}  // namespace

PhysicalSchedule compile_multiblock_matrix(const BitMatrix& x, std::size_t blocks, std::size_t k) {
    if (x.rows() != blocks * k || !is_invertible(x))
        throw std::invalid_argument("compile_multiblock: invalid target");
    std::size_t padded = 1;
    while (padded < blocks) padded <<= 1;
    BitMatrix xp = BitMatrix::identity(padded * k);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            xp.set(i, j, x.get(i, j));
    Perm residual;
    PhysicalSchedule s = compile_range(xp, 0, padded, k, padded, residual);
    if (residual != perm_identity(padded * k)) s.residual = residual;
    // Prune virtual blocks (they never appear in transversal pairs since the
    // padded action is identity there; relabels on them are identity too).
    PhysicalSchedule out;
    out.blocks = blocks;
    out.k = k;
    for (auto& l : s.layers) {
        if (l.kind == ScheduleLayer::Kind::Relabel && l.block >= blocks) {
            if (l.gl != BitMatrix::identity(k))
                throw std::logic_error("padding block received a nontrivial relabel");
            continue;
        }
        if (l.kind == ScheduleLayer::Kind::Transversal) {
            std::vector<std::pair<std::size_t, std::size_t>> kept;
            for (auto [a, b] : l.pairs)
                if (a < blocks && b < blocks) kept.push_back({a, b});
                else throw std::logic_error("padding block used in a transversal layer");
            l.pairs = std::move(kept);
        }
        out.layers.push_back(std::move(l));
    }
    if (s.residual) {
        Perm res = *s.residual;
        for (std::size_t i = blocks * k; i < padded * k; ++i)
            if (res[i] != i) throw std::logic_error("padding block in the residual");
        res.resize(blocks * k);
        out.residual = res;
    }
    return out;
}

PhysicalSchedule compile_multiblock(const LogicalCnotCircuit& c) {
    return compile_multiblock_matrix(circuit_matrix(c), c.blocks, c.k);
}

namespace {

// Realizes a permutation over the 2k logicals of two blocks (block-local
// index layout: [0, k) block A, [k, 2k) block B) with zero-cost relabels and
// one four-layer cross-swap stage; block swaps handle heavy cross-flow.
PhysicalSchedule realize_two_block_perm(const Perm& sigma, std::size_t k, std::size_t block_a,
                                        std::size_t block_b, std::size_t blocks);

// Depth-four implementation of the aligned cross matching
// {(A, 2t) <-> (B, 2t) : t < l}, 2l <= k, via the seven-factor decomposition.
PhysicalSchedule aligned_cross_swaps(std::size_t l, std::size_t k, std::size_t block_a,
                                     std::size_t block_b, std::size_t blocks) {
    PhysicalSchedule s;
    s.blocks = blocks;
    s.k = k;
    if (l == 0) return s;
    BitMatrix m2a = BitMatrix::identity(k), m2b = BitMatrix::identity(k);
    BitMatrix m6a = BitMatrix::identity(k), m6b = BitMatrix::identity(k);
    for (std::size_t t = 0; t < l; ++t) {
        std::size_t e = 2 * t, o = 2 * t + 1;
        // [[1,1],[1,0]] on block A slot pairs, [[1,0],[1,1]] on block B.
        m2a.set(e, o, true), m2a.set(o, e, true), m2a.set(o, o, false);
        m2b.set(o, e, true);
        m6a.set(e, o, true), m6a.set(o, e, true), m6a.set(o, o, false);
    }
    push_transversal(s, {{block_a, block_b}});
    push_relabel(s, block_a, m2a);
    push_relabel(s, block_b, m2b);
    push_transversal(s, {{block_b, block_a}});
    push_relabel(s, block_a, m2a);
    push_relabel(s, block_b, m2b);
    push_transversal(s, {{block_b, block_a}});
    push_relabel(s, block_a, m6a);
    push_relabel(s, block_b, m6b);
    push_transversal(s, {{block_a, block_b}});
    return s;
}

PhysicalSchedule realize_two_block_perm(const Perm& sigma, std::size_t k, std::size_t block_a,
                                        std::size_t block_b, std::size_t blocks) {
    PhysicalSchedule s;
    s.blocks = blocks;
    s.k = k;
    std::vector<std::size_t> a_cross, b_cross;
    for (std::size_t i = 0; i < k; ++i) {
        if (sigma[i] >= k) a_cross.push_back(i);
        if (sigma[k + i] < k) b_cross.push_back(i);
    }
    std::size_t flow = a_cross.size();
    if (flow != b_cross.size()) throw std::logic_error("inconsistent cross flow");
    if (flow == 0) {
        Perm pa(k), pb(k);
        for (std::size_t i = 0; i < k; ++i) {
            pa[i] = sigma[i];
            pb[i] = sigma[k + i] - k;
        }
        push_relabel(s, block_a, BitMatrix::perm_matrix(pa));
        push_relabel(s, block_b, BitMatrix::perm_matrix(pb));
        return s;
    }
    if (2 * flow > k) {
        // Swap the blocks outright (free) and realize the lighter remainder.
        ScheduleLayer bs;
        bs.kind = ScheduleLayer::Kind::BlockSwap;
        bs.pairs = {{block_a, block_b}};
        s.layers.push_back(std::move(bs));
        Perm swap_all(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            swap_all[i] = k + i;
            swap_all[k + i] = i;
        }
        Perm rest = perm_compose(swap_all, sigma);
        PhysicalSchedule tail = realize_two_block_perm(rest, k, block_a, block_b, blocks);
        s.layers.insert(s.layers.end(), tail.layers.begin(), tail.layers.end());
        return s;
    }
    // Route crossing logicals to the even slots, cross-swap, then finish with
    // relabels: sigma = rho1 . C . rho2.
    Perm rho1(2 * k);
    {
        std::vector<bool> slot_a(k, false), slot_b(k, false);
        for (std::size_t t = 0; t < flow; ++t) {
            rho1[a_cross[t]] = 2 * t;
            rho1[k + b_cross[t]] = k + 2 * t;
            slot_a[2 * t] = slot_b[2 * t] = true;
        }
        std::size_t na = 0, nb = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (sigma[i] < k) {
                while (slot_a[na]) ++na;
                rho1[i] = na;
                slot_a[na] = true;
            }
            if (sigma[k + i] >= k) {
                while (slot_b[nb]) ++nb;
                rho1[k + i] = k + nb;
                slot_b[nb] = true;
            }
        }
    }
    Perm cross = perm_identity(2 * k);
    for (std::size_t t = 0; t < flow; ++t) {
        cross[2 * t] = k + 2 * t;
        cross[k + 2 * t] = 2 * t;
    }
    Perm rho2 = perm_compose(perm_inverse(perm_compose(rho1, cross)), sigma);
    for (std::size_t i = 0; i < k; ++i)
        if (rho2[i] >= k || rho2[k + i] < k)
            throw std::logic_error("cross-swap routing left a crossing residue");
    Perm r1a(k), r1b(k), r2a(k), r2b(k);
    for (std::size_t i = 0; i < k; ++i) {
        r1a[i] = rho1[i];
        r1b[i] = rho1[k + i] - k;
        r2a[i] = rho2[i];
        r2b[i] = rho2[k + i] - k;
    }
    push_relabel(s, block_a, BitMatrix::perm_matrix(r1a));
    push_relabel(s, block_b, BitMatrix::perm_matrix(r1b));
    PhysicalSchedule mid = aligned_cross_swaps(flow, k, block_a, block_b, blocks);
    s.layers.insert(s.layers.end(), mid.layers.begin(), mid.layers.end());
    push_relabel(s, block_a, BitMatrix::perm_matrix(r2a));
    push_relabel(s, block_b, BitMatrix::perm_matrix(r2b));
    return s;
}

}  // namespace

PhysicalSchedule compile_logical_swap_pairs(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs_in, std::size_t k,
    std::size_t block_a, std::size_t block_b, std::size_t blocks) {
    Perm sigma = perm_identity(2 * k);
    std::vector<bool> ua(k, false), ub(k, false);
    for (auto [i, j] : pairs_in) {
        if (i >= k || j >= k || ua[i] || ub[j])
            throw std::invalid_argument("invalid swap pair list");
        ua[i] = ub[j] = true;
        sigma[i] = k + j;
        sigma[k + j] = i;
    }
    return realize_two_block_perm(sigma, k, block_a, block_b, blocks);
}

PhysicalSchedule residual_permutation(const Perm& perm, std::size_t blocks, std::size_t k) {
    if (perm.size() != blocks * k) throw std::invalid_argument("permutation size mismatch");
    PhysicalSchedule s;
    s.blocks = blocks;
    s.k = k;
    if (perm == perm_identity(blocks * k)) return s;

    // Decompose into two involutions by reversing each cycle twice.
    Perm i1 = perm_identity(blocks * k), i2 = perm_identity(blocks * k);
    {
        std::vector<bool> seen(perm.size(), false);
        for (std::size_t start = 0; start < perm.size(); ++start) {
            if (seen[start]) continue;
            std::vector<std::size_t> cycle;
            std::size_t v = start;
            do {
                cycle.push_back(v);
                seen[v] = true;
                v = perm[v];
            } while (v != start);
            std::size_t m = cycle.size();
            // perm restricted to the cycle equals i2 o i1 with both reversals.
            for (std::size_t t = 0; t < m; ++t) {
                i1[cycle[t]] = cycle[(m - t) % m];
                i2[cycle[t]] = cycle[(m - 1 - t + m) % m];
            }
        }
        if (perm_compose(i1, i2) != perm)
            throw std::logic_error("involution decomposition failed");
    }

    for (const Perm& layer : {i1, i2}) {
        // In-block transpositions become relabels; cross-block ones are
        // grouped per block pair and edge-coloured.
        std::map<std::size_t, BitMatrix> relabels;
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>
            cross;
        for (std::size_t v = 0; v < layer.size(); ++v) {
            std::size_t w = layer[v];
            if (w <= v) continue;
            std::size_t vb = v / k, wb = w / k;
            if (vb == wb) {
                auto it = relabels.find(vb);
                if (it == relabels.end()) it = relabels.emplace(vb, BitMatrix::identity(k)).first;
                BitMatrix swapm = BitMatrix::identity(k);
                swapm.set(v % k, v % k, false);
                swapm.set(w % k, w % k, false);
                swapm.set(v % k, w % k, true);
                swapm.set(w % k, v % k, true);
                it->second = mul(it->second, swapm);
            } else {
                cross[{std::min(vb, wb), std::max(vb, wb)}].push_back(
                    vb < wb ? std::make_pair(v % k, w % k) : std::make_pair(w % k, v % k));
            }
        }
        for (auto& [block, gl] : relabels) push_relabel(s, block, gl);
        if (cross.empty()) continue;
        // Edge colouring with at most k+1 colours (backtracking; existence by
        // Vizing's bound since each block hosts at most k swaps).
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (auto& [bp, swaps] : cross) edges.push_back(bp);
        std::size_t ncolors = k + 1;
        std::vector<std::size_t> color(edges.size(), SIZE_MAX);
        auto conflict = [&](std::size_t e, std::size_t c) {
            for (std::size_t o = 0; o < edges.size(); ++o) {
                if (o == e || color[o] != c) continue;
                if (edges[o].first == edges[e].first || edges[o].first == edges[e].second ||
                    edges[o].second == edges[e].first || edges[o].second == edges[e].second)
                    return true;
            }
            return false;
        };
        auto assign = [&](auto&& self, std::size_t e) -> bool {
            if (e == edges.size()) return true;
            for (std::size_t c = 0; c < ncolors; ++c) {
                if (conflict(e, c)) continue;
                color[e] = c;
                if (self(self, e + 1)) return true;
                color[e] = SIZE_MAX;
            }
            return false;
        };
        if (!assign(assign, 0)) throw std::logic_error("edge colouring exceeded k+1 colours");
        for (std::size_t c = 0; c < ncolors; ++c) {
            PhysicalSchedule stage;
            stage.blocks = blocks;
            stage.k = k;
            bool any = false;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (color[e] != c) continue;
                auto sched = compile_logical_swap_pairs(cross[edges[e]], k, edges[e].first,
                                                        edges[e].second, blocks);
                if (sched.residual) throw std::logic_error("swap schedule must not carry a residual");
                stage = any ? parallel_merge(stage, sched, blocks, k) : sched;
                any = true;
            }
            s.layers.insert(s.layers.end(), stage.layers.begin(), stage.layers.end());
        }
    }
    return s;
}

bool verify_schedule(const PhysicalSchedule& s, const BitMatrix& target) {
    return schedule_matrix(s) == target;
}

Circuit schedule_to_physical(const PhysicalSchedule& s, const CssCode& code,
                             const PhantomWitness& witness) {
    std::size_t n = code.n;
    Circuit c(s.blocks * n);
    for (const auto& l : s.layers) {
        switch (l.kind) {
            case ScheduleLayer::Kind::Transversal:
                for (auto [cb, tb] : l.pairs)
                    for (std::size_t q = 0; q < n; ++q)
                        c.add(Gate::cnot(cb * n + q, tb * n + q));
                break;
            case ScheduleLayer::Kind::Relabel: {
                auto p = compose_gl(witness, l.gl);
                if (!p) throw std::invalid_argument("relabel action unreachable from the witness");
                Perm full = perm_identity(s.blocks * n);
                for (std::size_t q = 0; q < n; ++q) full[l.block * n + q] = l.block * n + (*p)[q];
                c.add(Gate::permutation(full));
                break;
            }
            case ScheduleLayer::Kind::BlockSwap: {
                Perm full = perm_identity(s.blocks * n);
                for (auto [a, b] : l.pairs)
                    for (std::size_t q = 0; q < n; ++q) {
                        full[a * n + q] = b * n + q;
                        full[b * n + q] = a * n + q;
                    }
                c.add(Gate::permutation(full));
                break;
            }
        }
    }
    return c;
}

}  // namespace phantom
