#include "phantom/gates.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <bit>
#include <complex>
#include <stdexcept>
#include <unordered_map>

namespace phantom {

namespace {

// Column-content maps of the six single-qubit Cliffords on the (x, z, y)
// triple: new column b reads old column mu[b].
struct LocalGate {
    std::array<int, 3> mu;
    std::vector<GateKind> gates;
};

const std::array<LocalGate, 6>& local_gates() {
    // H swaps x and z; S swaps z and y. Words generate S3.
    static const std::array<LocalGate, 6> table = [] {
        auto compose = [](std::array<int, 3> a, std::array<int, 3> b) {
            // apply word for a, then word for b: new(c) = old(a[b[c]])
            return std::array<int, 3>{a[b[0]], a[b[1]], a[b[2]]};
        };
        std::array<int, 3> id{0, 1, 2}, h{1, 0, 2}, s{0, 2, 1};
        std::array<LocalGate, 6> t{};
        t[0] = {id, {}};
        t[1] = {h, {GateKind::H}};
        t[2] = {s, {GateKind::S}};
        t[3] = {compose(h, s), {GateKind::H, GateKind::S}};
        t[4] = {compose(s, h), {GateKind::S, GateKind::H}};
        t[5] = {compose(compose(h, s), h), {GateKind::H, GateKind::S, GateKind::H}};
        return t;
    }();
    return table;
}

}  // namespace

AutomorphismSearchResult automorphism_gates(const CssCode& code_in, std::size_t node_budget) {
    CssCode code = code_in;
    ensure_logicals(code);
    std::size_t n = code.n;
    std::size_t rows = code.rx() + code.rz();
    if (rows > 28) throw std::invalid_argument("automorphism_gates: stabilizer count too large");

    // Columns of H_E = [H^(x) | H^(z) | H^(x)+H^(z)] as row masks.
    std::vector<std::array<std::uint32_t, 3>> cols(n);
    for (std::size_t q = 0; q < n; ++q) {
        std::array<std::uint32_t, 3> c{0, 0, 0};
        for (std::size_t i = 0; i < code.rx(); ++i)
            if (code.hx.get(i, q)) {
                c[0] |= 1u << i;
                c[2] |= 1u << i;
            }
        for (std::size_t i = 0; i < code.rz(); ++i)
            if (code.hz.get(i, q)) {
                c[1] |= 1u << (code.rx() + i);
                c[2] |= 1u << (code.rx() + i);
            }
        cols[q] = c;
    }

    // Position signatures over the expanded codeword set: per column, the
    // weight histogram of codewords covering it.
    std::vector<std::array<std::uint64_t, 3>> sig(n);
    {
        std::vector<std::array<std::vector<std::uint32_t>, 3>> hist(n);
        for (auto& h : hist)
            for (auto& v : h) v.assign(3 * n + 1, 0);
        std::uint64_t total = std::uint64_t{1} << rows;
        std::vector<std::uint8_t> bit(3 * n);
        for (std::uint64_t w = 0; w < total; ++w) {
            std::size_t weight = 0;
            for (std::size_t q = 0; q < n; ++q)
                for (int b = 0; b < 3; ++b) {
                    bit[3 * q + static_cast<std::size_t>(b)] =
                        std::popcount(cols[q][static_cast<std::size_t>(b)] &
                                      static_cast<std::uint32_t>(w)) &
                        1;
                    weight += bit[3 * q + static_cast<std::size_t>(b)];
                }
            for (std::size_t q = 0; q < n; ++q)
                for (int b = 0; b < 3; ++b)
                    if (bit[3 * q + static_cast<std::size_t>(b)])
                        ++hist[q][static_cast<std::size_t>(b)][weight];
        }
        for (std::size_t q = 0; q < n; ++q)
            for (int b = 0; b < 3; ++b) {
                std::uint64_t h = 0xcbf29ce484222325ull;
                for (auto c : hist[q][static_cast<std::size_t>(b)]) h = (h ^ c) * 0x100000001b3ull;
                sig[q][static_cast<std::size_t>(b)] = h;
            }
    }

    Rref ref;
    {
        BitMatrix mtx(rows, 3 * n);
        for (std::size_t q = 0; q < n; ++q)
            for (int b = 0; b < 3; ++b)
                for (std::size_t i = 0; i < rows; ++i)
                    if ((cols[q][static_cast<std::size_t>(b)] >> i) & 1)
                        mtx.set(i, static_cast<std::size_t>(b) * n + q, true);
        ref = rref(mtx);
    }

    AutomorphismSearchResult res;
    std::vector<std::size_t> image(n, SIZE_MAX);
    std::vector<int> mu_idx(n, 0);
    std::vector<bool> used(n, false);
    std::size_t nodes = 0;

    auto leaf_check = [&]() {
        BitMatrix mtx(rows, 3 * n);
        for (std::size_t q = 0; q < n; ++q) {
            const auto& mu = local_gates()[static_cast<std::size_t>(mu_idx[q])].mu;
            for (int b = 0; b < 3; ++b) {
                std::uint32_t content = cols[q][static_cast<std::size_t>(mu[static_cast<std::size_t>(b)])];
                for (std::size_t i = 0; i < rows; ++i)
                    if ((content >> i) & 1)
                        mtx.set(i, static_cast<std::size_t>(b) * n + image[q], true);
            }
        }
        Rref r = rref(mtx);
        return r.pivots == ref.pivots && r.mat == ref.mat;
    };

    auto emit = [&]() {
        Circuit c(n);
        for (std::size_t q = 0; q < n; ++q)
            for (GateKind kind : local_gates()[static_cast<std::size_t>(mu_idx[q])].gates)
                c.add(Gate{kind, q});
        c.add(Gate::permutation(image));
        LogicalAction act = logical_action(code, c);
        if (!act.codespace_preserved) {
            // Pauli correction restoring all stabilizer signs to +1.
            std::vector<PauliOp> gens;
            for (std::size_t i = 0; i < code.rx(); ++i)
                gens.emplace_back(code.hx.row(i), BitVec(code.n));
            for (std::size_t i = 0; i < code.rz(); ++i)
                gens.emplace_back(BitVec(code.n), code.hz.row(i));
            BitMatrix group_rows(0, 2 * n);
            for (const auto& gp : gens) group_rows.append_row(gp.to_symplectic());
            BitMatrix sys(0, 2 * n);
            BitVec rhs(rows);
            for (std::size_t i = 0; i < gens.size(); ++i) {
                PauliOp img = conjugate(gens[i], c);
                auto coeff = solve_row(group_rows, img.to_symplectic());
                if (!coeff) return;
                PauliOp prod(n);
                for (std::size_t j = 0; j < gens.size(); ++j)
                    if (coeff->get(j)) prod *= gens[j];
                int diff = ((img.phase - prod.phase) % 4 + 4) % 4;
                if (diff & 1) return;
                rhs.set(i, diff == 2);
                BitVec r = img.to_symplectic();
                sys.append_row(r.slice(n, 2 * n).concat(r.slice(0, n)));  // Omega-paired
            }
            // Solve sys p^T = rhs.
            std::size_t next = 0;
            std::vector<std::size_t> piv;
            BitMatrix aug = sys;
            BitVec d = rhs;
            for (std::size_t colx = 0; colx < 2 * n && next < aug.rows(); ++colx) {
                std::size_t sel = aug.rows();
                for (std::size_t i = next; i < aug.rows(); ++i)
                    if (aug.get(i, colx)) { sel = i; break; }
                if (sel == aug.rows()) continue;
                std::swap(aug.row(next), aug.row(sel));
                bool dn = d.get(next), ds = d.get(sel);
                d.set(next, ds);
                d.set(sel, dn);
                for (std::size_t i = 0; i < aug.rows(); ++i)
                    if (i != next && aug.get(i, colx)) {
                        aug.row(i) ^= aug.row(next);
                        d.set(i, d.get(i) ^ d.get(next));
                    }
                piv.push_back(colx);
                ++next;
            }
            for (std::size_t i = next; i < aug.rows(); ++i)
                if (d.get(i)) return;
            BitVec p(2 * n);
            for (std::size_t i = 0; i < piv.size(); ++i)
                if (d.get(i)) p.set(piv[i], true);
            for (std::size_t q = 0; q < n; ++q) {
                if (p.get(q)) c.add(Gate::x(q));
                if (p.get(n + q)) c.add(Gate::z(q));
            }
            act = logical_action(code, c);
            if (!act.codespace_preserved) return;
        }
        AutomorphismGate g;
        g.perm = image;
        g.local = mu_idx;
        g.circuit = std::move(c);
        g.action = std::move(act);
        res.gates.push_back(std::move(g));
    };

    auto rec = [&](auto&& self, std::size_t q) -> void {
        if (!res.complete) return;
        if (++nodes > node_budget) {
            res.complete = false;
            return;
        }
        if (q == n) {
            if (leaf_check()) emit();
            return;
        }
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            for (std::size_t mi = 0; mi < 6; ++mi) {
                const auto& mu = local_gates()[mi].mu;
                bool ok = true;
                for (std::size_t b = 0; b < 3 && ok; ++b)
                    if (sig[q][static_cast<std::size_t>(mu[b])] != sig[cand][b]) ok = false;
                if (!ok) continue;
                image[q] = cand;
                mu_idx[q] = static_cast<int>(mi);
                used[cand] = true;
                self(self, q + 1);
                used[cand] = false;
                image[q] = SIZE_MAX;
            }
        }
    };
    rec(rec, 0);
    std::sort(res.gates.begin(), res.gates.end(), [](const auto& a, const auto& b) {
        return std::tie(a.perm, a.local) < std::tie(b.perm, b.local);
    });
    return res;
}

void PhasePoly::add_term(std::uint32_t mono, std::uint8_t c) {
    std::uint8_t mask = static_cast<std::uint8_t>((1u << mod_bits) - 1);
    c &= mask;
    if (!c) return;
    auto it = coeff.find(mono);
    if (it == coeff.end()) {
        coeff[mono] = c;
        return;
    }
    it->second = static_cast<std::uint8_t>(it->second + c) & mask;
    if (!it->second) coeff.erase(it);
}

std::uint8_t PhasePoly::eval(std::uint32_t x) const {
    std::uint8_t mask = static_cast<std::uint8_t>((1u << mod_bits) - 1);
    std::uint8_t acc = 0;
    for (auto [mono, c] : coeff)
        if ((x & mono) == mono) acc = static_cast<std::uint8_t>(acc + c) & mask;
    return acc;
}

std::string PhasePoly::str() const {
    if (coeff.empty()) return "0";
    std::string s;
    for (auto [mono, c] : coeff) {
        if (!s.empty()) s += " + ";
        s += std::to_string(c);
        std::uint32_t m = mono;
        while (m) {
            int b = std::countr_zero(m);
            m &= m - 1;
            s += " x" + std::to_string(b + 1);
        }
    }
    s += " mod " + std::to_string(1u << mod_bits);
    return s;
}

namespace {

// Rows of the level-l constraint matrix M for G = [Lx; Hx].
ZMat constraint_matrix(const CssCode& code, unsigned level) {
    std::size_t k = code.k, rx = code.rx(), m = k + rx, n = code.n;
    std::vector<BitVec> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(code.logicals->lx.row(i));
    for (std::size_t i = 0; i < rx; ++i) g.push_back(code.hx.row(i));

    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<std::size_t> idx;
    // wedge tuples of size t with at least one stabilizer index, coefficient 2^{t-1}
    auto add_row = [&](const std::vector<std::size_t>& tuple) {
        bool any_stab = false;
        for (auto j : tuple)
            if (j >= k) any_stab = true;
        if (!any_stab) return;
        BitVec wedge = g[tuple[0]];
        for (std::size_t t = 1; t < tuple.size(); ++t) wedge &= g[tuple[t]];
        std::uint8_t c = static_cast<std::uint8_t>(1u << (tuple.size() - 1));
        std::vector<std::uint8_t> row(n, 0);
        bool nonzero = false;
        for (std::size_t q = 0; q < n; ++q)
            if (wedge.get(q)) {
                row[q] = c;
                nonzero = true;
            }
        if (nonzero) rows.push_back(std::move(row));
    };
    std::vector<std::size_t> tuple;
    auto enumerate = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == 0) {
            add_row(tuple);
            return;
        }
        for (std::size_t j = start; j < m; ++j) {
            tuple.push_back(j);
            self(self, j + 1, depth - 1);
            tuple.pop_back();
        }
    };
    for (std::size_t t = 1; t <= level && t <= m; ++t) enumerate(enumerate, 0, t);

    ZMat out(rows.size(), n, level);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = rows[i][j];
    (void)idx;
    return out;
}

std::uint8_t wt_gamma(const std::vector<std::uint8_t>& gamma, const BitVec& v, unsigned level) {
    std::uint8_t mask = static_cast<std::uint8_t>((1u << level) - 1);
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) acc = static_cast<std::uint8_t>(acc + gamma[i]) & mask;
    return acc;
}

PhasePoly poly_of(const std::vector<std::uint8_t>& gamma, const CssCode& code, unsigned level) {
    std::size_t k = code.k;
    PhasePoly poly;
    poly.mod_bits = level;
    std::vector<BitVec> l;
    for (std::size_t i = 0; i < k; ++i) l.push_back(code.logicals->lx.row(i));
    std::vector<std::size_t> tuple;
    auto enumerate = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == 0) {
            BitVec wedge = l[tuple[0]];
            std::uint32_t mono = 0;
            for (auto j : tuple) {
                mono |= std::uint32_t{1} << j;
                if (j != tuple[0]) wedge &= l[j];
            }
            std::uint8_t c = static_cast<std::uint8_t>((1u << (tuple.size() - 1)) *
                                                       wt_gamma(gamma, wedge, level));
            poly.add_term(mono, c);
            return;
        }
        for (std::size_t j = start; j < k; ++j) {
            tuple.push_back(j);
            self(self, j + 1, depth - 1);
            tuple.pop_back();
        }
    };
    for (std::size_t t = 1; t <= level && t <= k; ++t) enumerate(enumerate, 0, t);
    return poly;
}

}  // namespace

std::vector<DiagonalGate> diagonal_gates(const CssCode& code_in, unsigned level) {
    CssCode code = code_in;
    ensure_logicals(code);
    ZMat m = constraint_matrix(code, level);
    ZMat ker = kernel_mod2l(m);
    std::vector<DiagonalGate> out;
    for (std::size_t i = 0; i < ker.rows; ++i) {
        DiagonalGate g;
        g.rotation.gamma.assign(code.n, 0);
        bool nonzero = false;
        for (std::size_t j = 0; j < code.n; ++j) {
            g.rotation.gamma[j] = ker.at(i, j);
            nonzero |= ker.at(i, j) != 0;
        }
        if (!nonzero) continue;
        g.poly = poly_of(g.rotation.gamma, code, level);
        out.push_back(std::move(g));
    }
    return out;
}

PhasePoly logical_phase_poly(const RotationAssignment& gamma, const CssCode& code_in,
                             unsigned level) {
    CssCode code = code_in;
    ensure_logicals(code);
    if (gamma.gamma.size() != code.n) throw std::invalid_argument("gamma size mismatch");
    ZMat m = constraint_matrix(code, level);
    std::uint8_t mask = static_cast<std::uint8_t>((1u << level) - 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < m.cols; ++j)
            acc = static_cast<std::uint8_t>(acc + m.at(i, j) * gamma.gamma[j]) & mask;
        if (acc) throw std::invalid_argument("rotation assignment violates the kernel conditions");
    }
    return poly_of(gamma.gamma, code, level);
}

std::optional<RotationAssignment> find_diagonal_gate(const CssCode& code_in, unsigned level,
                                                     const PhasePoly& target, bool up_to_pauli) {
    CssCode code = code_in;
    ensure_logicals(code);
    auto gens = diagonal_gates(code, level);
    std::size_t k = code.k;
    // Monomial basis over the logical bits.
    std::vector<std::uint32_t> monos;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) <= level) monos.push_back(mask);
    std::size_t cols = monos.size();
    std::size_t extra = up_to_pauli ? k : 0;
    ZMat a(gens.size() + extra, cols, level);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            auto it = gens[i].poly.coeff.find(monos[j]);
            a.at(i, j) = it == gens[i].poly.coeff.end() ? 0 : it->second;
        }
    // Pauli slack: 2^{l-1} x_j rows.
    for (std::size_t e = 0; e < extra; ++e)
        for (std::size_t j = 0; j < cols; ++j)
            if (monos[j] == (std::uint32_t{1} << e))
                a.at(gens.size() + e, j) = static_cast<std::uint8_t>(1u << (level - 1));

    // Reduce the target against the Howell form of [A | I].
    ZMat aug(a.rows, cols + a.rows, level);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, cols + i) = 1;
    }
    ZMat h = howell_form(aug);
    std::vector<std::uint8_t> residual(cols, 0);
    std::uint8_t mask = static_cast<std::uint8_t>((1u << level) - 1);
    for (std::size_t j = 0; j < cols; ++j) {
        auto it = target.coeff.find(monos[j]);
        residual[j] = it == target.coeff.end() ? 0 : it->second & mask;
    }
    std::vector<std::uint8_t> combo(a.rows, 0);
    for (std::size_t i = 0; i < h.rows; ++i) {
        std::size_t lead = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (h.at(i, j)) { lead = j; break; }
        if (lead == cols) continue;
        std::uint8_t pv = h.at(i, lead);
        int v = std::countr_zero(static_cast<unsigned>(pv));
        if (std::countr_zero(static_cast<unsigned>(residual[lead]) | (1u << level)) < v) continue;
        std::uint8_t q = static_cast<std::uint8_t>(residual[lead] >> v) & mask;
        if (!q) continue;
        for (std::size_t j = 0; j < cols; ++j)
            residual[j] = static_cast<std::uint8_t>(residual[j] - q * h.at(i, j)) & mask;
        for (std::size_t j = 0; j < a.rows; ++j)
            combo[j] = static_cast<std::uint8_t>(combo[j] + q * h.at(i, cols + j)) & mask;
    }
    for (auto r : residual)
        if (r) return std::nullopt;
    RotationAssignment out;
    out.gamma.assign(code.n, 0);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!combo[i]) continue;
        for (std::size_t q2 = 0; q2 < code.n; ++q2)
            out.gamma[q2] =
                static_cast<std::uint8_t>(out.gamma[q2] + combo[i] * gens[i].rotation.gamma[q2]) &
                mask;
    }
    return out;
}

bool verify_diagonal_exact(const CssCode& code_in, const RotationAssignment& gamma,
                           unsigned level, const PhasePoly& expected) {
    CssCode code = code_in;
    ensure_logicals(code);
    std::uint8_t mask = static_cast<std::uint8_t>((1u << level) - 1);
    std::uint64_t classes = std::uint64_t{1} << code.k;
    std::uint64_t stabs = std::uint64_t{1} << code.rx();
    for (std::uint64_t x = 0; x < classes; ++x) {
        BitVec base(code.n);
        for (std::size_t i = 0; i < code.k; ++i)
            if ((x >> i) & 1) base ^= code.logicals->lx.row(i);
        std::uint8_t want = expected.eval(static_cast<std::uint32_t>(x));
        BitVec cur = base;
        for (std::uint64_t y = 0; y < stabs; ++y) {
            if (y) cur ^= code.hx.row(std::countr_zero(y));
            if ((wt_gamma(gamma.gamma, cur, level) & mask) != want) return false;
        }
    }
    return true;
}

bool verify_diagonal_statevector(const CssCode& code_in, const RotationAssignment& gamma,
                                 unsigned level, const PhasePoly& expected) {
    CssCode code = code_in;
    ensure_logicals(code);
    if (code.n > 20) throw std::invalid_argument("statevector check limited to n <= 20");
    std::size_t dim = std::size_t{1} << code.n;
    const double pi = 3.14159265358979323846;
    double unit = 2.0 * pi / static_cast<double>(1u << level);
    std::uint64_t stabs = std::uint64_t{1} << code.rx();
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << code.k); ++x) {
        std::vector<std::complex<double>> state(dim, 0.0);
        BitVec base(code.n);
        for (std::size_t i = 0; i < code.k; ++i)
            if ((x >> i) & 1) base ^= code.logicals->lx.row(i);
        double amp = 1.0 / std::sqrt(static_cast<double>(stabs));
        BitVec cur = base;
        for (std::uint64_t y = 0; y < stabs; ++y) {
            if (y) cur ^= code.hx.row(std::countr_zero(y));
            std::size_t idx = 0;
            for (std::size_t q = 0; q < code.n; ++q)
                if (cur.get(q)) idx |= std::size_t{1} << q;
            state[idx] = amp;
        }
        // Apply the diagonal rotations.
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if (state[idx] == 0.0) continue;
            unsigned phase = 0;
            for (std::size_t q = 0; q < code.n; ++q)
                if ((idx >> q) & 1) phase += gamma.gamma[q];
            state[idx] *= std::exp(std::complex<double>(0, unit * (phase % (1u << level))));
        }
        // Compare against the expected global phase on this logical state.
        double want = unit * expected.eval(static_cast<std::uint32_t>(x));
        std::complex<double> factor = std::exp(std::complex<double>(0, want));
        cur = base;
        for (std::uint64_t y = 0; y < stabs; ++y) {
            if (y) cur ^= code.hx.row(std::countr_zero(y));
            std::size_t idx = 0;
            for (std::size_t q = 0; q < code.n; ++q)
                if (cur.get(q)) idx |= std::size_t{1} << q;
            if (std::abs(state[idx] - amp * factor) > 1e-9) return false;
        }
    }
    return true;
}

EmbeddedCode embedded_code(const CssCode& code_in) {
    CssCode code = code_in;
    ensure_logicals(code);
    std::size_t n = code.n;
    EmbeddedCode out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.pairs.push_back({i, j});
    std::size_t np = n + out.pairs.size();
    auto extend_x = [&](const BitVec& v) {
        BitVec w(np);
        for (std::size_t q = 0; q < n; ++q) w.set(q, v.get(q));
        for (std::size_t a = 0; a < out.pairs.size(); ++a)
            w.set(n + a, v.get(out.pairs[a].first) ^ v.get(out.pairs[a].second));
        return w;
    };
    auto extend_z = [&](const BitVec& v) {
        BitVec w(np);
        for (std::size_t q = 0; q < n; ++q) w.set(q, v.get(q));
        return w;
    };
    BitMatrix hx(0, np), hz(0, np);
    for (std::size_t i = 0; i < code.rx(); ++i) hx.append_row(extend_x(code.hx.row(i)));
    for (std::size_t i = 0; i < code.rz(); ++i) hz.append_row(extend_z(code.hz.row(i)));
    for (std::size_t a = 0; a < out.pairs.size(); ++a) {
        BitVec w(np);
        w.set(n + a, true);
        w.set(out.pairs[a].first, true);
        w.set(out.pairs[a].second, true);
        hz.append_row(std::move(w));
    }
    out.code = make_css(hx, hz, code.name + "-embedded");
    BitMatrix lx(0, np), lz(0, np);
    for (std::size_t i = 0; i < code.k; ++i) {
        lx.append_row(extend_x(code.logicals->lx.row(i)));
        lz.append_row(extend_z(code.logicals->lz.row(i)));
    }
    out.code.logicals = LogicalBasisCss{std::move(lx), std::move(lz)};
    std::string why;
    if (!validate_css(out.code, &why)) throw std::logic_error("embedded code invalid: " + why);
    return out;
}

namespace {

// Two-bit accumulator tracking a weighted sum mod 4.
struct Mod4Acc {
    int lo, hi;
};

Mod4Acc acc_add(CnfFormula& f, Mod4Acc acc, int lo, int hi) {
    int carry = f.and_lit(acc.lo, lo);
    int new_lo = f.xor_lit(std::vector<int>{acc.lo, lo});
    int new_hi = f.xor_lit(std::vector<int>{acc.hi, hi, carry});
    return {new_lo, new_hi};
}

}  // namespace

std::optional<FoldGate> find_fold_gate(const CssCode& code_in, const SolverHandle& solver,
                                       FoldKind kind, std::size_t a, std::size_t b) {
    CssCode code = code_in;
    ensure_logicals(code);
    EmbeddedCode emb = embedded_code(code);
    std::size_t n = code.n, k = code.k;
    std::size_t np = emb.code.n;

    // Rows of G = [Lx; Hx] for the embedded code.
    std::vector<BitVec> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(emb.code.logicals->lx.row(i));
    for (std::size_t i = 0; i < emb.code.rx(); ++i) g.push_back(emb.code.hx.row(i));
    std::size_t m = g.size();

    CnfFormula f;
    std::vector<Mod4Acc> gamma(np);
    for (auto& gm : gamma) gm = {f.new_var(), f.new_var()};

    // Kernel conditions: rows g^j (j stabilizer) and 2 (g^i ^ g^j) not both logical.
    auto weighted_zero = [&](const BitVec& support, bool doubled) {
        Mod4Acc acc{f.false_lit(), f.false_lit()};
        for (std::size_t q = 0; q < np; ++q) {
            if (!support.get(q)) continue;
            if (doubled) acc = acc_add(f, acc, f.false_lit(), gamma[q].lo);
            else acc = acc_add(f, acc, gamma[q].lo, gamma[q].hi);
        }
        f.add_clause({-acc.lo});
        f.add_clause({-acc.hi});
    };
    for (std::size_t j = k; j < m; ++j) weighted_zero(g[j], false);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (i < k && j < k) continue;
            weighted_zero(g[i] & g[j], true);
        }

    // Target: S-type linear coefficients on logicals a, b (odd), others even;
    // cross coefficient 2 x_a x_b exactly for the CZ kind, 0 otherwise.
    for (std::size_t i = 0; i < k; ++i) {
        Mod4Acc acc{f.false_lit(), f.false_lit()};
        for (std::size_t q = 0; q < np; ++q)
            if (g[i].get(q)) acc = acc_add(f, acc, gamma[q].lo, gamma[q].hi);
        bool odd = kind == FoldKind::SS && (i == a || i == b);
        f.add_clause({odd ? acc.lo : -acc.lo});
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            BitVec wedge = g[i] & g[j];
            std::vector<int> bits;
            for (std::size_t q = 0; q < np; ++q)
                if (wedge.get(q)) bits.push_back(gamma[q].lo);
            bool want = kind == FoldKind::CZ && i == a && j == b;
            f.xor_clause(bits, want);
        }

    // Depth-one matching: per data qubit, at most one odd ancilla.
    for (std::size_t q = 0; q < n; ++q) {
        std::vector<int> odd;
        for (std::size_t t = 0; t < emb.pairs.size(); ++t)
            if (emb.pairs[t].first == q || emb.pairs[t].second == q)
                odd.push_back(gamma[n + t].lo);
        f.at_most_one(odd);
    }

    SolveResult res = solve(f, solver);
    if (!res.sat()) return std::nullopt;

    FoldGate out;
    out.kind = kind;
    out.a = a;
    out.b = b;
    out.circuit.n = n;
    out.circuit.tau = perm_identity(n);
    out.circuit.s_power.assign(n, 0);
    auto val = [&](Mod4Acc gm) {
        return (f.lit_value(res.model, gm.lo) ? 1 : 0) + (f.lit_value(res.model, gm.hi) ? 2 : 0);
    };
    for (std::size_t q = 0; q < n; ++q) out.circuit.s_power[q] = val(gamma[q]);
    for (std::size_t t = 0; t < emb.pairs.size(); ++t) {
        int v = val(gamma[n + t]);
        if (!v) continue;
        auto [i, j] = emb.pairs[t];
        if (v & 1) {
            out.circuit.cz_pairs.push_back({i, j});
            out.circuit.tau[i] = j;
            out.circuit.tau[j] = i;
        }
        // x_i ^ x_j = x_i + x_j + 2 x_i x_j: fold the single-qubit part back.
        out.circuit.s_power[i] = (out.circuit.s_power[i] + v) % 4;
        out.circuit.s_power[j] = (out.circuit.s_power[j] + v) % 4;
    }
    BitMatrix target =
        kind == FoldKind::SS ? mul(f_s(k, a), f_s(k, b)) : f_cz(k, a, b);
    if (!verify_claim(code, out.circuit.to_circuit(), target, /*up_to_pauli=*/true))
        throw std::logic_error("fold gate failed tableau verification");
    return out;
}

std::vector<FoldGate> fold_gates(const CssCode& code, const SolverHandle& solver) {
    std::vector<FoldGate> out;
    CssCode c = code;
    ensure_logicals(c);
    for (std::size_t a = 0; a < c.k; ++a)
        for (std::size_t b = a + 1; b < c.k; ++b) {
            if (auto g = find_fold_gate(c, solver, FoldKind::SS, a, b)) out.push_back(std::move(*g));
            if (auto g = find_fold_gate(c, solver, FoldKind::CZ, a, b)) out.push_back(std::move(*g));
        }
    return out;
}

}  // namespace phantom
