#include "phantom/construct.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace phantom {

namespace {

std::size_t ilog2_exact(std::size_t n) {
    std::size_t m = static_cast<std::size_t>(std::countr_zero(n));
    if (n != (std::size_t{1} << m)) throw std::invalid_argument("block length is not a power of two");
    return m;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            if (!a.get(i1, j1)) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    if (b.get(i2, j2)) out.set(i1 * b.rows() + i2, j1 * b.cols() + j2, true);
        }
    return out;
}

void attach_and_check(CssCode& code, BitMatrix lx, BitMatrix lz) {
    code.logicals = LogicalBasisCss{std::move(lx), std::move(lz)};
    std::string why;
    if (!validate_css(code, &why)) throw std::logic_error("constructed logicals invalid: " + why);
}

}  // namespace

CssCode qrm(std::size_t m, std::size_t l) {
    if (l < 1 || l > m) throw std::invalid_argument("qrm needs 1 <= l <= m");
    BitMatrix hx = rm_generator(l - 1, m);
    BitMatrix hz = m >= l + 1 ? rm_generator(m - l - 1, m) : BitMatrix(0, std::size_t{1} << m);
    CssCode code = make_css(hx, hz, "qrm(" + std::to_string(m) + "," + std::to_string(l) + ")");
    BitMatrix lx(0, code.n), lz(0, code.n);
    for (auto mono : monomials_of_degree(m, l)) {
        lx.append_row(monomial_eval(mono, m));
        lz.append_row(negated_complement_eval(mono, m));
    }
    attach_and_check(code, std::move(lx), std::move(lz));
    return code;
}

std::vector<std::vector<std::uint32_t>> qrm_orbits(std::size_t m, std::size_t l) {
    auto monos = monomials_of_degree(m, l);
    std::map<std::uint32_t, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    std::vector<std::size_t> parent(monos.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // Closure under suffix transvections x_a -> x_a + x_b, modulo lower degree.
    std::size_t suffix_lo = l - 1;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        std::uint32_t s = monos[i];
        for (std::size_t a = suffix_lo; a < m; ++a) {
            if (!((s >> a) & 1)) continue;
            for (std::size_t b = suffix_lo; b < m; ++b) {
                if (a == b || ((s >> b) & 1)) continue;
                std::uint32_t t = (s & ~(std::uint32_t{1} << a)) | (std::uint32_t{1} << b);
                std::size_t ra = find(i), rb = find(index.at(t));
                if (ra != rb) parent[ra] = rb;
            }
        }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_prefix_root;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        std::uint32_t prefix_mask = monos[i] & ((std::uint32_t{1} << suffix_lo) - 1);
        (void)find(i);
        by_prefix_root[prefix_mask].push_back(monos[i]);
    }
    // Sanity: the union-find classes coincide with the prefix classes.
    for (std::size_t i = 0; i < monos.size(); ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) {
            bool same_prefix = (monos[i] & ((std::uint32_t{1} << suffix_lo) - 1)) ==
                               (monos[j] & ((std::uint32_t{1} << suffix_lo) - 1));
            if ((find(i) == find(j)) != same_prefix)
                throw std::logic_error("orbit closure disagrees with prefix classes");
        }
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [prefix, v] : by_prefix_root) out.push_back(std::move(v));
    return out;
}

namespace {

CssCode phantom_qrm_impl(std::size_t m, std::size_t l,
                         const std::vector<OrbitSector>* assign) {
    if (l < 1 || 2 * l > m)
        throw std::invalid_argument("phantom qRM needs 1 <= l <= m/2");
    std::size_t n = std::size_t{1} << m;
    std::uint32_t prefix = (std::uint32_t{1} << (l - 1)) - 1;

    std::vector<std::uint32_t> retained;
    for (std::size_t j = l - 1; j < m; ++j) retained.push_back(prefix | (std::uint32_t{1} << j));

    BitMatrix hx = rm_generator(l - 1, m);
    BitMatrix hz = m >= l + 1 ? rm_generator(m - l - 1, m) : BitMatrix(0, n);

    auto orbits = qrm_orbits(m, l);
    std::size_t ai = 0;
    for (const auto& orbit : orbits) {
        bool is_retained = (orbit[0] & prefix) == prefix;
        if (is_retained) continue;
        OrbitSector sector = OrbitSector::Z;
        if (assign) {
            if (ai >= assign->size()) throw std::invalid_argument("orbit assignment too short");
            sector = (*assign)[ai++];
        }
        for (auto mono : orbit) {
            if (sector == OrbitSector::Z) hz.append_row(negated_complement_eval(mono, m));
            else hx.append_row(monomial_eval(mono, m));
        }
    }
    if (assign && ai != assign->size())
        throw std::invalid_argument("orbit assignment too long");

    CssCode code = make_css(hx, hz,
                            "phantom-qrm(" + std::to_string(m) + "," + std::to_string(l) + ")");
    BitMatrix lx(0, n), lz(0, n);
    for (auto mono : retained) {
        lx.append_row(monomial_eval(mono, m));
        lz.append_row(negated_complement_eval(mono, m));
    }
    attach_and_check(code, std::move(lx), std::move(lz));
    return code;
}

}  // namespace

CssCode phantom_qrm(std::size_t m, std::size_t l) { return phantom_qrm_impl(m, l, nullptr); }

CssCode phantom_qrm_balanced(std::size_t m, std::size_t l,
                             const std::vector<OrbitSector>& assign) {
    return phantom_qrm_impl(m, l, &assign);
}

CssCode phantom_qrm_balanced_64_4_8() {
    // Orbits ordered by prefix mask: {} -> X, {x1} -> Z, {x2} -> X.
    CssCode code = phantom_qrm_balanced(6, 3, {OrbitSector::X, OrbitSector::Z, OrbitSector::X});
    code.name = "phantom-qrm-balanced(64,4,8)";
    return code;
}

CssCode hypercube(std::size_t d) {
    if (d < 2) throw std::invalid_argument("hypercube needs D >= 2");
    CssCode code = qrm(d, 1);
    code.name = "hypercube(" + std::to_string(d) + ")";
    return code;
}

CssCode puncture_css(const CssCode& code, std::size_t qubit) {
    if (qubit >= code.n) throw std::invalid_argument("puncture qubit out of range");
    auto drop_col = [&](const BitMatrix& m) {
        BitMatrix out(m.rows(), code.n - 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0, c = 0; j < code.n; ++j) {
                if (j == qubit) continue;
                out.set(i, c++, m.get(i, j));
            }
        return out;
    };
    // X sector truncated; Z sector shortened to rows vanishing at the qubit.
    BitMatrix hz = code.hz;
    std::size_t pivot = hz.rows();
    for (std::size_t i = 0; i < hz.rows(); ++i)
        if (hz.get(i, qubit)) { pivot = i; break; }
    BitMatrix hz_short(0, code.n);
    for (std::size_t i = 0; i < hz.rows(); ++i) {
        if (i == pivot) continue;
        BitVec row = hz.row(i);
        if (row.get(qubit)) row ^= hz.row(pivot);
        hz_short.append_row(std::move(row));
    }
    return make_css(drop_col(code.hx), drop_col(hz_short), code.name + "-punctured");
}

CssCode punctured_hypercube(std::size_t d) {
    CssCode code = puncture_css(hypercube(d), 0);
    code.name = "punctured-hypercube(" + std::to_string(d) + ")";
    ensure_logicals(code);
    return code;
}

CssCode glued_422(std::size_t m, bool punctured) {
    if (m < 1) throw std::invalid_argument("glued_422 needs m >= 1");
    std::size_t n = 4 * m;
    BitMatrix hx(0, n), hz(0, n);
    auto row_of = [&](std::initializer_list<std::size_t> qs) {
        BitVec v(n);
        for (auto q : qs) v.set(q, true);
        return v;
    };
    for (std::size_t i = 0; i < m; ++i) {
        hx.append_row(row_of({4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3}));
        hz.append_row(row_of({4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3}));
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        hx.append_row(row_of({4 * i, 4 * i + 1, 4 * i + 4, 4 * i + 5}));
        hx.append_row(row_of({4 * i + 1, 4 * i + 2, 4 * i + 5, 4 * i + 6}));
    }
    CssCode code = make_css(hx, hz, "glued-422(" + std::to_string(m) + ")");
    BitVec z1(n), z2(n);
    for (std::size_t i = 0; i < m; ++i) {
        z1.set(4 * i + 1, true);
        z1.set(4 * i + 2, true);
        z2.set(4 * i, true);
        z2.set(4 * i + 1, true);
    }
    BitMatrix lx(0, n), lz(0, n);
    lx.append_row(row_of({0, 1}));
    lx.append_row(row_of({1, 2}));
    lz.append_row(z1);
    lz.append_row(z2);
    attach_and_check(code, std::move(lx), std::move(lz));
    if (punctured) {
        // The glued family keeps d_x = 2 and drops d_z by one: truncate the Z
        // sector and shorten X, i.e. puncture the Hadamard dual.
        CssCode p = hadamard_dual(puncture_css(hadamard_dual(code), 0));
        p.name = "glued-422(" + std::to_string(m) + ")-punctured";
        ensure_logicals(p);
        return p;
    }
    return code;
}

CssCode hgp_phantom(std::size_t k) {
    if (k < 2) throw std::invalid_argument("hgp_phantom needs k >= 2");
    std::size_t n1 = (std::size_t{1} << k) - 1;
    std::size_t n2 = std::size_t{1} << (k - 1);
    std::size_t m2 = n2 - 1;
    // H1: all weight-3 codewords of the dual (triples {u, v, u^v}).
    std::vector<std::array<std::uint32_t, 3>> triples;
    for (std::uint32_t u = 1; u <= n1; ++u)
        for (std::uint32_t v = u + 1; v <= n1; ++v) {
            std::uint32_t w = u ^ v;
            if (w > v) triples.push_back({u, v, w});
        }
    std::size_t m1 = triples.size();
    BitMatrix h1(m1, n1);
    for (std::size_t r = 0; r < m1; ++r)
        for (auto u : triples[r]) h1.set(r, u - 1, true);
    BitMatrix h2(m2, n2);
    for (std::size_t i = 0; i < m2; ++i) {
        h2.set(i, i, true);
        h2.set(i, i + 1, true);
    }
    BitMatrix hx = kron(h1, BitMatrix::identity(n2)).hstack(kron(BitMatrix::identity(m1), h2.transpose()));
    BitMatrix hz = kron(BitMatrix::identity(n1), h2).hstack(kron(h1.transpose(), BitMatrix::identity(m2)));
    CssCode code = make_css(hx, hz, "hgp(" + std::to_string(k) + ")");

    std::size_t n = code.n;
    BitMatrix lx(0, n), lz(0, n);
    BitVec g2(n2), eps(n2);
    for (std::size_t c = 0; c < n2; ++c) g2.set(c, true);
    eps.set(0, true);
    for (std::size_t i = 0; i < k; ++i) {
        std::uint32_t u = std::uint32_t{1} << i;  // unit columns at the basis vectors
        BitVec xrow(n), zrow(n);
        for (std::size_t c = 0; c < n2; ++c) xrow.set((u - 1) * n2 + c, true);
        for (std::uint32_t col = 1; col <= n1; ++col)
            if ((col >> i) & 1) zrow.set((col - 1) * n2 + 0, true);
        lx.append_row(std::move(xrow));
        lz.append_row(std::move(zrow));
    }
    (void)eps;
    (void)g2;
    attach_and_check(code, std::move(lx), std::move(lz));
    return code;
}

CssCode concat_simple(const CssCode& outer_in, const CssCode& inner_in) {
    CssCode outer = outer_in, inner = inner_in;
    if (inner.k != 1) throw std::invalid_argument("concat_simple needs a k = 1 inner code");
    ensure_logicals(outer);
    ensure_logicals(inner);
    std::size_t ni = inner.n, n = outer.n * ni;
    auto expand = [&](const BitMatrix& rows, const BitVec& inner_logical) {
        BitMatrix out(0, n);
        for (std::size_t i = 0; i < rows.rows(); ++i) {
            BitVec v(n);
            for (std::size_t j = 0; j < outer.n; ++j) {
                if (!rows.get(i, j)) continue;
                for (std::size_t c = 0; c < ni; ++c)
                    if (inner_logical.get(c)) v.set(j * ni + c, true);
            }
            out.append_row(std::move(v));
        }
        return out;
    };
    BitMatrix hx = expand(outer.hx, inner.logicals->lx.row(0));
    BitMatrix hz = expand(outer.hz, inner.logicals->lz.row(0));
    for (std::size_t j = 0; j < outer.n; ++j) {
        for (std::size_t i = 0; i < inner.rx(); ++i) {
            BitVec v(n);
            for (std::size_t c = 0; c < ni; ++c)
                if (inner.hx.get(i, c)) v.set(j * ni + c, true);
            hx.append_row(std::move(v));
        }
        for (std::size_t i = 0; i < inner.rz(); ++i) {
            BitVec v(n);
            for (std::size_t c = 0; c < ni; ++c)
                if (inner.hz.get(i, c)) v.set(j * ni + c, true);
            hz.append_row(std::move(v));
        }
    }
    CssCode code = make_css(hx, hz, outer.name + "*" + inner.name);
    attach_and_check(code, expand(outer.logicals->lx, inner.logicals->lx.row(0)),
                     expand(outer.logicals->lz, inner.logicals->lz.row(0)));
    return code;
}

CssCode connect_dual(const CssCode& primal_in) {
    CssCode primal = primal_in;
    ensure_logicals(primal);
    std::size_t n = primal.n, k = primal.k;
    auto left = [&](const BitVec& v) { return v.concat(BitVec(n)); };
    auto both = [&](const BitVec& v) { return v.concat(v); };
    auto right = [&](const BitVec& v) { return BitVec(n).concat(v); };
    BitMatrix hx(0, 2 * n), hz(0, 2 * n);
    for (std::size_t i = 0; i < primal.rx(); ++i) hx.append_row(both(primal.hx.row(i)));
    for (std::size_t i = 0; i < primal.rz(); ++i) hx.append_row(right(primal.hz.row(i)));
    for (std::size_t i = 0; i < primal.rz(); ++i) hz.append_row(left(primal.hz.row(i)));
    for (std::size_t i = 0; i < primal.rx(); ++i) hz.append_row(both(primal.hx.row(i)));
    CssCode code = make_css(hx, hz, primal.name + "-connected-dual");

    BitMatrix lx(0, 2 * n), lz(0, 2 * n);
    for (std::size_t i = 0; i < k; ++i) lx.append_row(both(primal.logicals->lx.row(i)));
    for (std::size_t i = 0; i < k; ++i) lx.append_row(right(primal.logicals->lz.row(i)));
    for (std::size_t i = 0; i < k; ++i) lz.append_row(left(primal.logicals->lz.row(i)));
    for (std::size_t i = 0; i < k; ++i) lz.append_row(both(primal.logicals->lx.row(i)));
    attach_and_check(code, std::move(lx), std::move(lz));
    return code;
}

std::size_t connect_dual_distance_formula(const CssCode& primal_in) {
    CssCode primal = primal_in;
    ensure_logicals(primal);
    std::size_t n = primal.n;
    auto dist = distance_css(primal);
    std::size_t best = dist.dz;
    // Walk the nontrivial X-logical representatives and the Z-orthogonal space.
    BitMatrix zdual = kernel(primal.hx);  // Z-type stabilizers + logicals
    std::uint64_t la_end = std::uint64_t{1} << primal.k;
    for (std::uint64_t la = 1; la < la_end; ++la) {
        BitVec base(n);
        for (std::size_t i = 0; i < primal.k; ++i)
            if ((la >> i) & 1) base ^= primal.logicals->lx.row(i);
        BitVec lx = base;
        std::uint64_t s_end = std::uint64_t{1} << primal.rx();
        for (std::uint64_t g = 0; g < s_end; ++g) {
            if (g) lx ^= primal.hx.row(std::countr_zero(g));
            BitVec gz(n);
            std::uint64_t z_end = std::uint64_t{1} << zdual.rows();
            for (std::uint64_t gi = 0; gi < z_end; ++gi) {
                if (gi) gz ^= zdual.row(std::countr_zero(gi));
                std::size_t w = 2 * lx.weight() + gz.weight() - 2 * (lx & gz).weight();
                best = std::min(best, w);
            }
        }
    }
    return best;
}

CssCode double_noncss(const StabilizerCode& code_in) {
    StabilizerCode code = code_in;
    ensure_logicals(code);
    std::size_t n = code.n, k = code.k;
    BitMatrix hx(0, 2 * n), hz(0, 2 * n);
    for (std::size_t i = 0; i < code.h.rows(); ++i) {
        BitVec a = code.h.row(i).slice(0, n), b = code.h.row(i).slice(n, 2 * n);
        hx.append_row(a.concat(b));
        hz.append_row(b.concat(a));
    }
    CssCode out = make_css(hx, hz, "doubled");
    BitMatrix lx(0, 2 * n), lz(0, 2 * n);
    for (std::size_t i = 0; i < k; ++i) {
        BitVec u = code.q->row(i).slice(0, n), v = code.q->row(i).slice(n, 2 * n);
        lx.append_row(u.concat(v));
    }
    for (std::size_t i = 0; i < k; ++i) {
        BitVec s = code.q->row(k + i).slice(0, n), t = code.q->row(k + i).slice(n, 2 * n);
        lx.append_row(s.concat(t));
    }
    for (std::size_t i = 0; i < k; ++i) {
        BitVec s = code.q->row(k + i).slice(0, n), t = code.q->row(k + i).slice(n, 2 * n);
        lz.append_row(t.concat(s));
    }
    for (std::size_t i = 0; i < k; ++i) {
        BitVec u = code.q->row(i).slice(0, n), v = code.q->row(i).slice(n, 2 * n);
        lz.append_row(v.concat(u));
    }
    attach_and_check(out, std::move(lx), std::move(lz));
    return out;
}

CssCode concat_422(const CssCode& paired) {
    if (paired.n % 2) throw std::invalid_argument("concat_422 needs an even qubit count");
    std::size_t p = paired.n / 2, n = 4 * p;
    // Pair (a1, a2) maps to a1 * XXII + a2 * XIXI in the X sector and
    // b1 * IZIZ + b2 * IIZZ in the Z sector.
    auto expand = [&](const BitMatrix& rows, bool xsector) {
        BitMatrix out(0, n);
        for (std::size_t i = 0; i < rows.rows(); ++i) {
            BitVec v(n);
            for (std::size_t j = 0; j < p; ++j) {
                bool a1 = rows.get(i, 2 * j), a2 = rows.get(i, 2 * j + 1);
                std::size_t base = 4 * j;
                if (xsector) {
                    if (a1) { v.flip(base); v.flip(base + 1); }
                    if (a2) { v.flip(base); v.flip(base + 2); }
                } else {
                    if (a1) { v.flip(base + 1); v.flip(base + 3); }
                    if (a2) { v.flip(base + 2); v.flip(base + 3); }
                }
            }
            out.append_row(std::move(v));
        }
        return out;
    };
    BitMatrix hx = expand(paired.hx, true);
    BitMatrix hz = expand(paired.hz, false);
    for (std::size_t j = 0; j < p; ++j) {
        BitVec x(n), z(n);
        for (std::size_t c = 0; c < 4; ++c) {
            x.set(4 * j + c, true);
            z.set(4 * j + c, true);
        }
        hx.append_row(std::move(x));
        hz.append_row(std::move(z));
    }
    return make_css(hx, hz, paired.name + "+422");
}

CssCode bc_code(std::size_t p) {
    CssCode code = concat_422(binarize(qr_gf4(p)));
    code.name = "bc(" + std::to_string(p) + ")";
    return code;
}

Circuit FoldCircuit::to_circuit() const {
    Circuit c(n);
    for (std::size_t q = 0; q < n; ++q) {
        switch (((s_power[q] % 4) + 4) % 4) {
            case 1: c.add(Gate::s(q)); break;
            case 2: c.add(Gate::z(q)); break;
            case 3: c.add(Gate::sdg(q)); break;
            default: break;
        }
    }
    for (auto [a, b] : cz_pairs) c.add(Gate::cz(a, b));
    return c;
}

FoldCircuit fold_involution(const CssCode& qrm_code, FoldKind kind) {
    std::size_t n = qrm_code.n, k = qrm_code.k;
    std::size_t m = ilog2_exact(n);
    if (k < 2 || k > m) throw std::invalid_argument("not a phantom qRM code shape");
    std::size_t l = m - k + 1;
    if (2 * l > m) throw std::invalid_argument("fold needs l <= m/2");

    // Coordinate involution on the x_{2l+1} = ... = x_m = 0 subcube (0-based
    // bits >= 2l are zero there).
    std::size_t span = 2 * l;
    std::uint32_t high_mask = ~((std::uint32_t{1} << span) - 1) & ((std::uint32_t{1} << m) - 1);
    FoldCircuit fc;
    fc.n = n;
    fc.tau = perm_identity(n);
    fc.s_power.assign(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (v & high_mask) continue;  // outside the addressed subcube
        std::uint32_t w = 0;
        for (std::size_t j = 0; j < span; ++j) {
            bool bit;
            if (kind == FoldKind::CZ && (j == l - 1 || j == l)) bit = !((v >> j) & 1);
            else bit = !((v >> (span - 1 - j)) & 1);
            if (bit) w |= std::uint32_t{1} << j;
        }
        fc.tau[v] = w;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (fc.tau[fc.tau[v]] != v) throw std::logic_error("fold map is not an involution");
    for (std::size_t v = 0; v < n; ++v) {
        if (v & high_mask) continue;
        if (fc.tau[v] == v) fc.s_power[v] = 1;
        else if (v < fc.tau[v]) fc.cz_pairs.push_back({v, fc.tau[v]});
    }

    BitMatrix target = kind == FoldKind::SS ? mul(f_s(k, 0), f_s(k, 1)) : f_cz(k, 0, 1);
    for (int power : {1, 3}) {
        for (auto& s : fc.s_power)
            if (s) s = power;
        if (verify_claim(qrm_code, fc.to_circuit(), target, /*up_to_pauli=*/true)) return fc;
    }
    throw std::logic_error("fold circuit failed tableau verification");
}

std::optional<PhantomWitness> witness_from_generators(const CssCode& code_in,
                                                      const std::vector<Perm>& gens) {
    CssCode code = code_in;
    ensure_logicals(code);
    std::size_t k = code.k;
    std::vector<BitMatrix> actions;
    for (const auto& g : gens) {
        auto a = perm_logical_action(code, g);
        if (!a) return std::nullopt;
        actions.push_back(std::move(*a));
    }
    auto targets = minimal_gateset(k);
    std::vector<std::uint64_t> target_keys;
    for (auto& t : targets) target_keys.push_back(matrix_key(t.submatrix(0, k, 0, k)));

    std::map<std::uint64_t, Perm> reach;
    std::vector<std::uint64_t> queue;
    reach[matrix_key(BitMatrix::identity(k))] = perm_identity(code.n);
    queue.push_back(matrix_key(BitMatrix::identity(k)));
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint64_t cur = queue[qi];
        BitMatrix a = matrix_from_key(cur, k);
        Perm pa = reach[cur];
        for (std::size_t g = 0; g < gens.size(); ++g) {
            BitMatrix next = mul(a, actions[g]);
            std::uint64_t key = matrix_key(next);
            if (reach.count(key)) continue;
            reach[key] = perm_compose(pa, gens[g]);
            queue.push_back(key);
        }
    }
    PhantomWitness w;
    w.n = code.n;
    w.k = k;
    w.basis = *code.logicals;
    for (auto tk : target_keys) {
        auto it = reach.find(tk);
        if (it == reach.end()) return std::nullopt;
        w.minimal.push_back(it->second);
    }
    complete_witness(w);
    return w;
}

PhantomWitness qrm_phantom_witness(const CssCode& code) {
    std::size_t n = code.n, k = code.k;
    std::size_t m = ilog2_exact(n);
    std::size_t l = m - k + 1;
    std::size_t suffix_lo = l - 1;
    auto transvection = [&](std::size_t va, std::size_t vb) {
        BitMatrix a = BitMatrix::identity(m);
        a.set(va, vb, true);
        return affine_perm(a, BitVec(m));
    };
    auto var_swap = [&](std::size_t va, std::size_t vb) {
        BitMatrix a = BitMatrix::identity(m);
        a.set(va, va, false);
        a.set(vb, vb, false);
        a.set(va, vb, true);
        a.set(vb, va, true);
        return affine_perm(a, BitVec(m));
    };
    std::vector<Perm> gens;
    gens.push_back(transvection(suffix_lo, suffix_lo + 1));
    for (std::size_t i = 0; i + 1 < k; ++i) gens.push_back(var_swap(suffix_lo + i, suffix_lo + i + 1));
    auto w = witness_from_generators(code, gens);
    if (!w) throw std::logic_error("qRM affine permutations do not generate the witness");
    return *w;
}

PhantomWitness hgp_phantom_witness(std::size_t k, const CssCode& code) {
    std::size_t n1 = (std::size_t{1} << k) - 1;
    std::size_t n2 = std::size_t{1} << (k - 1);
    std::size_t m2 = n2 - 1;
    std::vector<std::array<std::uint32_t, 3>> triples;
    for (std::uint32_t u = 1; u <= n1; ++u)
        for (std::uint32_t v = u + 1; v <= n1; ++v) {
            std::uint32_t w = u ^ v;
            if (w > v) triples.push_back({u, v, w});
        }
    std::map<std::array<std::uint32_t, 3>, std::size_t> triple_index;
    for (std::size_t i = 0; i < triples.size(); ++i) triple_index[triples[i]] = i;

    auto mask_mul = [&](const BitMatrix& mtx, std::uint32_t u) {
        std::uint32_t out = 0;
        for (std::size_t i = 0; i < k; ++i) {
            bool bit = false;
            for (std::size_t j = 0; j < k; ++j)
                if (mtx.get(i, j) && ((u >> j) & 1)) bit = !bit;
            if (bit) out |= std::uint32_t{1} << i;
        }
        return out;
    };
    auto rho = [&](const BitMatrix& v) {
        BitMatrix vinv = *inverse(v);
        Perm p(code.n);
        for (std::uint32_t u = 1; u <= n1; ++u) {
            std::uint32_t img = mask_mul(vinv, u);
            for (std::size_t c = 0; c < n2; ++c) p[(u - 1) * n2 + c] = (img - 1) * n2 + c;
        }
        for (std::size_t t = 0; t < triples.size(); ++t) {
            std::array<std::uint32_t, 3> img{mask_mul(vinv, triples[t][0]),
                                             mask_mul(vinv, triples[t][1]),
                                             mask_mul(vinv, triples[t][2])};
            std::sort(img.begin(), img.end());
            std::size_t ti = triple_index.at(img);
            for (std::size_t c = 0; c < m2; ++c)
                p[n1 * n2 + t * m2 + c] = n1 * n2 + ti * m2 + c;
        }
        return p;
    };
    std::vector<Perm> gens;
    for (const auto& target : minimal_gateset(k))
        gens.push_back(rho(target.submatrix(k, 2 * k, k, 2 * k)));
    auto w = witness_from_generators(code, gens);
    if (!w) throw std::logic_error("HGP automorphisms do not generate the witness");
    return *w;
}

PhantomWitness glued_422_witness(std::size_t m, const CssCode& code) {
    std::size_t n = 4 * m;
    Perm cnot12 = perm_identity(n), cnot21 = perm_identity(n);
    for (std::size_t i = 0; i < m; ++i) {
        std::swap(cnot12[4 * i + 1], cnot12[4 * i + 2]);
        std::swap(cnot21[4 * i], cnot21[4 * i + 1]);
    }
    auto w = witness_from_generators(code, {cnot12, cnot21});
    if (!w) throw std::logic_error("glued-422 swaps do not generate the witness");
    return *w;
}

PhantomWitness bc_witness(std::size_t p, const CssCode& code) {
    std::size_t n = 4 * p;
    // Per-block multiplication by omega and the Frobenius map composed with
    // the coordinate doubling j -> 2j mod p.
    CssCode block = make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    block.logicals = LogicalBasisCss{
        BitMatrix::from_strings({"1100", "1010"}),  // X^w, X^{w^2}
        BitMatrix::from_strings({"0101", "0011"}),  // Z^w, Z^{w^2}
    };
    PermActionGroup g = perm_action_group(block);
    BitMatrix a_omega = BitMatrix::from_strings({"01", "11"});  // X^w -> X^{w^2} -> X^1
    BitMatrix a_swap = BitMatrix::from_strings({"01", "10"});
    auto block_perm = [&](const BitMatrix& a) {
        auto it = g.actions.find(matrix_key(a));
        if (it == g.actions.end()) throw std::logic_error("[[4,2,2]] block action missing");
        return it->second;
    };
    Perm pw = block_perm(a_omega), ps = block_perm(a_swap);
    Perm g_omega(n), g_frob(n);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t c = 0; c < 4; ++c) {
            g_omega[4 * j + c] = 4 * j + pw[c];
            g_frob[4 * j + c] = 4 * ((2 * j) % p) + ps[c];
        }
    auto w = witness_from_generators(code, {g_omega, g_frob});
    if (!w) throw std::logic_error("B&C generators do not generate the witness");
    return *w;
}

PhantomWitness concat_simple_witness(const PhantomWitness& outer, std::size_t inner_n,
                                     const CssCode& code) {
    auto lift = [&](const Perm& p) {
        Perm out(code.n);
        for (std::size_t b = 0; b < p.size(); ++b)
            for (std::size_t i = 0; i < inner_n; ++i) out[b * inner_n + i] = p[b] * inner_n + i;
        return out;
    };
    std::vector<Perm> gens;
    for (const auto& p : outer.minimal) gens.push_back(lift(p));
    auto w = witness_from_generators(code, gens);
    if (!w) throw std::logic_error("lifted outer witness does not generate the gate set");
    return *w;
}

}  // namespace phantom
