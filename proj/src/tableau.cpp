#include "phantom/tableau.hpp"

#include <stdexcept>

namespace phantom {

Circuit& Circuit::add(Gate g) {
    switch (g.kind) {
        case GateKind::PERM:
            if (!is_perm(g.perm) || g.perm.size() != n)
                throw std::invalid_argument("PERM must be a bijection on [n]");
            break;
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            if (g.a >= n || g.b >= n || g.a == g.b)
                throw std::invalid_argument("two-qubit gate targets out of range");
            break;
        default:
            if (g.a >= n) throw std::invalid_argument("gate target out of range");
    }
    gates.push_back(std::move(g));
    return *this;
}

namespace {

void conj_h(PauliOp& p, std::size_t q) {
    bool x = p.x.get(q), z = p.z.get(q);
    if (x && z) p.phase = (p.phase + 2) % 4;
    p.x.set(q, z);
    p.z.set(q, x);
}

void conj_s(PauliOp& p, std::size_t q) {
    bool x = p.x.get(q), z = p.z.get(q);
    if (x) {
        p.phase = (p.phase + 1) % 4;
        p.z.set(q, !z);
    }
}

void conj_sdg(PauliOp& p, std::size_t q) {
    bool x = p.x.get(q), z = p.z.get(q);
    if (x) {
        p.phase = (p.phase + 3) % 4;
        p.z.set(q, !z);
    }
}

void conj_cnot(PauliOp& p, std::size_t c, std::size_t t) {
    // X_c -> X_c X_t, Z_t -> Z_c Z_t; phase-free in the i^p X^x Z^z convention.
    if (p.x.get(c)) p.x.flip(t);
    if (p.z.get(t)) p.z.flip(c);
}

void conj_swap(PauliOp& p, std::size_t a, std::size_t b) {
    bool xa = p.x.get(a), xb = p.x.get(b), za = p.z.get(a), zb = p.z.get(b);
    p.x.set(a, xb); p.x.set(b, xa);
    p.z.set(a, zb); p.z.set(b, za);
}

void conj_inplace(PauliOp& p, const Gate& g) {
    switch (g.kind) {
        case GateKind::H: conj_h(p, g.a); break;
        case GateKind::S: conj_s(p, g.a); break;
        case GateKind::Sdg: conj_sdg(p, g.a); break;
        case GateKind::X:
            if (p.z.get(g.a)) p.phase = (p.phase + 2) % 4;
            break;
        case GateKind::Z:
            if (p.x.get(g.a)) p.phase = (p.phase + 2) % 4;
            break;
        case GateKind::CNOT: conj_cnot(p, g.a, g.b); break;
        case GateKind::CZ:
            conj_h(p, g.b);
            conj_cnot(p, g.a, g.b);
            conj_h(p, g.b);
            break;
        case GateKind::SWAP: conj_swap(p, g.a, g.b); break;
        case GateKind::PERM: {
            p.x = apply_perm(p.x, g.perm);
            p.z = apply_perm(p.z, g.perm);
            break;
        }
    }
}

}  // namespace

PauliOp conjugate(const PauliOp& p, const Gate& g) {
    PauliOp out = p;
    conj_inplace(out, g);
    return out;
}

PauliOp conjugate(PauliOp p, const Circuit& c) {
    for (const auto& g : c.gates) conj_inplace(p, g);
    return p;
}

CliffordTableau CliffordTableau::identity(std::size_t n) {
    CliffordTableau t;
    t.n_ = n;
    t.rows_.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        PauliOp d(n);
        d.x.set(i, true);
        t.rows_.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < n; ++i) {
        PauliOp s(n);
        s.z.set(i, true);
        t.rows_.push_back(std::move(s));
    }
    return t;
}

void CliffordTableau::apply(const Gate& g) {
    for (auto& r : rows_) conj_inplace(r, g);
}

void CliffordTableau::apply(const Circuit& c) {
    for (const auto& g : c.gates) apply(g);
}

bool CliffordTableau::check_invariants() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            bool anti = !rows_[i].commutes(rows_[n_ + j]);
            if (anti != (i == j)) return false;
            if (!rows_[i].commutes(rows_[j]) && i != j) return false;
            if (!rows_[n_ + i].commutes(rows_[n_ + j]) && i != j) return false;
        }
    }
    return true;
}

namespace {

// Stabilizer generators followed by the 2k logical generators, as Paulis and
// as symplectic rows.
struct GeneratorSet {
    std::vector<PauliOp> gens;
    BitMatrix rows;
    std::size_t n_stab = 0;
};

GeneratorSet generator_set(const CssCode& code) {
    GeneratorSet g;
    g.rows = BitMatrix(0, 2 * code.n);
    for (std::size_t i = 0; i < code.rx(); ++i) {
        g.gens.emplace_back(code.hx.row(i), BitVec(code.n));
        g.rows.append_row(g.gens.back().to_symplectic());
    }
    for (std::size_t i = 0; i < code.rz(); ++i) {
        g.gens.emplace_back(BitVec(code.n), code.hz.row(i));
        g.rows.append_row(g.gens.back().to_symplectic());
    }
    g.n_stab = g.gens.size();
    for (std::size_t i = 0; i < code.k; ++i) {
        g.gens.emplace_back(code.logicals->lx.row(i), BitVec(code.n));
        g.rows.append_row(g.gens.back().to_symplectic());
    }
    for (std::size_t i = 0; i < code.k; ++i) {
        g.gens.emplace_back(BitVec(code.n), code.logicals->lz.row(i));
        g.rows.append_row(g.gens.back().to_symplectic());
    }
    return g;
}

// Product of the generators selected by coeff, in listed order.
PauliOp reconstruct(const GeneratorSet& g, const BitVec& coeff, std::size_t n) {
    PauliOp prod(n);
    for (std::size_t i = 0; i < g.gens.size(); ++i)
        if (coeff.get(i)) prod *= g.gens[i];
    return prod;
}

}  // namespace

LogicalAction logical_action(const CssCode& code_in, const Circuit& circuit) {
    CssCode code = code_in;
    ensure_logicals(code);
    if (circuit.n != code.n) throw std::invalid_argument("circuit width != n");
    GeneratorSet g = generator_set(code);

    LogicalAction out;
    out.codespace_preserved = true;
    out.f = BitMatrix(2 * code.k, 2 * code.k);
    out.sign_defects = BitVec(2 * code.k);
    out.pauli_frame = BitVec(2 * code.k);

    for (std::size_t i = 0; i < g.gens.size(); ++i) {
        PauliOp img = conjugate(g.gens[i], circuit);
        auto coeff = solve_row(g.rows, img.to_symplectic());
        if (!coeff) {
            out.codespace_preserved = false;
            out.failure = "image leaves the stabilizer+logical span";
            continue;
        }
        PauliOp prod = reconstruct(g, *coeff, code.n);
        int diff = ((img.phase - prod.phase) % 4 + 4) % 4;
        bool logical_part = false;
        std::size_t y_overlap = 0;  // logical pairs X_j Z_j present together
        for (std::size_t j = 0; j < 2 * code.k; ++j)
            if (coeff->get(g.n_stab + j)) logical_part = true;
        for (std::size_t j = 0; j < code.k; ++j)
            if (coeff->get(g.n_stab + j) && coeff->get(g.n_stab + code.k + j)) ++y_overlap;

        if (i < g.n_stab) {
            if (logical_part || diff != 0) {
                out.codespace_preserved = false;
                out.failure = logical_part ? "stabilizer image has a logical component"
                                           : "stabilizer image has sign != +1";
            }
        } else {
            // Canonical class representative carries i per Y-type logical pair.
            int rel = ((diff - static_cast<int>(y_overlap)) % 4 + 4) % 4;
            if (rel & 1) {
                out.codespace_preserved = false;
                out.failure = "image phase inconsistent with a Clifford action";
                continue;
            }
            std::size_t li = i - g.n_stab;
            for (std::size_t j = 0; j < 2 * code.k; ++j)
                out.f.set(li, j, coeff->get(g.n_stab + j));
            if (rel == 2) out.sign_defects.set(li, true);
        }
    }
    // Logical Pauli realizing the defects: a defect on X-bar_i is produced by
    // Z-bar_i and vice versa.
    for (std::size_t i = 0; i < code.k; ++i) {
        if (out.sign_defects.get(i)) out.pauli_frame.set(code.k + i, true);
        if (out.sign_defects.get(code.k + i)) out.pauli_frame.set(i, true);
    }
    return out;
}

bool verify_claim(const CssCode& code, const Circuit& circuit, const BitMatrix& claimed_f,
                  bool up_to_pauli, const BitVec* claimed_frame) {
    LogicalAction act = logical_action(code, circuit);
    if (!act.codespace_preserved) return false;
    if (act.f != claimed_f) return false;
    if (!up_to_pauli) {
        BitVec want(2 * code.k);
        if (claimed_frame) want = *claimed_frame;
        if (act.pauli_frame != want) return false;
    }
    return true;
}

BitMatrix f_identity(std::size_t k) { return BitMatrix::identity(2 * k); }

BitMatrix f_cnot(std::size_t k, std::size_t ctrl, std::size_t tgt) {
    BitMatrix f = BitMatrix::identity(2 * k);
    f.set(ctrl, tgt, true);          // X_ctrl -> X_ctrl X_tgt
    f.set(k + tgt, k + ctrl, true);  // Z_tgt -> Z_ctrl Z_tgt
    return f;
}

BitMatrix f_swap(std::size_t k, std::size_t a, std::size_t b) {
    BitMatrix f(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t xi = i == a ? b : i == b ? a : i;
        f.set(i, xi, true);
        f.set(k + i, k + xi, true);
    }
    return f;
}

BitMatrix f_s(std::size_t k, std::size_t i) {
    BitMatrix f = BitMatrix::identity(2 * k);
    f.set(i, k + i, true);  // X_i -> Y_i = X_i Z_i
    return f;
}

BitMatrix f_cz(std::size_t k, std::size_t a, std::size_t b) {
    BitMatrix f = BitMatrix::identity(2 * k);
    f.set(a, k + b, true);  // X_a -> X_a Z_b
    f.set(b, k + a, true);  // X_b -> X_b Z_a
    return f;
}

BitMatrix f_h_all(std::size_t k) {
    BitMatrix f(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        f.set(i, k + i, true);
        f.set(k + i, i, true);
    }
    return f;
}

BitMatrix f_from_xx(const BitMatrix& a) {
    std::size_t k = a.rows();
    auto ainv = inverse(a);
    if (!ainv) throw std::invalid_argument("X-sector action must be invertible");
    BitMatrix azz = ainv->transpose();
    BitMatrix f(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a.get(i, j)) f.set(i, j, true);
            if (azz.get(i, j)) f.set(k + i, k + j, true);
        }
    return f;
}

}  // namespace phantom
