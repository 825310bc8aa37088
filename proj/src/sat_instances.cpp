#include "phantom/sat_instances.hpp"

#include "phantom/tableau.hpp"

#include <stdexcept>

namespace phantom {

namespace {

using MV = CnfFormula::MatrixVar;

// Asserts A P B^T = target entrywise, where any of the three may hold
// constant literals.
void product3_constraint(CnfFormula& f, const MV& a, const MV& p, const MV& b,
                         const BitMatrix& target) {
    if (a.cols != p.rows || p.cols != b.cols || a.rows != target.rows() || b.rows != target.cols())
        throw std::invalid_argument("product3 shape mismatch");
    std::vector<int> terms;
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t s = 0; s < b.rows; ++s) {
            terms.clear();
            for (std::size_t i = 0; i < p.rows; ++i) {
                if (a.at(r, i) == f.false_lit()) continue;
                for (std::size_t j = 0; j < p.cols; ++j) {
                    if (b.at(s, j) == f.false_lit()) continue;
                    int t = f.and_lit(f.and_lit(a.at(r, i), p.at(i, j)), b.at(s, j));
                    if (t != f.false_lit()) terms.push_back(t);
                }
            }
            f.xor_clause(terms, target.get(r, s));
        }
}

MV embed_xx(const BitMatrix& small_xx, std::size_t k, CnfFormula& f) {
    BitMatrix big = BitMatrix::identity(k);
    for (std::size_t i = 0; i < small_xx.rows(); ++i)
        for (std::size_t j = 0; j < small_xx.cols(); ++j)
            big.set(i, j, small_xx.get(i, j));
    return f.constant_matrix(big);
}

}  // namespace

std::vector<Perm> PhantomInstance::decode(const std::vector<bool>& model) const {
    std::vector<Perm> out;
    for (const auto& pv : perms) {
        BitMatrix m = formula.decode_matrix(model, pv);
        Perm p(m.rows(), SIZE_MAX);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.get(i, j)) p[i] = j;
        if (!is_perm(p)) throw std::logic_error("model does not decode to a permutation");
        out.push_back(std::move(p));
    }
    return out;
}

PhantomWitness PhantomInstance::decode_witness(const std::vector<bool>& model) const {
    if (p != code.k)
        throw std::logic_error("decode_witness is only defined for the p = k instance");
    PhantomWitness w;
    w.n = code.n;
    w.k = code.k;
    w.basis = *code.logicals;
    w.minimal = decode(model);
    return w;
}

PhantomInstance phantom_instance(const CssCode& code_in, std::size_t p, bool involutions_only) {
    CssCode code = code_in;
    ensure_logicals(code);
    std::size_t k = code.k;
    if (k < 2) throw std::invalid_argument("phantom_instance needs k >= 2");
    if (p == 0) p = k;
    if (p < 2 || p > k) throw std::invalid_argument("phantom_instance needs 2 <= p <= k");

    PhantomInstance inst;
    inst.code = code;
    inst.p = p;
    CnfFormula& f = inst.formula;

    MV qx, qz;
    if (p == k) {
        qx = f.constant_matrix(code.logicals->lx);
        qz = f.constant_matrix(code.logicals->lz);
    } else {
        // Free logical basis rotation: Qx = R Lx, Qz = R^{-T} Lz.
        auto [r, rinv] = f.gl_var(k);
        inst.rot = r;
        qx = f.matrix_product(r, f.constant_matrix(code.logicals->lx));
        qz = f.matrix_product(f.transpose(rinv), f.constant_matrix(code.logicals->lz));
    }
    MV hx = f.constant_matrix(code.hx);
    MV hz = f.constant_matrix(code.hz);

    std::vector<BitMatrix> targets_small = minimal_gateset(p);
    for (const auto& t : targets_small) {
        MV perm = f.permutation_var(code.n, involutions_only);
        inst.perms.push_back(perm);
        BitMatrix fxx_small = t.submatrix(0, p, 0, p);
        BitMatrix fxx = BitMatrix::identity(k);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                fxx.set(i, j, fxx_small.get(i, j));
        BitMatrix fzz = inverse(fxx)->transpose();

        product3_constraint(f, qx, perm, qz, fxx);
        product3_constraint(f, qz, perm, qx, fzz);
        product3_constraint(f, hx, perm, hz, BitMatrix(code.rx(), code.rz()));
        product3_constraint(f, hz, perm, hx, BitMatrix(code.rz(), code.rx()));
        product3_constraint(f, hx, perm, qz, BitMatrix(code.rx(), k));
        product3_constraint(f, hz, perm, qx, BitMatrix(code.rz(), k));
        product3_constraint(f, qx, perm, hz, BitMatrix(k, code.rz()));
        product3_constraint(f, qz, perm, hx, BitMatrix(k, code.rx()));
    }
    return inst;
}

namespace {

std::size_t binom(std::size_t n, std::size_t w) {
    if (w > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < w; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// All weight-w vectors of length n, as index lists.
template <typename Fn>
void for_each_weighted(std::size_t n, std::size_t w, Fn&& fn) {
    if (w == 0) return;
    std::vector<std::size_t> idx(w);
    for (std::size_t i = 0; i < w; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = w;
        while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

CssCode DiscoveryInstance::decode_css(const std::vector<bool>& model) const {
    std::size_t n = spec.n, k = spec.k, r = spec.r, t = n - k - r;
    BitMatrix va1 = formula.decode_matrix(model, a1);
    BitMatrix va2 = formula.decode_matrix(model, a2);
    BitMatrix ve = formula.decode_matrix(model, e);
    BitMatrix hx(r, n), hz(t, n);
    BitMatrix d = va1.transpose();  // D = (A1 + A2 E^T)^T = A1^T + E A2^T
    BitMatrix ea2t = mul(ve, va2.transpose());
    for (std::size_t i = 0; i < t; ++i) d.row(i) ^= ea2t.row(i);
    for (std::size_t i = 0; i < r; ++i) {
        hx.set(i, i, true);
        for (std::size_t j = 0; j < t; ++j) hx.set(i, r + j, va1.get(i, j));
        for (std::size_t j = 0; j < k; ++j) hx.set(i, r + t + j, va2.get(i, j));
    }
    for (std::size_t i = 0; i < t; ++i) {
        hz.set(i, r + i, true);
        for (std::size_t j = 0; j < r; ++j) hz.set(i, j, d.get(i, j));
        for (std::size_t j = 0; j < k; ++j) hz.set(i, r + t + j, ve.get(i, j));
    }
    CssCode code = make_css(hx, hz);
    ensure_logicals(code);
    return code;
}

StabilizerCode DiscoveryInstance::decode_stabilizer(const std::vector<bool>& model) const {
    std::size_t n = spec.n, k = spec.k, r = spec.r, t = n - k - r;
    BitMatrix va1 = formula.decode_matrix(model, a1);
    BitMatrix va2 = formula.decode_matrix(model, a2);
    BitMatrix ve = formula.decode_matrix(model, e);
    BitMatrix vb = formula.decode_matrix(model, *b);
    BitMatrix vc = formula.decode_matrix(model, *c);
    BitMatrix d = va1.transpose();
    BitMatrix ea2t = mul(ve, va2.transpose());
    for (std::size_t i = 0; i < t; ++i) d.row(i) ^= ea2t.row(i);
    BitMatrix h(r + t, 2 * n);
    for (std::size_t i = 0; i < r; ++i) {
        h.set(i, i, true);
        for (std::size_t j = 0; j < t; ++j) h.set(i, r + j, va1.get(i, j));
        for (std::size_t j = 0; j < k; ++j) h.set(i, r + t + j, va2.get(i, j));
        for (std::size_t j = 0; j < r; ++j) h.set(i, n + j, vb.get(i, j));
        for (std::size_t j = 0; j < k; ++j) h.set(i, n + r + t + j, vc.get(i, j));
    }
    for (std::size_t i = 0; i < t; ++i) {
        h.set(i + r, n + r + i, true);
        for (std::size_t j = 0; j < r; ++j) h.set(i + r, n + j, d.get(i, j));
        for (std::size_t j = 0; j < k; ++j) h.set(i + r, n + r + t + j, ve.get(i, j));
    }
    StabilizerCode code = make_stabilizer(h, n);
    ensure_logicals(code);
    return code;
}

DiscoveryInstance discovery_instance(const DiscoverySpec& spec, std::size_t clause_budget) {
    if (spec.n == 0 || spec.k == 0 || spec.k >= spec.n || spec.r > spec.n - spec.k)
        throw std::invalid_argument("invalid discovery spec");
    std::size_t n = spec.n, k = spec.k, r = spec.r, t = n - k - r;

    // Clause blow-up guard over the error-set sizes.
    std::size_t est = 0;
    std::size_t dmax = spec.css ? std::max(spec.dx, spec.dz) : spec.dx;
    for (std::size_t w = 1; w <= dmax; ++w) {
        std::size_t count = binom(n, w);
        if (!spec.css) {
            std::size_t p3 = 1;
            for (std::size_t i = 0; i < w; ++i) p3 *= 3;
            count *= p3;
        }
        est += count * (n - k + k);
    }
    if (est > clause_budget)
        throw std::length_error("discovery instance would exceed the clause budget");

    DiscoveryInstance inst;
    inst.spec = spec;
    CnfFormula& f = inst.formula;
    inst.a1 = f.new_matrix(r, t);
    inst.a2 = f.new_matrix(r, k);
    inst.e = f.new_matrix(t, k);

    // Derived D with D = A1^T + E A2^T.
    MV d;
    d.rows = t;
    d.cols = r;
    d.lits.resize(t * r);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<int> terms{inst.a1.at(j, i)};
            for (std::size_t cidx = 0; cidx < k; ++cidx)
                terms.push_back(f.and_lit(inst.a2.at(j, cidx), inst.e.at(i, cidx)));
            d.at(i, j) = f.xor_lit(terms);
        }

    // Assembled stabilizer and logical rows over the n columns.
    auto hx_row = [&](std::size_t i) {
        std::vector<int> row(n, f.false_lit());
        row[i] = f.true_lit();
        for (std::size_t j = 0; j < t; ++j) row[r + j] = inst.a1.at(i, j);
        for (std::size_t j = 0; j < k; ++j) row[r + t + j] = inst.a2.at(i, j);
        return row;
    };
    auto hz_row = [&](std::size_t i) {
        std::vector<int> row(n, f.false_lit());
        row[r + i] = f.true_lit();
        for (std::size_t j = 0; j < r; ++j) row[j] = d.at(i, j);
        for (std::size_t j = 0; j < k; ++j) row[r + t + j] = inst.e.at(i, j);
        return row;
    };
    auto lx_row = [&](std::size_t i) {
        std::vector<int> row(n, f.false_lit());
        for (std::size_t j = 0; j < t; ++j) row[r + j] = inst.e.at(j, i);
        row[r + t + i] = f.true_lit();
        return row;
    };
    auto lz_row = [&](std::size_t i) {
        std::vector<int> row(n, f.false_lit());
        for (std::size_t j = 0; j < r; ++j) row[j] = inst.a2.at(j, i);
        row[r + t + i] = f.true_lit();
        return row;
    };

    if (!spec.css) {
        inst.b = f.new_matrix(r, r);
        inst.c = f.new_matrix(r, k);
        // B + C A2^T symmetric.
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                std::vector<int> terms{inst.b->at(i, j), inst.b->at(j, i)};
                for (std::size_t cidx = 0; cidx < k; ++cidx) {
                    terms.push_back(f.and_lit(inst.c->at(i, cidx), inst.a2.at(j, cidx)));
                    terms.push_back(f.and_lit(inst.c->at(j, cidx), inst.a2.at(i, cidx)));
                }
                f.xor_clause(terms, false);
            }
    }

    // Distance constraints per sector: mu = X uses the conjugate (Z) rows.
    auto sector_constraints = [&](std::size_t d_mu, auto&& hrows, std::size_t hcount,
                                  auto&& lrows, std::size_t lcount) {
        // Lower bound: every error of weight <= d-1 hits a syndrome or no logical.
        for (std::size_t w = 1; w + 1 <= d_mu; ++w) {
            for_each_weighted(n, w, [&](const std::vector<std::size_t>& idx) {
                std::vector<int> synd;
                for (std::size_t i = 0; i < hcount; ++i) {
                    auto row = hrows(i);
                    std::vector<int> bits;
                    for (auto c : idx) bits.push_back(row[c]);
                    synd.push_back(f.xor_lit(bits));
                }
                for (std::size_t i = 0; i < lcount; ++i) {
                    auto row = lrows(i);
                    std::vector<int> bits;
                    for (auto c : idx) bits.push_back(row[c]);
                    int tl = f.xor_lit(bits);
                    std::vector<int> clause = synd;
                    clause.push_back(-tl);
                    f.add_clause(std::move(clause));
                }
            });
        }
        // Upper bound: some weight-d error with zero syndrome and a logical hit.
        std::vector<int> witnesses;
        for_each_weighted(n, d_mu, [&](const std::vector<std::size_t>& idx) {
            int u = f.new_var();
            for (std::size_t i = 0; i < hcount; ++i) {
                auto row = hrows(i);
                std::vector<int> bits;
                for (auto c : idx) bits.push_back(row[c]);
                f.add_clause({-u, -f.xor_lit(bits)});
            }
            std::vector<int> lhit{-u};
            for (std::size_t i = 0; i < lcount; ++i) {
                auto row = lrows(i);
                std::vector<int> bits;
                for (auto c : idx) bits.push_back(row[c]);
                lhit.push_back(f.xor_lit(bits));
            }
            f.add_clause(std::move(lhit));
            witnesses.push_back(u);
        });
        f.add_clause(std::move(witnesses));
    };

    auto rowset_to_mv = [&](auto&& rows, std::size_t count) {
        MV m;
        m.rows = count;
        m.cols = n;
        m.lits.resize(count * n);
        for (std::size_t i = 0; i < count; ++i) {
            auto row = rows(i);
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = row[j];
        }
        return m;
    };

    if (spec.css) {
        sector_constraints(spec.dx, hz_row, t, lz_row, k);
        sector_constraints(spec.dz, hx_row, r, lx_row, k);
        if (spec.phantom) {
            MV qx = rowset_to_mv(lx_row, k);
            MV qz = rowset_to_mv(lz_row, k);
            MV hxv = rowset_to_mv(hx_row, r);
            MV hzv = rowset_to_mv(hz_row, t);
            for (const auto& target : minimal_gateset(k)) {
                MV perm = f.permutation_var(n, spec.involutions_only);
                inst.perms.push_back(perm);
                BitMatrix fxx = target.submatrix(0, k, 0, k);
                BitMatrix fzz = inverse(fxx)->transpose();
                product3_constraint(f, qx, perm, qz, fxx);
                product3_constraint(f, qz, perm, qx, fzz);
                product3_constraint(f, hxv, perm, hzv, BitMatrix(r, t));
                product3_constraint(f, hzv, perm, hxv, BitMatrix(t, r));
                product3_constraint(f, hxv, perm, qz, BitMatrix(r, k));
                product3_constraint(f, hzv, perm, qx, BitMatrix(t, k));
                product3_constraint(f, qx, perm, hzv, BitMatrix(k, t));
                product3_constraint(f, qz, perm, hxv, BitMatrix(k, r));
            }
        }
        return inst;
    }

    // General stabilizer mode: full symplectic rows over 2n columns.
    auto h_row = [&](std::size_t i) {
        std::vector<int> row(2 * n, f.false_lit());
        if (i < r) {
            row[i] = f.true_lit();
            for (std::size_t j = 0; j < t; ++j) row[r + j] = inst.a1.at(i, j);
            for (std::size_t j = 0; j < k; ++j) row[r + t + j] = inst.a2.at(i, j);
            for (std::size_t j = 0; j < r; ++j) row[n + j] = inst.b->at(i, j);
            for (std::size_t j = 0; j < k; ++j) row[n + r + t + j] = inst.c->at(i, j);
        } else {
            std::size_t ii = i - r;
            row[n + r + ii] = f.true_lit();
            for (std::size_t j = 0; j < r; ++j) row[n + j] = d.at(ii, j);
            for (std::size_t j = 0; j < k; ++j) row[n + r + t + j] = inst.e.at(ii, j);
        }
        return row;
    };
    auto l_row = [&](std::size_t i) {
        std::vector<int> row(2 * n, f.false_lit());
        if (i < k) {
            // Lx = (0 E^T I | C^T 0 0)
            for (std::size_t j = 0; j < t; ++j) row[r + j] = inst.e.at(j, i);
            row[r + t + i] = f.true_lit();
            for (std::size_t j = 0; j < r; ++j) row[n + j] = inst.c->at(j, i);
        } else {
            std::size_t ii = i - k;
            // Lz = (0 0 0 | A2^T 0 I)
            for (std::size_t j = 0; j < r; ++j) row[n + j] = inst.a2.at(j, ii);
            row[n + r + t + ii] = f.true_lit();
        }
        return row;
    };

    // Distance constraints over Pauli errors of qubit weight <= d.
    std::size_t d_tot = spec.dx;
    auto sympl_bit = [&](const std::vector<int>& row, const BitVec& ex, const BitVec& ez) {
        std::vector<int> bits;
        for (std::size_t q2 = 0; q2 < n; ++q2) {
            if (ez.get(q2)) bits.push_back(row[q2]);
            if (ex.get(q2)) bits.push_back(row[n + q2]);
        }
        return f.xor_lit(bits);
    };
    auto for_each_pauli = [&](std::size_t w, auto&& fn) {
        for_each_weighted(n, w, [&](const std::vector<std::size_t>& idx) {
            std::size_t types = 1;
            for (std::size_t i = 0; i < w; ++i) types *= 3;
            for (std::size_t tmask = 0; tmask < types; ++tmask) {
                BitVec ex(n), ez(n);
                std::size_t m = tmask;
                for (auto q2 : idx) {
                    switch (m % 3) {
                        case 0: ex.set(q2, true); break;
                        case 1: ez.set(q2, true); break;
                        default: ex.set(q2, true); ez.set(q2, true); break;
                    }
                    m /= 3;
                }
                fn(ex, ez);
            }
        });
    };
    for (std::size_t w = 1; w + 1 <= d_tot; ++w) {
        for_each_pauli(w, [&](const BitVec& ex, const BitVec& ez) {
            std::vector<int> synd;
            for (std::size_t i = 0; i < r + t; ++i) synd.push_back(sympl_bit(h_row(i), ex, ez));
            for (std::size_t i = 0; i < 2 * k; ++i) {
                std::vector<int> clause = synd;
                clause.push_back(-sympl_bit(l_row(i), ex, ez));
                f.add_clause(std::move(clause));
            }
        });
    }
    std::vector<int> witnesses;
    for_each_pauli(d_tot, [&](const BitVec& ex, const BitVec& ez) {
        int u = f.new_var();
        for (std::size_t i = 0; i < r + t; ++i)
            f.add_clause({-u, -sympl_bit(h_row(i), ex, ez)});
        std::vector<int> lhit{-u};
        for (std::size_t i = 0; i < 2 * k; ++i) lhit.push_back(sympl_bit(l_row(i), ex, ez));
        f.add_clause(std::move(lhit));
        witnesses.push_back(u);
    });
    f.add_clause(std::move(witnesses));

    if (spec.phantom) {
        // Free symplectic rotation R and Q = R L.
        MV rot = f.new_matrix(2 * k, 2 * k);
        BitMatrix omk = omega(k);
        MV omk_c = f.constant_matrix(omk);
        MV r_om = f.matrix_product(rot, omk_c);
        f.matrix_product_constraint(r_om, f.transpose(rot), omk);  // R Omega R^T = Omega
        MV lmat;
        lmat.rows = 2 * k;
        lmat.cols = 2 * n;
        lmat.lits.resize(4 * k * n);
        for (std::size_t i = 0; i < 2 * k; ++i) {
            auto row = l_row(i);
            for (std::size_t j = 0; j < 2 * n; ++j) lmat.at(i, j) = row[j];
        }
        MV q = f.matrix_product(rot, lmat);
        MV hmat;
        hmat.rows = r + t;
        hmat.cols = 2 * n;
        hmat.lits.resize((r + t) * 2 * n);
        for (std::size_t i = 0; i < r + t; ++i) {
            auto row = h_row(i);
            for (std::size_t j = 0; j < 2 * n; ++j) hmat.at(i, j) = row[j];
        }
        // Pairing helper: U (P + P) Omega V^T entries.
        auto pairing_constraint = [&](const MV& u, const MV& pv, const MV& v, const BitMatrix& tgt) {
            std::vector<int> terms;
            for (std::size_t a = 0; a < u.rows; ++a)
                for (std::size_t b2 = 0; b2 < v.rows; ++b2) {
                    terms.clear();
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            int pij = pv.at(i, j);
                            int t1 = f.and_lit(f.and_lit(u.at(a, i), pij), v.at(b2, n + j));
                            if (t1 != f.false_lit()) terms.push_back(t1);
                            int t2 = f.and_lit(f.and_lit(u.at(a, n + i), pij), v.at(b2, j));
                            if (t2 != f.false_lit()) terms.push_back(t2);
                        }
                    f.xor_clause(terms, tgt.get(a, b2));
                }
        };
        for (const auto& target : minimal_gateset(k)) {
            MV perm = f.permutation_var(n, spec.involutions_only);
            inst.perms.push_back(perm);
            BitMatrix f_om = mul(target, omk);
            pairing_constraint(q, perm, q, f_om);
            pairing_constraint(hmat, perm, hmat, BitMatrix(r + t, r + t));
            pairing_constraint(hmat, perm, q, BitMatrix(r + t, 2 * k));
            pairing_constraint(q, perm, hmat, BitMatrix(2 * k, r + t));
        }
    }
    return inst;
}

}  // namespace phantom
