#include "phantom/code.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace phantom {

CssCode make_css(BitMatrix hx, BitMatrix hz, std::string name) {
    std::size_t n = hx.cols() ? hx.cols() : hz.cols();
    if (hx.rows() == 0) hx = BitMatrix(0, n);
    if (hz.rows() == 0) hz = BitMatrix(0, n);
    if (hx.cols() != hz.cols()) throw std::invalid_argument("hx/hz column mismatch");
    Rref rx = rref(hx), rz = rref(hz);
    CssCode code;
    code.n = n;
    code.hx = rx.mat;
    code.hz = rz.mat;
    code.k = n - rx.pivots.size() - rz.pivots.size();
    code.name = std::move(name);
    if (!mul(code.hx, code.hz.transpose()).is_zero())
        throw std::invalid_argument("stabilizers do not commute (Hx Hz^T != 0)");
    return code;
}

bool validate_css(const CssCode& code, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (code.hx.cols() != code.n || code.hz.cols() != code.n) return fail("column count != n");
    if (rank(code.hx) != code.rx()) return fail("hx not full row rank");
    if (rank(code.hz) != code.rz()) return fail("hz not full row rank");
    if (code.k != code.n - code.rx() - code.rz()) return fail("k inconsistent with ranks");
    if (!mul(code.hx, code.hz.transpose()).is_zero()) return fail("Hx Hz^T != 0");
    if (code.logicals) {
        const auto& l = *code.logicals;
        if (l.lx.rows() != code.k || l.lz.rows() != code.k) return fail("logical count != k");
        if (mul(l.lx, l.lz.transpose()) != BitMatrix::identity(code.k))
            return fail("Lx Lz^T != I");
        if (!mul(l.lx, code.hz.transpose()).is_zero()) return fail("Lx Hz^T != 0");
        if (!mul(l.lz, code.hx.transpose()).is_zero()) return fail("Lz Hx^T != 0");
    }
    return true;
}

LogicalBasisCss logical_basis_css(const BitMatrix& hx, const BitMatrix& hz) {
    std::size_t n = hx.cols() ? hx.cols() : hz.cols();
    std::size_t r = hx.rows(), t = hz.rows(), k = n - r - t;
    StandardFormCss sf = standard_form_css(hx, hz);
    // In permuted coordinates: Lx = (0 E^T I), Lz = (A2^T 0 I).
    BitMatrix lx(k, n), lz(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < t; ++j) lx.set(i, r + j, sf.e.get(j, i));
        lx.set(i, r + t + i, true);
        for (std::size_t j = 0; j < r; ++j) lz.set(i, j, sf.a2.get(j, i));
        lz.set(i, r + t + i, true);
    }
    // Map back: permuted column p corresponds to original qubit_order[p].
    LogicalBasisCss out;
    out.lx = lx.permute_cols(sf.qubit_order);
    out.lz = lz.permute_cols(sf.qubit_order);
    return out;
}

void ensure_logicals(CssCode& code) {
    if (code.logicals) return;
    code.logicals = logical_basis_css(code.hx, code.hz);
    std::string why;
    if (!validate_css(code, &why)) throw std::runtime_error("logical basis invalid: " + why);
}

CssCode hadamard_dual(const CssCode& code) {
    CssCode d = code;
    std::swap(d.hx, d.hz);
    if (d.logicals) std::swap(d.logicals->lx, d.logicals->lz);
    return d;
}

StabilizerCode StabilizerCode::from_css(const CssCode& code) {
    StabilizerCode s;
    s.n = code.n;
    s.k = code.k;
    BitMatrix h(0, 2 * code.n);
    for (std::size_t i = 0; i < code.rx(); ++i)
        h.append_row(code.hx.row(i).concat(BitVec(code.n)));
    for (std::size_t i = 0; i < code.rz(); ++i)
        h.append_row(BitVec(code.n).concat(code.hz.row(i)));
    s.h = std::move(h);
    if (code.logicals) {
        BitMatrix q(0, 2 * code.n);
        for (std::size_t i = 0; i < code.k; ++i)
            q.append_row(code.logicals->lx.row(i).concat(BitVec(code.n)));
        for (std::size_t i = 0; i < code.k; ++i)
            q.append_row(BitVec(code.n).concat(code.logicals->lz.row(i)));
        s.q = std::move(q);
    }
    return s;
}

StabilizerCode make_stabilizer(BitMatrix h, std::size_t n, std::string* why) {
    StabilizerCode s;
    s.n = n;
    Rref r = rref(h);
    s.h = r.mat;
    s.k = n - r.pivots.size();
    for (std::size_t i = 0; i < s.h.rows(); ++i)
        for (std::size_t j = i + 1; j < s.h.rows(); ++j)
            if (symplectic_product(s.h.row(i), s.h.row(j))) {
                if (why) *why = "stabilizers do not commute";
                throw std::invalid_argument("stabilizers do not commute (H Omega H^T != 0)");
            }
    return s;
}

bool validate_stabilizer(const StabilizerCode& code, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (code.h.cols() != 2 * code.n) return fail("h width != 2n");
    if (rank(code.h) != code.h.rows()) return fail("h not full row rank");
    if (code.k != code.n - code.h.rows()) return fail("k inconsistent");
    BitMatrix om = omega(code.n);
    if (!mul(mul(code.h, om), code.h.transpose()).is_zero()) return fail("H Omega H^T != 0");
    if (code.q) {
        const BitMatrix& q = *code.q;
        if (q.rows() != 2 * code.k) return fail("q row count != 2k");
        BitMatrix pair = mul(mul(q, om), q.transpose());
        if (pair != omega(code.k)) return fail("Q Omega Q^T != Omega");
        if (!mul(mul(code.h, om), q.transpose()).is_zero()) return fail("logicals do not commute with stabilizers");
    }
    return true;
}

void ensure_logicals(StabilizerCode& code) {
    if (code.q) return;
    StandardFormGen sf = standard_form_gen(code.h, code.n);
    std::size_t r = sf.r, n = code.n, k = code.k, t = n - r - k;
    // Lx = (0 E^T I | C^T 0 0), Lz = (0 0 0 | A2^T 0 I) in permuted coordinates.
    BitMatrix q(2 * k, 2 * n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < t; ++j) q.set(i, r + j, sf.e.get(j, i));
        q.set(i, r + t + i, true);
        for (std::size_t j = 0; j < r; ++j) q.set(i, n + j, sf.c.get(j, i));
        for (std::size_t j = 0; j < r; ++j) q.set(k + i, n + j, sf.a2.get(j, i));
        q.set(k + i, n + r + t + i, true);
    }
    Perm full(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        full[i] = sf.qubit_order[i];
        full[n + i] = n + sf.qubit_order[i];
    }
    code.q = q.permute_cols(full);
    std::string why;
    if (!validate_stabilizer(code, &why)) throw std::runtime_error("logical basis invalid: " + why);
}

namespace {

// Minimum weight over { a L + s H : a != 0 } using a Gray-coded stabilizer walk.
std::size_t sector_distance_walk(const BitMatrix& h, const BitMatrix& l) {
    std::size_t r = h.rows(), k = l.rows();
    std::size_t best = SIZE_MAX;
    std::uint64_t la = 1, lend = std::uint64_t{1} << k;
    for (; la < lend; ++la) {
        BitVec base(l.cols());
        for (std::size_t i = 0; i < k; ++i)
            if ((la >> i) & 1) base ^= l.row(i);
        // Gray walk over the 2^r stabilizer combinations.
        BitVec cur = base;
        best = std::min(best, cur.weight());
        std::uint64_t send = std::uint64_t{1} << r;
        for (std::uint64_t g = 1; g < send; ++g) {
            int bit = std::countr_zero(g);
            cur ^= h.row(bit);
            best = std::min(best, cur.weight());
        }
    }
    return best;
}

// Ascending-weight search: smallest weight of v with Hother v^T = 0 and v not
// in rowspan(Hsame). Returns 0 if none found up to the limit.
std::size_t sector_distance_bounded(const BitMatrix& hsame, const BitMatrix& hother,
                                    std::size_t n, std::size_t wmax) {
    Rref span = rref(hsame);
    std::vector<std::size_t> idx;
    BitVec v(n);
    for (std::size_t w = 1; w <= wmax; ++w) {
        idx.assign(w, 0);
        for (std::size_t i = 0; i < w; ++i) idx[i] = i;
        while (true) {
            BitVec cand(n);
            for (auto i : idx) cand.set(i, true);
            bool commutes = true;
            for (std::size_t j = 0; j < hother.rows() && commutes; ++j)
                if (hother.row(j).dot(cand)) commutes = false;
            if (commutes && !in_row_span(span, cand)) return w;
            // next combination
            std::size_t i = w;
            while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return 0;
}

}  // namespace

CssDistance distance_css(const CssCode& code, const DistanceOptions& opts) {
    CssCode c = code;
    ensure_logicals(c);
    CssDistance out;
    if (c.k == 0) {
        out.dx = out.dz = 0;
        return out;
    }
    bool x_ok = c.rx() + c.k <= opts.span_walk_limit;
    bool z_ok = c.rz() + c.k <= opts.span_walk_limit;
    if (x_ok && z_ok) {
        out.dx = sector_distance_walk(c.hx, c.logicals->lx);
        out.dz = sector_distance_walk(c.hz, c.logicals->lz);
        out.exact = true;
        return out;
    }
    if (opts.weight_limit == 0)
        throw std::runtime_error("distance_css: span walk over cutoff and no weight limit requested");
    std::size_t dx = sector_distance_bounded(c.hx, c.hz, c.n, opts.weight_limit);
    std::size_t dz = sector_distance_bounded(c.hz, c.hx, c.n, opts.weight_limit);
    out.dx = dx ? dx : opts.weight_limit + 1;
    out.dz = dz ? dz : opts.weight_limit + 1;
    out.exact = dx != 0 && dz != 0;
    out.certified_up_to = opts.weight_limit;
    return out;
}

std::size_t distance_stabilizer(const StabilizerCode& code) {
    StabilizerCode c = code;
    ensure_logicals(c);
    std::size_t r = c.h.rows(), k2 = 2 * c.k;
    std::size_t best = SIZE_MAX;
    std::uint64_t lend = std::uint64_t{1} << k2;
    for (std::uint64_t la = 1; la < lend; ++la) {
        BitVec base(2 * c.n);
        for (std::size_t i = 0; i < k2; ++i)
            if ((la >> i) & 1) base ^= c.q->row(i);
        BitVec cur = base;
        best = std::min(best, PauliOp::from_symplectic(cur).weight());
        std::uint64_t send = std::uint64_t{1} << r;
        for (std::uint64_t g = 1; g < send; ++g) {
            int bit = std::countr_zero(g);
            cur ^= c.h.row(bit);
            best = std::min(best, PauliOp::from_symplectic(cur).weight());
        }
    }
    return best;
}

PauliOp logical_representative(const CssCode& code, const BitVec& label) {
    if (!code.logicals) throw std::invalid_argument("logicals missing");
    if (label.size() != 2 * code.k) throw std::invalid_argument("label must have 2k bits");
    PauliOp rep(code.n);
    for (std::size_t i = 0; i < code.k; ++i) {
        if (label.get(i)) rep *= PauliOp(code.logicals->lx.row(i), BitVec(code.n));
        if (label.get(code.k + i)) rep *= PauliOp(BitVec(code.n), code.logicals->lz.row(i));
    }
    return rep;
}

std::map<WeightVector, std::size_t> logical_class_weights(const CssCode& code,
                                                          const BitVec& label) {
    PauliOp rep = logical_representative(code, label);
    std::map<WeightVector, std::size_t> out;
    std::uint64_t nx = std::uint64_t{1} << code.rx();
    std::uint64_t nz = std::uint64_t{1} << code.rz();
    // Gray walk over the full stabilizer group.
    BitVec curx = rep.x, curz = rep.z;
    for (std::uint64_t gx = 0; gx < nx; ++gx) {
        if (gx) curx ^= code.hx.row(std::countr_zero(gx));
        BitVec cz = curz;
        for (std::uint64_t gz = 0; gz < nz; ++gz) {
            if (gz) cz ^= code.hz.row(std::countr_zero(gz));
            ++out[PauliOp(curx, cz).weight_vector()];
        }
    }
    return out;
}

namespace {

// Max clique with greedy-colouring bound (Tomita-style).
class MaxClique {
public:
    explicit MaxClique(const std::vector<std::vector<std::uint64_t>>& adj, std::size_t n)
        : adj_(adj), n_(n), words_((n + 63) / 64) {}

    std::size_t run() {
        std::vector<std::uint64_t> all(words_, 0);
        for (std::size_t i = 0; i < n_; ++i) all[i >> 6] |= std::uint64_t{1} << (i & 63);
        expand(all, 0);
        return best_;
    }

private:
    void expand(std::vector<std::uint64_t> cand, std::size_t depth) {
        // Greedy colouring to order candidates with upper bounds.
        std::vector<std::size_t> order, bound;
        std::vector<std::uint64_t> uncol = cand;
        std::size_t color = 0;
        while (any(uncol)) {
            ++color;
            std::vector<std::uint64_t> cls = uncol;
            while (any(cls)) {
                std::size_t v = first(cls);
                clearbit(cls, v);
                clearbit(uncol, v);
                andnot(cls, adj_[v]);
                order.push_back(v);
                bound.push_back(color);
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (depth + bound[i] <= best_) return;
            std::size_t v = order[i];
            std::vector<std::uint64_t> next(words_);
            for (std::size_t w = 0; w < words_; ++w) next[w] = cand[w] & adj_[v][w];
            if (!any(next)) {
                if (depth + 1 > best_) best_ = depth + 1;
            } else {
                expand(next, depth + 1);
            }
            clearbit(cand, v);
        }
    }

    static bool any(const std::vector<std::uint64_t>& v) {
        for (auto w : v) if (w) return true;
        return false;
    }
    static std::size_t first(const std::vector<std::uint64_t>& v) {
        for (std::size_t w = 0; w < v.size(); ++w)
            if (v[w]) return w * 64 + std::countr_zero(v[w]);
        return SIZE_MAX;
    }
    static void clearbit(std::vector<std::uint64_t>& v, std::size_t i) {
        v[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    static void andnot(std::vector<std::uint64_t>& v, const std::vector<std::uint64_t>& m) {
        for (std::size_t w = 0; w < v.size(); ++w) v[w] &= ~m[w];
    }

    const std::vector<std::vector<std::uint64_t>>& adj_;
    std::size_t n_, words_;
    std::size_t best_ = 0;
};

}  // namespace

std::size_t hamming_B(std::size_t n, std::size_t d) {
    if (d > n) return 0;
    if (d == 0) return 1;
    // Vertices: all weight-d strings; edge iff |intersection| <= floor(d/2).
    std::vector<std::uint32_t> verts;
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    while (true) {
        std::uint32_t m = 0;
        for (auto i : idx) m |= 1u << i;
        verts.push_back(m);
        std::size_t i = d;
        while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::size_t v = verts.size(), words = (v + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(v, std::vector<std::uint64_t>(words, 0));
    std::size_t maxint = d / 2;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
            if (static_cast<std::size_t>(std::popcount(verts[i] & verts[j])) <= maxint) {
                adj[i][j >> 6] |= std::uint64_t{1} << (j & 63);
                adj[j][i >> 6] |= std::uint64_t{1} << (i & 63);
            }
    return MaxClique(adj, v).run();
}

bool check_hamming_bound(const CssCode& code, std::optional<std::size_t> eta) {
    if (code.k == 0) return true;
    CssCode c = code;
    ensure_logicals(c);
    CssDistance dist = distance_css(c);
    std::size_t d = dist.d();
    if (!eta) {
        // Weight-d class size of the first logical in the limiting sector.
        BitVec label(2 * c.k);
        label.set(dist.dz < dist.dx ? c.k : 0, true);
        auto classes = logical_class_weights(c, label);
        std::size_t e = 0;
        for (const auto& [w, count] : classes)
            if (w.total() == d) e += count;
        eta = e;
    }
    return *eta * ((std::size_t{1} << c.k) - 1) <= hamming_B(c.n, d);
}

}  // namespace phantom
