#include "phantom/f2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace phantom {

BitVec BitVec::from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') v.set(i, true);
        else if (s[i] != '0') throw std::invalid_argument("bit string must be 0/1");
    }
    return v;
}

BitVec BitVec::unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i, true);
    return v;
}

bool BitVec::zero() const {
    for (auto w : w_) if (w) return false;
    return true;
}

std::size_t BitVec::weight() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVec::count_range(std::size_t lo, std::size_t hi) const {
    std::size_t c = 0;
    for (std::size_t i = lo; i < hi; ++i) c += get(i);
    return c;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

BitVec BitVec::slice(std::size_t lo, std::size_t hi) const {
    BitVec v(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) v.set(i - lo, get(i));
    return v;
}

BitVec BitVec::concat(const BitVec& o) const {
    BitVec v(n_ + o.n_);
    for (std::size_t i = 0; i < n_; ++i) v.set(i, get(i));
    for (std::size_t i = 0; i < o.n_; ++i) v.set(n_ + i, o.get(i));
    return v;
}

std::string BitVec::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
    return s;
}

std::uint64_t BitVec::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
    for (auto w : w_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return h;
}

Perm perm_identity(std::size_t n) {
    Perm p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

Perm perm_inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
    return q;
}

Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
}

std::size_t perm_period(const Perm& p) {
    std::size_t period = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0, j = i;
        do { seen[j] = true; j = p[j]; ++len; } while (j != i);
        period = std::lcm(period, len);
    }
    return period;
}

bool is_perm(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (auto v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

BitVec apply_perm(const BitVec& v, const Perm& p) {
    BitVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out.set(p[i], true);
    return out;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows) {
    BitMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != m.cols_) throw std::invalid_argument("ragged rows");
    m.r_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitVec> v;
    for (auto s : rows) v.push_back(BitVec::from_string(s));
    return from_rows(std::move(v));
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, rng() & 1);
    return m;
}

BitMatrix BitMatrix::random_invertible(std::size_t n, std::mt19937_64& rng) {
    while (true) {
        BitMatrix m = random(n, n, rng);
        if (is_invertible(m)) return m;
    }
}

BitMatrix BitMatrix::perm_matrix(const Perm& p) {
    BitMatrix m(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m.set(i, p[i], true);
    return m;
}

void BitMatrix::append_row(BitVec v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw std::invalid_argument("row size mismatch");
    r_.push_back(std::move(v));
    ++rows_;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) t.set(j, i, true);
    return t;
}

BitMatrix BitMatrix::submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    BitMatrix s(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j)
            if (get(i, j)) s.set(i - r0, j - c0, true);
    return s;
}

BitMatrix BitMatrix::vstack(const BitMatrix& o) const {
    if (rows_ == 0) return o;
    if (o.rows_ == 0) return *this;
    if (cols_ != o.cols_) throw std::invalid_argument("vstack column mismatch");
    BitMatrix m = *this;
    for (std::size_t i = 0; i < o.rows_; ++i) m.append_row(o.row(i));
    return m;
}

BitMatrix BitMatrix::hstack(const BitMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
    BitMatrix m(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) m.r_[i] = r_[i].concat(o.r_[i]);
    return m;
}

BitMatrix BitMatrix::permute_cols(const Perm& p) const {
    BitMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) m.r_[i] = apply_perm(r_[i], p);
    return m;
}

bool BitMatrix::is_zero() const {
    for (const auto& r : r_) if (!r.zero()) return false;
    return true;
}

std::string BitMatrix::str() const {
    std::string s;
    for (const auto& r : r_) { s += r.str(); s += '\n'; }
    return s;
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul shape mismatch");
    BitMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) c.row(i) ^= b.row(j);
    return c;
}

BitVec mul(const BitVec& v, const BitMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("mul shape mismatch");
    BitVec out(m.cols());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out ^= m.row(i);
    return out;
}

Rref rref(const BitMatrix& m) {
    std::vector<BitVec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t i = next; i < rows.size(); ++i)
            if (rows[i].get(col)) { sel = i; break; }
        if (sel == rows.size()) continue;
        std::swap(rows[next], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != next && rows[i].get(col)) rows[i] ^= rows[next];
        pivots.push_back(col);
        ++next;
    }
    rows.resize(next, BitVec(m.cols()));
    Rref out;
    out.mat = BitMatrix::from_rows(std::move(rows));
    if (out.mat.rows() == 0) out.mat = BitMatrix(0, m.cols());
    out.pivots = std::move(pivots);
    return out;
}

std::size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

BitMatrix kernel(const BitMatrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    BitMatrix out(0, m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        BitVec v(m.cols());
        v.set(c, true);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (r.mat.get(i, c)) v.set(r.pivots[i], true);
        out.append_row(std::move(v));
    }
    return out;
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    std::size_t n = m.rows();
    BitMatrix aug = m.hstack(BitMatrix::identity(n));
    Rref r = rref(aug);
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n)) return std::nullopt;
    return r.mat.submatrix(0, n, n, 2 * n);
}

bool is_invertible(const BitMatrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

bool in_row_span(const Rref& basis, const BitVec& v) {
    BitVec w = v;
    for (std::size_t i = 0; i < basis.pivots.size(); ++i)
        if (w.get(basis.pivots[i])) w ^= basis.mat.row(i);
    return w.zero();
}

bool row_span_equal(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols()) return false;
    Rref ra = rref(a), rb = rref(b);
    return ra.pivots == rb.pivots && ra.mat == rb.mat;
}

std::optional<BitVec> solve_row(const BitMatrix& basis, const BitVec& v) {
    // Reduce v against an rref of the basis while tracking coefficients.
    std::size_t nb = basis.rows();
    BitMatrix aug(nb, basis.cols() + nb);
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < basis.cols(); ++j)
            if (basis.get(i, j)) aug.set(i, j, true);
        aug.set(i, basis.cols() + i, true);
    }
    std::size_t next = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < basis.cols() && next < nb; ++col) {
        std::size_t sel = nb;
        for (std::size_t i = next; i < nb; ++i)
            if (aug.get(i, col)) { sel = i; break; }
        if (sel == nb) continue;
        std::swap(aug.row(next), aug.row(sel));
        for (std::size_t i = 0; i < nb; ++i)
            if (i != next && aug.get(i, col)) aug.row(i) ^= aug.row(next);
        pivots.push_back(col);
        ++next;
    }
    BitVec w = v, coeff(nb);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (w.get(pivots[i])) {
            for (std::size_t j = 0; j < basis.cols(); ++j)
                if (aug.get(i, j)) w.flip(j);
            for (std::size_t j = 0; j < nb; ++j)
                if (aug.get(i, basis.cols() + j)) coeff.flip(j);
        }
    }
    if (!w.zero()) return std::nullopt;
    return coeff;
}

int symplectic_product(const BitVec& u, const BitVec& v) {
    if (u.size() != v.size() || (u.size() & 1))
        throw std::invalid_argument("symplectic product needs equal even lengths");
    std::size_t n = u.size() / 2;
    bool acc = false;
    acc ^= u.slice(0, n).dot(v.slice(n, 2 * n));
    acc ^= v.slice(0, n).dot(u.slice(n, 2 * n));
    return acc ? 1 : 0;
}

BitMatrix omega(std::size_t n) {
    BitMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, n + i, true);
        m.set(n + i, i, true);
    }
    return m;
}

bool is_symplectic(const BitMatrix& f) {
    if (f.rows() != f.cols() || (f.rows() & 1)) return false;
    BitMatrix om = omega(f.rows() / 2);
    return mul(mul(f.transpose(), om), f) == om;
}

namespace {

// rref where the pivot in each row is chosen among allowed columns only.
struct ConstrainedRref {
    BitMatrix mat;
    std::vector<std::size_t> pivots;
    bool ok;
};

ConstrainedRref rref_avoiding(const BitMatrix& m, const std::vector<bool>& forbidden) {
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        if (forbidden[col]) continue;
        std::size_t sel = rows.size();
        for (std::size_t i = next; i < rows.size(); ++i)
            if (rows[i].get(col)) { sel = i; break; }
        if (sel == rows.size()) continue;
        std::swap(rows[next], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != next && rows[i].get(col)) rows[i] ^= rows[next];
        pivots.push_back(col);
        ++next;
    }
    bool ok = true;
    for (std::size_t i = next; i < rows.size(); ++i)
        if (!rows[i].zero()) ok = false;
    rows.resize(next, BitVec(m.cols()));
    ConstrainedRref out;
    out.mat = rows.empty() ? BitMatrix(0, m.cols()) : BitMatrix::from_rows(std::move(rows));
    out.pivots = std::move(pivots);
    out.ok = ok;
    return out;
}

Perm order_to_perm(const std::vector<std::size_t>& order) {
    // order[new] = old; apply_perm wants old -> new.
    Perm p(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) p[order[i]] = i;
    return p;
}

}  // namespace

StandardFormCss standard_form_css(const BitMatrix& hx, const BitMatrix& hz) {
    std::size_t n = hx.cols();
    if (hz.cols() != n) throw std::invalid_argument("hx/hz column mismatch");
    Rref rx = rref(hx);
    if (rx.pivots.size() != hx.rows()) throw std::invalid_argument("hx not full row rank");
    std::vector<bool> taken(n, false);
    for (auto p : rx.pivots) taken[p] = true;
    ConstrainedRref rz = rref_avoiding(hz, taken);
    if (!rz.ok || rz.pivots.size() != hz.rows())
        throw std::invalid_argument("hz not full row rank or inconsistent with hx");

    std::size_t r = rx.pivots.size(), t = rz.pivots.size(), k = n - r - t;
    std::vector<std::size_t> order;  // order[new] = old
    order.insert(order.end(), rx.pivots.begin(), rx.pivots.end());
    order.insert(order.end(), rz.pivots.begin(), rz.pivots.end());
    std::vector<bool> used(n, false);
    for (auto c : order) used[c] = true;
    for (std::size_t c = 0; c < n; ++c) if (!used[c]) order.push_back(c);

    Perm p = order_to_perm(order);
    BitMatrix px = rx.mat.permute_cols(p);
    BitMatrix pz = rz.mat.permute_cols(p);

    StandardFormCss out;
    out.r = r;
    out.a1 = px.submatrix(0, r, r, r + t);
    out.a2 = px.submatrix(0, r, r + t, n);
    out.d = pz.submatrix(0, t, 0, r);
    out.e = pz.submatrix(0, t, r + t, n);
    out.qubit_order = order;
    (void)k;
    return out;
}

StandardFormGen standard_form_gen(const BitMatrix& h, std::size_t n) {
    if (h.cols() != 2 * n) throw std::invalid_argument("h must have 2n columns");
    // Row-reduce on the X half first.
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < h.rows(); ++i) rows.push_back(h.row(i));
    std::vector<std::size_t> xpiv;
    std::size_t next = 0;
    for (std::size_t col = 0; col < n && next < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t i = next; i < rows.size(); ++i)
            if (rows[i].get(col)) { sel = i; break; }
        if (sel == rows.size()) continue;
        std::swap(rows[next], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != next && rows[i].get(col)) rows[i] ^= rows[next];
        xpiv.push_back(col);
        ++next;
    }
    std::size_t r = xpiv.size();
    // Remaining rows are pure-Z; reduce their Z half avoiding X pivots.
    std::vector<bool> taken(n, false);
    for (auto p : xpiv) taken[p] = true;
    std::vector<std::size_t> zpiv;
    std::size_t znext = r;
    for (std::size_t col = 0; col < n && znext < rows.size(); ++col) {
        if (taken[col]) continue;
        std::size_t sel = rows.size();
        for (std::size_t i = znext; i < rows.size(); ++i)
            if (rows[i].get(n + col)) { sel = i; break; }
        if (sel == rows.size()) continue;
        std::swap(rows[znext], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != znext && rows[i].get(n + col)) rows[i] ^= rows[znext];
        zpiv.push_back(col);
        ++znext;
    }
    if (znext != rows.size()) throw std::invalid_argument("h not full row rank");
    std::size_t t = zpiv.size(), k = n - r - t;

    std::vector<std::size_t> order;
    order.insert(order.end(), xpiv.begin(), xpiv.end());
    order.insert(order.end(), zpiv.begin(), zpiv.end());
    std::vector<bool> used(n, false);
    for (auto c : order) used[c] = true;
    for (std::size_t c = 0; c < n; ++c) if (!used[c]) order.push_back(c);
    Perm qp = order_to_perm(order);
    Perm full(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        full[i] = qp[i];
        full[n + i] = n + qp[i];
    }
    BitMatrix hp = BitMatrix::from_rows(std::move(rows)).permute_cols(full);

    StandardFormGen out;
    out.r = r;
    out.a1 = hp.submatrix(0, r, r, r + t);
    out.a2 = hp.submatrix(0, r, r + t, n);
    out.b = hp.submatrix(0, r, n, n + r);
    out.c = hp.submatrix(0, r, n + r + t, 2 * n);
    out.d = hp.submatrix(r, r + t, n, n + r);
    out.e = hp.submatrix(r, r + t, n + r + t, 2 * n);
    out.qubit_order = order;
    (void)k;
    return out;
}

BlockPldu block_pldu(const BitMatrix& x, std::size_t split) {
    std::size_t m2 = x.rows();
    if (x.cols() != m2 || split > m2) throw std::invalid_argument("bad PLDU input");
    if (!is_invertible(x)) throw std::invalid_argument("PLDU requires invertible input");
    std::size_t m = split;
    // Pick m rows whose restriction to the first m columns is invertible,
    // scanning top-down (deterministic pivoting).
    std::vector<std::size_t> chosen;
    BitMatrix work(0, m);
    for (std::size_t i = 0; i < m2 && chosen.size() < m; ++i) {
        BitMatrix cand = work;
        cand.append_row(x.row(i).slice(0, m));
        if (rank(cand) == cand.rows()) {
            work = std::move(cand);
            chosen.push_back(i);
        }
    }
    if (chosen.size() != m) throw std::invalid_argument("PLDU: leading columns rank-deficient");
    std::vector<bool> picked(m2, false);
    for (auto i : chosen) picked[i] = true;
    std::vector<std::size_t> order = chosen;  // order[new] = old
    for (std::size_t i = 0; i < m2; ++i) if (!picked[i]) order.push_back(i);

    // P places row order[j] at position j: P = perm matrix with rows scattered.
    BitMatrix p(m2, m2);
    for (std::size_t j = 0; j < m2; ++j) p.set(order[j], j, true);
    BitMatrix y = mul(p.transpose(), x);  // = P^{-1} X, has invertible top-left block

    BitMatrix a = y.submatrix(0, m, 0, m);
    BitMatrix b = y.submatrix(0, m, m, m2);
    BitMatrix c = y.submatrix(m, m2, 0, m);
    BitMatrix d = y.submatrix(m, m2, m, m2);
    BitMatrix ainv = *inverse(a);
    BitMatrix l = mul(c, ainv);
    BitMatrix u = mul(ainv, b);
    // Schur complement D - C A^{-1} B.
    BitMatrix cab = mul(mul(c, ainv), b);
    BitMatrix c2(m2 - m, m2 - m);
    for (std::size_t i = 0; i < m2 - m; ++i) c2.row(i) = d.row(i) ^ cab.row(i);

    BlockPldu out;
    out.p = std::move(p);
    out.l = std::move(l);
    out.c1 = std::move(a);
    out.c2 = std::move(c2);
    out.u = std::move(u);
    return out;
}

std::pair<BitMatrix, BitMatrix> gl_sum_split(const BitMatrix& u) {
    std::size_t k = u.rows();
    if (u.cols() != k) throw std::invalid_argument("gl_sum_split needs a square matrix");
    if (k == 0) throw std::invalid_argument("gl_sum_split: empty matrix");
    if (k == 1) {
        if (u.get(0, 0)) throw std::invalid_argument("1x1 matrix [1] has no GL+GL split");
        BitMatrix one = BitMatrix::identity(1);
        return {one, one};
    }
    if (k * k > 36) {
        // Lexicographic scan is impractical; fall back to a deterministic seeded
        // scan over invertible candidates.
        std::mt19937_64 rng(0x5eed);
        while (true) {
            BitMatrix u1 = BitMatrix::random_invertible(k, rng);
            BitMatrix u2 = u;
            for (std::size_t i = 0; i < k; ++i) u2.row(i) ^= u1.row(i);
            if (is_invertible(u2)) return {u1, u2};
        }
    }
    std::uint64_t total = std::uint64_t{1} << (k * k);
    for (std::uint64_t key = 0; key < total; ++key) {
        BitMatrix u1 = matrix_from_key(key, k);
        if (!is_invertible(u1)) continue;
        BitMatrix u2 = u;
        for (std::size_t i = 0; i < k; ++i) u2.row(i) ^= u1.row(i);
        if (is_invertible(u2)) return {u1, u2};
    }
    throw std::runtime_error("gl_sum_split: no split found");
}

std::vector<BitMatrix> gl_group(std::size_t k) {
    std::vector<BitMatrix> out;
    std::uint64_t total = std::uint64_t{1} << (k * k);
    for (std::uint64_t key = 0; key < total; ++key) {
        BitMatrix m = matrix_from_key(key, k);
        if (is_invertible(m)) out.push_back(std::move(m));
    }
    return out;
}

std::uint64_t matrix_key(const BitMatrix& m) {
    std::uint64_t key = 0;
    std::size_t k = m.cols();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (m.get(i, j)) key |= std::uint64_t{1} << ((m.rows() - 1 - i) * k + (k - 1 - j));
    return key;
}

BitMatrix matrix_from_key(std::uint64_t key, std::size_t k) {
    BitMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if ((key >> ((k - 1 - i) * k + (k - 1 - j))) & 1) m.set(i, j, true);
    return m;
}

}  // namespace phantom
