#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phantom {

/// Dense bit vector over F2, packed LSB-first into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s);
    static BitVec unit(std::size_t n, std::size_t i);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (b) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool zero() const;
    std::size_t weight() const;
    std::size_t count_range(std::size_t lo, std::size_t hi) const;

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    bool operator==(const BitVec&) const = default;

    /// Parity of the overlap <this, o>.
    bool dot(const BitVec& o) const;

    /// Subrange [lo, hi) as a new vector.
    BitVec slice(std::size_t lo, std::size_t hi) const;
    /// Concatenation this ++ o.
    BitVec concat(const BitVec& o) const;

    std::string str() const;
    std::span<const std::uint64_t> words() const { return w_; }
    std::uint64_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Qubit/index permutation: perm[i] is the image of i.
using Perm = std::vector<std::size_t>;

Perm perm_identity(std::size_t n);
Perm perm_inverse(const Perm& p);
/// first applied, then second: (compose(p,q))[i] = q[p[i]].
Perm perm_compose(const Perm& p, const Perm& q);
std::size_t perm_period(const Perm& p);
bool is_perm(const Perm& p);

/// Image of v under the index map i -> p[i].
BitVec apply_perm(const BitVec& v, const Perm& p);

/// Dense matrix over F2, stored row-major as BitVecs.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::vector<BitVec> rows);
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows);
    static BitMatrix random(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
    static BitMatrix random_invertible(std::size_t n, std::mt19937_64& rng);
    static BitMatrix perm_matrix(const Perm& p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    const BitVec& row(std::size_t i) const { return r_[i]; }
    BitVec& row(std::size_t i) { return r_[i]; }
    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool b) { r_[i].set(j, b); }

    void append_row(BitVec v);
    BitMatrix transpose() const;
    BitMatrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    /// Rows of this over rows of o (column counts must match).
    BitMatrix vstack(const BitMatrix& o) const;
    /// Columns of this followed by columns of o (row counts must match).
    BitMatrix hstack(const BitMatrix& o) const;
    /// Column j of the result is column p[j]... i.e. result(i, p[j]) = this(i, j),
    /// matching the action of the qubit permutation j -> p[j] on row supports.
    BitMatrix permute_cols(const Perm& p) const;

    bool operator==(const BitMatrix&) const = default;
    bool is_zero() const;

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

BitMatrix mul(const BitMatrix& a, const BitMatrix& b);
BitVec mul(const BitVec& v, const BitMatrix& m);

struct Rref {
    BitMatrix mat;                    // zero rows dropped
    std::vector<std::size_t> pivots;  // strictly increasing
};

/// Reduced row-echelon form; pivot choice is leftmost column, topmost row.
Rref rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);
/// Basis rows of {v : M v^T = 0}.
BitMatrix kernel(const BitMatrix& m);
std::optional<BitMatrix> inverse(const BitMatrix& m);
bool is_invertible(const BitMatrix& m);

bool in_row_span(const Rref& basis, const BitVec& v);
bool row_span_equal(const BitMatrix& a, const BitMatrix& b);
/// Coefficients c with c * rows(basis) = v, if any.
std::optional<BitVec> solve_row(const BitMatrix& basis, const BitVec& v);

/// <u, v>_S = x_u . z_v + x_v . z_u over the (x|z) split of even-length vectors.
int symplectic_product(const BitVec& u, const BitVec& v);
/// The 2n x 2n form [[0, I], [I, 0]].
BitMatrix omega(std::size_t n);
/// F^T Omega F = Omega for square, even-dimension F.
bool is_symplectic(const BitMatrix& f);

/// Gottesman standard form of a CSS pair: after permuting columns by
/// qubit_order, hx = (I A1 A2) and hz = (D I E) with D^T = A1 + A2 E^T.
/// qubit_order[new] = old.
struct StandardFormCss {
    std::size_t r = 0;        // rank of hx
    BitMatrix a1, a2, d, e;
    Perm qubit_order;
};
StandardFormCss standard_form_css(const BitMatrix& hx, const BitMatrix& hz);

/// Standard form of a full symplectic stabilizer matrix (r x 2n):
/// H = (I A1 A2 | B 0 C ; 0 0 0 | D I E) after permuting qubits.
struct StandardFormGen {
    std::size_t r = 0;        // X-part rank
    BitMatrix a1, a2, b, c, d, e;
    Perm qubit_order;
};
StandardFormGen standard_form_gen(const BitMatrix& h, std::size_t n);

/// X = P [[I,0],[L,I]] diag(C1,C2) [[I,U],[0,I]] with C1, C2 invertible.
struct BlockPldu {
    BitMatrix p, l, c1, c2, u;
};
BlockPldu block_pldu(const BitMatrix& x, std::size_t split);

/// U = U1 + U2 with both invertible; first witness in lexicographic scan order.
/// Requires k >= 2, or k == 1 with U == 0.
std::pair<BitMatrix, BitMatrix> gl_sum_split(const BitMatrix& u);

/// All elements of GL(k, F2) in lexicographic bit order (row-major, row 0 most
/// significant). Practical for k <= 4.
std::vector<BitMatrix> gl_group(std::size_t k);

/// Pack a k x k bit matrix into an integer key (k <= 8).
std::uint64_t matrix_key(const BitMatrix& m);
BitMatrix matrix_from_key(std::uint64_t key, std::size_t k);

}  // namespace phantom
