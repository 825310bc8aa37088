#include "phantom/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace phantom {

CnfFormula::CnfFormula() {
    int t = new_var();
    add_clause({t});
}

void CnfFormula::add_clause(std::vector<int> lits) {
    for (int l : lits)
        if (l == 0 || std::abs(l) > nvars_) throw std::invalid_argument("bad literal");
    clauses_.push_back(std::move(lits));
}

int CnfFormula::xor3(int a, int b, int c) {
    int d = new_var();
    // d <-> a ^ b ^ c: one clause per assignment of (a, b, c).
    for (int sa : {1, -1})
        for (int sb : {1, -1})
            for (int sc : {1, -1}) {
                bool p = (sa > 0) ^ (sb > 0) ^ (sc > 0);
                add_clause({-sa * a, -sb * b, -sc * c, p ? d : -d});
            }
    return d;
}

void CnfFormula::xor_clause(std::span<const int> lits, bool parity) {
    if (lits.empty()) {
        if (parity) add_clause({false_lit()});
        return;
    }
    // Fold constants and duplicate-free reduction is left to the solver; only
    // strip the pinned constant for compactness.
    std::vector<int> work;
    for (int l : lits) {
        if (l == true_lit()) parity = !parity;
        else if (l == false_lit()) continue;
        else work.push_back(l);
    }
    if (work.empty()) {
        if (parity) add_clause({false_lit()});
        return;
    }
    while (work.size() > 3) {
        std::vector<int> next;
        std::size_t i = 0;
        for (; i + 2 < work.size(); i += 3) next.push_back(xor3(work[i], work[i + 1], work[i + 2]));
        for (; i < work.size(); ++i) next.push_back(work[i]);
        work.swap(next);
    }
    // Direct CNF of xor(work) = parity.
    std::size_t m = work.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        bool p = false;
        for (std::size_t i = 0; i < m; ++i) p ^= (mask >> i) & 1;
        if (p == parity) continue;  // satisfying assignments stay allowed
        std::vector<int> cl(m);
        for (std::size_t i = 0; i < m; ++i)
            cl[i] = ((mask >> i) & 1) ? -work[i] : work[i];
        add_clause(std::move(cl));
    }
}

int CnfFormula::xor_lit(std::span<const int> lits) {
    bool parity = false;
    std::vector<int> work;
    for (int l : lits) {
        if (l == true_lit()) parity = !parity;
        else if (l == false_lit()) continue;
        else work.push_back(l);
    }
    if (work.empty()) return parity ? true_lit() : false_lit();
    if (work.size() == 1) return parity ? -work[0] : work[0];
    int out = new_var();
    work.push_back(out);
    xor_clause(work, parity);
    return out;
}

int CnfFormula::and_lit(int a, int b) {
    if (a == false_lit() || b == false_lit()) return false_lit();
    if (a == true_lit()) return b;
    if (b == true_lit()) return a;
    if (a == b) return a;
    if (a == -b) return false_lit();
    auto key = std::minmax(a, b);
    auto it = and_cache_.find(key);
    if (it != and_cache_.end()) return it->second;
    int d = new_var();
    add_clause({-d, a});
    add_clause({-d, b});
    add_clause({d, -a, -b});
    and_cache_[key] = d;
    return d;
}

int CnfFormula::or_lit(std::span<const int> lits) {
    std::vector<int> work;
    for (int l : lits) {
        if (l == true_lit()) return true_lit();
        if (l == false_lit()) continue;
        work.push_back(l);
    }
    if (work.empty()) return false_lit();
    if (work.size() == 1) return work[0];
    int d = new_var();
    for (int l : work) add_clause({-l, d});
    std::vector<int> big = work;
    big.push_back(-d);
    add_clause(std::move(big));
    return d;
}

void CnfFormula::at_most_one(std::span<const int> lits) {
    for (std::size_t i = 0; i < lits.size(); ++i)
        for (std::size_t j = i + 1; j < lits.size(); ++j)
            add_clause({-lits[i], -lits[j]});
}

void CnfFormula::exactly_one(std::span<const int> lits) {
    add_clause(std::vector<int>(lits.begin(), lits.end()));
    at_most_one(lits);
}

CnfFormula::MatrixVar CnfFormula::new_matrix(std::size_t rows, std::size_t cols) {
    MatrixVar m;
    m.rows = rows;
    m.cols = cols;
    m.lits.resize(rows * cols);
    for (auto& l : m.lits) l = new_var();
    return m;
}

CnfFormula::MatrixVar CnfFormula::constant_matrix(const BitMatrix& b) {
    MatrixVar m;
    m.rows = b.rows();
    m.cols = b.cols();
    m.lits.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            m.at(i, j) = b.get(i, j) ? true_lit() : false_lit();
    return m;
}

CnfFormula::MatrixVar CnfFormula::permutation_var(std::size_t n, bool involution) {
    MatrixVar m;
    m.rows = m.cols = n;
    m.lits.resize(n * n);
    if (involution) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                int v = new_var();
                m.at(i, j) = v;
                m.at(j, i) = v;
            }
    } else {
        for (auto& l : m.lits) l = new_var();
    }
    std::vector<int> group(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) group[j] = m.at(i, j);
        exactly_one(group);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) group[i] = m.at(i, j);
        exactly_one(group);
    }
    return m;
}

std::pair<CnfFormula::MatrixVar, CnfFormula::MatrixVar> CnfFormula::gl_var(std::size_t k) {
    MatrixVar a = new_matrix(k, k);
    MatrixVar ainv = new_matrix(k, k);
    matrix_product_constraint(a, ainv, BitMatrix::identity(k));
    return {a, ainv};
}

CnfFormula::MatrixVar CnfFormula::matrix_product(const MatrixVar& a, const MatrixVar& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix product shape mismatch");
    MatrixVar c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.lits.resize(c.rows * c.cols);
    std::vector<int> terms;
    for (std::size_t i = 0; i < c.rows; ++i)
        for (std::size_t j = 0; j < c.cols; ++j) {
            terms.clear();
            for (std::size_t l = 0; l < a.cols; ++l)
                terms.push_back(and_lit(a.at(i, l), b.at(l, j)));
            c.at(i, j) = xor_lit(terms);
        }
    return c;
}

void CnfFormula::matrix_product_constraint(const MatrixVar& a, const MatrixVar& b,
                                           const BitMatrix& cval) {
    if (a.cols != b.rows || a.rows != cval.rows() || b.cols != cval.cols())
        throw std::invalid_argument("matrix product shape mismatch");
    std::vector<int> terms;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            terms.clear();
            for (std::size_t l = 0; l < a.cols; ++l)
                terms.push_back(and_lit(a.at(i, l), b.at(l, j)));
            xor_clause(terms, cval.get(i, j));
        }
}

void CnfFormula::matrix_equals(const MatrixVar& a, const BitMatrix& value) {
    if (a.rows != value.rows() || a.cols != value.cols())
        throw std::invalid_argument("matrix_equals shape mismatch");
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            add_clause({value.get(i, j) ? a.at(i, j) : -a.at(i, j)});
}

CnfFormula::MatrixVar CnfFormula::transpose(const MatrixVar& a) {
    MatrixVar t;
    t.rows = a.cols;
    t.cols = a.rows;
    t.lits.resize(t.rows * t.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            t.at(j, i) = a.at(i, j);
    return t;
}

bool CnfFormula::lit_value(const std::vector<bool>& model, int lit) const {
    bool v = model[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : !v;
}

BitMatrix CnfFormula::decode_matrix(const std::vector<bool>& model, const MatrixVar& m) const {
    BitMatrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out.set(i, j, lit_value(model, m.at(i, j)));
    return out;
}

std::string CnfFormula::to_dimacs() const {
    std::string s = "p cnf " + std::to_string(nvars_) + " " + std::to_string(clauses_.size()) + "\n";
    for (const auto& cl : clauses_) {
        for (int l : cl) {
            s += std::to_string(l);
            s += ' ';
        }
        s += "0\n";
    }
    return s;
}

}  // namespace phantom
