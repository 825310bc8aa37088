#include "phantom/tanner.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace phantom {

namespace {

std::uint32_t vec_mask(const BitVec& v) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) m |= 1u << i;
    return m;
}

std::vector<std::uint32_t> group_elements(const BitMatrix& gens) {
    std::vector<std::uint32_t> rows;
    for (std::size_t i = 0; i < gens.rows(); ++i) rows.push_back(vec_mask(gens.row(i)));
    std::vector<std::uint32_t> out;
    std::uint32_t cur = 0;
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << rows.size()); ++g) {
        cur ^= rows[std::countr_zero(g)];
        out.push_back(cur);
    }
    return out;
}

}  // namespace

TannerGraph expanded_tanner(const CssCode& code) {
    if (code.n > 32) throw std::invalid_argument("expanded_tanner: n > 32");
    TannerGraph g;
    g.n = code.n;
    for (auto m : group_elements(code.hx)) g.elems.push_back({m, 0, 1});
    for (auto m : group_elements(code.hz)) g.elems.push_back({0, m, 2});
    return g;
}

TannerGraph expanded_tanner(const StabilizerCode& code) {
    if (code.n > 32) throw std::invalid_argument("expanded_tanner: n > 32");
    TannerGraph g;
    g.n = code.n;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rows;
    for (std::size_t i = 0; i < code.h.rows(); ++i) {
        BitVec r = code.h.row(i);
        rows.push_back({vec_mask(r.slice(0, code.n)), vec_mask(r.slice(code.n, 2 * code.n))});
    }
    std::uint32_t cx = 0, cz = 0;
    for (std::uint64_t gidx = 1; gidx < (std::uint64_t{1} << rows.size()); ++gidx) {
        int b = std::countr_zero(gidx);
        cx ^= rows[b].first;
        cz ^= rows[b].second;
        g.elems.push_back({cx, cz, 3});
    }
    return g;
}

namespace {

// Canonical serialization by branch-and-bound over qubit orders.
//
// Given a qubit order, the graph serializes as the sorted list of element keys
// (part, weight, edge-colour string in that qubit order); the canonical form
// is the minimum over all orders. Sorted key lists compare prefix-
// monotonically in the number of placed qubits, which gives the bound; twin
// qubits (identical columns) collapse to a single branch.
class Canonicalizer {
public:
    explicit Canonicalizer(const TannerGraph& g) : g_(g), ne_(g.elems.size()) {
        base_.resize(ne_);
        for (std::size_t e = 0; e < ne_; ++e) {
            const auto& el = g_.elems[e];
            int w = std::popcount(el.xmask | el.zmask);
            base_[e] = static_cast<std::uint16_t>((el.part << 8) | w);
        }
        // Global twin groups: identical columns.
        twin_rep_.assign(g_.n, 0);
        for (std::size_t q = 0; q < g_.n; ++q) {
            twin_rep_[q] = q;
            for (std::size_t p = 0; p < q; ++p)
                if (same_column(p, q)) { twin_rep_[q] = p; break; }
        }
    }

    std::string run(Perm* qubit_label) {
        std::vector<Keys> keys(ne_);
        for (std::size_t e = 0; e < ne_; ++e) keys[e] = {base_[e], 0, e};
        std::vector<std::size_t> chosen;
        std::vector<bool> used(g_.n, false);
        have_best_ = false;
        dfs(keys, chosen, used);
        if (qubit_label) {
            qubit_label->assign(g_.n, 0);
            for (std::size_t pos = 0; pos < g_.n; ++pos) (*qubit_label)[best_order_[pos]] = pos;
        }
        return serialize(best_keys_);
    }

private:
    struct Keys {
        std::uint16_t pw = 0;
        std::uint64_t bits = 0;  // 2 bits per placed qubit, high bits first
        std::size_t elem = 0;
        bool operator<(const Keys& o) const {
            return pw != o.pw ? pw < o.pw : bits < o.bits;
        }
    };

    int edge_color(std::size_t q, std::size_t e) const {
        const auto& el = g_.elems[e];
        return static_cast<int>(((el.xmask >> q) & 1) | (((el.zmask >> q) & 1) << 1));
    }

    bool same_column(std::size_t p, std::size_t q) const {
        for (std::size_t e = 0; e < ne_; ++e)
            if (edge_color(p, e) != edge_color(q, e)) return false;
        return true;
    }

    std::vector<Keys> extended(const std::vector<Keys>& keys, std::size_t q,
                               std::size_t depth) const {
        std::vector<Keys> out = keys;
        int shift = 2 * static_cast<int>(31 - depth);
        for (auto& k : out)
            k.bits |= static_cast<std::uint64_t>(edge_color(q, k.elem)) << shift;
        std::sort(out.begin(), out.end());
        return out;
    }

    // -1: a < b, 0: equal, 1: a > b (comparing only (pw, bits)).
    static int cmp(const std::vector<Keys>& a, const std::vector<Keys>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].pw != b[i].pw) return a[i].pw < b[i].pw ? -1 : 1;
            if (a[i].bits != b[i].bits) return a[i].bits < b[i].bits ? -1 : 1;
        }
        return 0;
    }

    void dfs(const std::vector<Keys>& keys, std::vector<std::size_t>& chosen,
             std::vector<bool>& used) {
        std::size_t depth = chosen.size();
        if (depth == g_.n) {
            if (!have_best_ || cmp(keys, best_keys_) < 0) {
                have_best_ = true;
                best_keys_ = keys;
                best_order_ = chosen;
                best_partials_.assign(g_.n + 1, {});
                // Partial views of the incumbent for pruning.
                std::vector<Keys> partial(ne_);
                for (std::size_t e = 0; e < ne_; ++e) partial[e] = {base_[e], 0, e};
                std::sort(partial.begin(), partial.end());
                best_partials_[0] = partial;
                std::vector<Keys> acc(ne_);
                for (std::size_t e = 0; e < ne_; ++e) acc[e] = {base_[e], 0, e};
                for (std::size_t d = 0; d < g_.n; ++d) {
                    int shift = 2 * static_cast<int>(31 - d);
                    for (auto& k : acc)
                        k.bits |= static_cast<std::uint64_t>(edge_color(chosen[d], k.elem)) << shift;
                    std::vector<Keys> s = acc;
                    std::sort(s.begin(), s.end());
                    best_partials_[d + 1] = std::move(s);
                }
            }
            return;
        }
        // Candidates: one representative per twin group, each extended and
        // explored in ascending partial-key order.
        std::vector<std::pair<std::vector<Keys>, std::size_t>> cands;
        std::vector<bool> group_done(g_.n, false);
        for (std::size_t q = 0; q < g_.n; ++q) {
            if (used[q]) continue;
            std::size_t rep = twin_rep_[q];
            // first unused member of the twin group stands for all of them
            if (group_done[rep]) continue;
            group_done[rep] = true;
            cands.push_back({extended(keys, q, depth), q});
        }
        std::sort(cands.begin(), cands.end(),
                  [](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
        for (auto& [ext, q] : cands) {
            if (have_best_ && cmp(ext, best_partials_[depth + 1]) > 0) continue;
            chosen.push_back(q);
            used[q] = true;
            dfs(ext, chosen, used);
            used[q] = false;
            chosen.pop_back();
        }
    }

    std::string serialize(const std::vector<Keys>& keys) const {
        std::string s;
        s += static_cast<char>(g_.n);
        s += static_cast<char>(ne_ & 0xff);
        s += static_cast<char>((ne_ >> 8) & 0xff);
        for (const auto& k : keys) {
            s += static_cast<char>(k.pw >> 8);
            s += static_cast<char>(k.pw & 0xff);
            for (int b = 7; b >= 0; --b) s += static_cast<char>((k.bits >> (8 * b)) & 0xff);
        }
        return s;
    }

    const TannerGraph& g_;
    std::size_t ne_;
    std::vector<std::uint16_t> base_;
    std::vector<std::size_t> twin_rep_;
    bool have_best_ = false;
    std::vector<Keys> best_keys_;
    std::vector<std::size_t> best_order_;
    std::vector<std::vector<Keys>> best_partials_;
};

}  // namespace

std::string canonical_serialization(const TannerGraph& g) {
    Canonicalizer c(g);
    return c.run(nullptr);
}

Perm canonical_label(const TannerGraph& g) {
    Canonicalizer c(g);
    Perm p;
    c.run(&p);
    return p;
}

CanonicalForm canonical_form(const CssCode& code) {
    std::string a = canonical_serialization(expanded_tanner(code));
    std::string b = canonical_serialization(expanded_tanner(hadamard_dual(code)));
    return CanonicalForm{std::min(a, b)};
}

CanonicalForm canonical_form(const StabilizerCode& code) {
    std::string a = canonical_serialization(expanded_tanner(code));
    StabilizerCode dual = code;
    // Global Hadamard swaps the X and Z halves of every row.
    for (std::size_t i = 0; i < dual.h.rows(); ++i) {
        BitVec r = dual.h.row(i);
        dual.h.row(i) = r.slice(code.n, 2 * code.n).concat(r.slice(0, code.n));
    }
    dual.q.reset();
    std::string b = canonical_serialization(expanded_tanner(dual));
    return CanonicalForm{std::min(a, b)};
}

}  // namespace phantom
