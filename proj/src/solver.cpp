#include "phantom/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phantom {

namespace {

using Lit = std::uint32_t;  // 2v for +v, 2v+1 for -v (v zero-based)
constexpr std::uint32_t kInvalidRef = UINT32_MAX;

inline Lit mk_lit(int dimacs) {
    std::uint32_t v = static_cast<std::uint32_t>(std::abs(dimacs)) - 1;
    return (v << 1) | (dimacs < 0 ? 1u : 0u);
}
inline Lit neg(Lit l) { return l ^ 1u; }
inline std::uint32_t var(Lit l) { return l >> 1; }

class Cdcl {
public:
    Cdcl(const CnfFormula& f, double timeout) : timeout_(timeout) {
        nvars_ = static_cast<std::uint32_t>(f.num_vars());
        assigns_.assign(nvars_, -1);
        level_.assign(nvars_, 0);
        reason_.assign(nvars_, kInvalidRef);
        activity_.assign(nvars_, 0.0);
        phase_.assign(nvars_, 0);
        watches_.assign(2 * nvars_, {});
        heap_pos_.assign(nvars_, UINT32_MAX);
        for (std::uint32_t v = 0; v < nvars_; ++v) heap_push(v);
        ok_ = true;
        for (const auto& cl : f.clauses()) {
            if (!ok_) break;
            add_input_clause(cl);
        }
    }

    SolveResult run() {
        SolveResult res;
        auto start = std::chrono::steady_clock::now();
        if (!ok_) {
            res.status = SolveStatus::Unsat;
            return res;
        }
        if (propagate() != kInvalidRef) {
            res.status = SolveStatus::Unsat;
            return res;
        }
        std::uint64_t conflicts_total = 0;
        std::uint32_t luby_idx = 1;
        std::uint64_t restart_budget = 128 * luby(luby_idx);
        std::uint64_t conflicts_since_restart = 0;
        std::uint64_t reduce_at = 4000;

        while (true) {
            if (timeout_ > 0 && (conflicts_total & 1023) == 0) {
                double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (dt > timeout_) {
                    res.status = SolveStatus::Timeout;
                    return res;
                }
            }
            std::uint32_t confl = propagate();
            if (confl != kInvalidRef) {
                ++conflicts_total;
                ++conflicts_since_restart;
                if (decision_level() == 0) {
                    res.status = SolveStatus::Unsat;
                    return res;
                }
                std::vector<Lit> learnt;
                std::uint32_t back_lvl, lbd;
                analyze(confl, learnt, back_lvl, lbd);
                backtrack(back_lvl);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kInvalidRef);
                } else {
                    std::uint32_t ref = add_clause_internal(learnt, true, lbd);
                    enqueue(learnt[0], ref);
                }
                var_decay();
                if (learnt_refs_.size() > reduce_at) {
                    reduce_db();
                    reduce_at += 2000;
                }
            } else {
                if (conflicts_since_restart >= restart_budget) {
                    conflicts_since_restart = 0;
                    ++luby_idx;
                    restart_budget = 128 * luby(luby_idx);
                    backtrack(0);
                    continue;
                }
                Lit next = decide();
                if (next == UINT32_MAX) {
                    res.status = SolveStatus::Sat;
                    res.model.assign(nvars_ + 1, false);
                    for (std::uint32_t v = 0; v < nvars_; ++v)
                        res.model[v + 1] = assigns_[v] == 1;
                    return res;
                }
                trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
                enqueue(next, kInvalidRef);
            }
        }
    }

private:
    struct Watch {
        std::uint32_t ref;
        Lit blocker;
    };

    // Clause arena: [header: size<<1 | learnt][lbd if learnt][lits...]
    std::vector<std::uint32_t> arena_;
    std::vector<std::uint32_t> learnt_refs_;

    std::uint32_t clause_size(std::uint32_t ref) const { return arena_[ref] >> 1; }
    bool clause_learnt(std::uint32_t ref) const { return arena_[ref] & 1; }
    std::uint32_t lits_offset(std::uint32_t ref) const { return ref + 1 + (clause_learnt(ref) ? 1 : 0); }
    std::uint32_t& lbd_of(std::uint32_t ref) { return arena_[ref + 1]; }

    void add_input_clause(const std::vector<int>& cl) {
        std::vector<Lit> lits;
        lits.reserve(cl.size());
        for (int d : cl) lits.push_back(mk_lit(d));
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 0; i + 1 < lits.size(); ++i)
            if (lits[i] == neg(lits[i + 1])) return;  // tautology
        // Remove literals already false at level 0; satisfied clause -> skip.
        std::vector<Lit> kept;
        for (Lit l : lits) {
            int8_t v = value(l);
            if (v == 1) return;
            if (v == -1) kept.push_back(l);
        }
        if (kept.empty()) {
            ok_ = false;
            return;
        }
        if (kept.size() == 1) {
            if (!enqueue(kept[0], kInvalidRef)) ok_ = false;
            else if (propagate() != kInvalidRef) ok_ = false;
            return;
        }
        add_clause_internal(kept, false, 0);
    }

    std::uint32_t add_clause_internal(const std::vector<Lit>& lits, bool learnt, std::uint32_t lbd) {
        std::uint32_t ref = static_cast<std::uint32_t>(arena_.size());
        arena_.push_back((static_cast<std::uint32_t>(lits.size()) << 1) | (learnt ? 1 : 0));
        if (learnt) arena_.push_back(lbd);
        for (Lit l : lits) arena_.push_back(l);
        std::uint32_t off = lits_offset(ref);
        watches_[neg(arena_[off])].push_back({ref, arena_[off + 1]});
        watches_[neg(arena_[off + 1])].push_back({ref, arena_[off]});
        if (learnt) learnt_refs_.push_back(ref);
        return ref;
    }

    int8_t value(Lit l) const {
        int8_t a = assigns_[var(l)];
        if (a < 0) return -1;
        return (a ^ static_cast<int8_t>(l & 1)) ? 1 : 0;
    }

    std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

    bool enqueue(Lit l, std::uint32_t from) {
        if (value(l) == 0) return false;
        if (value(l) == 1) return true;
        std::uint32_t v = var(l);
        assigns_[v] = (l & 1) ? 0 : 1;
        level_[v] = decision_level();
        reason_[v] = from;
        trail_.push_back(l);
        return true;
    }

    std::uint32_t propagate() {
        while (qhead_ < trail_.size()) {
            Lit p = trail_[qhead_++];  // p became true; scan watchers of p
            auto& ws = watches_[p];
            std::size_t i = 0, j = 0;
            std::uint32_t conflict = kInvalidRef;
            for (; i < ws.size();) {
                Watch w = ws[i];
                if (value(w.blocker) == 1) {
                    ws[j++] = ws[i++];
                    continue;
                }
                std::uint32_t ref = w.ref;
                std::uint32_t off = lits_offset(ref);
                std::uint32_t sz = clause_size(ref);
                Lit false_lit = neg(p);
                if (arena_[off] == false_lit) std::swap(arena_[off], arena_[off + 1]);
                Lit first = arena_[off];
                if (value(first) == 1) {
                    ws[j++] = {ref, first};
                    ++i;
                    continue;
                }
                bool moved = false;
                for (std::uint32_t k = 2; k < sz; ++k) {
                    if (value(arena_[off + k]) != 0) {
                        std::swap(arena_[off + 1], arena_[off + k]);
                        watches_[neg(arena_[off + 1])].push_back({ref, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    ++i;
                    continue;
                }
                // Unit or conflict.
                ws[j++] = {ref, first};
                ++i;
                if (value(first) == 0) {
                    conflict = ref;
                    qhead_ = trail_.size();
                    while (i < ws.size()) ws[j++] = ws[i++];
                    break;
                }
                enqueue(first, ref);
            }
            ws.resize(j);
            if (conflict != kInvalidRef) return conflict;
        }
        return kInvalidRef;
    }

    void analyze(std::uint32_t confl, std::vector<Lit>& learnt, std::uint32_t& back_lvl,
                 std::uint32_t& lbd) {
        learnt.clear();
        learnt.push_back(0);  // placeholder for the asserting literal
        seen_.assign(nvars_, 0);
        std::uint32_t counter = 0;
        Lit p = UINT32_MAX;
        std::size_t idx = trail_.size();

        std::uint32_t ref = confl;
        do {
            std::uint32_t off = lits_offset(ref);
            std::uint32_t sz = clause_size(ref);
            for (std::uint32_t k = (p == UINT32_MAX ? 0 : 1); k < sz; ++k) {
                Lit q = arena_[off + k];
                std::uint32_t v = var(q);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump(v);
                    if (level_[v] == decision_level()) ++counter;
                    else learnt.push_back(q);
                }
            }
            while (!seen_[var(trail_[idx - 1])]) --idx;
            p = trail_[idx - 1];
            --idx;
            seen_[var(p)] = 0;
            --counter;
            ref = reason_[var(p)];
        } while (counter > 0);
        learnt[0] = neg(p);

        // Clause minimization: drop literals implied by the rest.
        std::vector<Lit> minimized;
        minimized.push_back(learnt[0]);
        for (std::size_t i2 = 1; i2 < learnt.size(); ++i2)
            if (!redundant(learnt[i2])) minimized.push_back(learnt[i2]);
        learnt.swap(minimized);

        back_lvl = 0;
        if (learnt.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t i2 = 2; i2 < learnt.size(); ++i2)
                if (level_[var(learnt[i2])] > level_[var(learnt[max_i])]) max_i = i2;
            std::swap(learnt[1], learnt[max_i]);
            back_lvl = level_[var(learnt[1])];
        }
        std::vector<std::uint32_t> lvls;
        for (Lit l : learnt) lvls.push_back(level_[var(l)]);
        std::sort(lvls.begin(), lvls.end());
        lbd = static_cast<std::uint32_t>(std::unique(lvls.begin(), lvls.end()) - lvls.begin());
    }

    bool redundant(Lit q) {
        std::uint32_t v = var(q);
        std::uint32_t ref = reason_[v];
        if (ref == kInvalidRef) return false;
        std::uint32_t off = lits_offset(ref), sz = clause_size(ref);
        for (std::uint32_t k = 0; k < sz; ++k) {
            Lit l = arena_[off + k];
            if (var(l) == v) continue;
            if (!seen_[var(l)] && level_[var(l)] > 0) return false;
        }
        return true;
    }

    void backtrack(std::uint32_t lvl) {
        if (decision_level() <= lvl) return;
        std::uint32_t bound = trail_lim_[lvl];
        for (std::size_t i = trail_.size(); i-- > bound;) {
            std::uint32_t v = var(trail_[i]);
            phase_[v] = assigns_[v];
            assigns_[v] = -1;
            reason_[v] = kInvalidRef;
            if (heap_pos_[v] == UINT32_MAX) heap_push(v);
        }
        trail_.resize(bound);
        trail_lim_.resize(lvl);
        qhead_ = bound;
    }

    Lit decide() {
        while (!heap_.empty()) {
            std::uint32_t v = heap_[0];
            heap_pop_root();
            if (assigns_[v] < 0) return (v << 1) | (phase_[v] == 1 ? 0u : 1u);
        }
        return UINT32_MAX;
    }

    // --- VSIDS heap ---
    void bump(std::uint32_t v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) {
            for (auto& a : activity_) a *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_pos_[v] != UINT32_MAX) sift_up(heap_pos_[v]);
    }
    void var_decay() { var_inc_ /= 0.95; }

    void heap_push(std::uint32_t v) {
        heap_pos_[v] = static_cast<std::uint32_t>(heap_.size());
        heap_.push_back(v);
        sift_up(heap_pos_[v]);
    }
    void heap_pop_root() {
        std::uint32_t last = heap_.back();
        heap_pos_[heap_[0]] = UINT32_MAX;
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_[0] = last;
            heap_pos_[last] = 0;
            sift_down(0);
        }
    }
    void sift_up(std::uint32_t i) {
        std::uint32_t v = heap_[i];
        while (i > 0) {
            std::uint32_t p = (i - 1) / 2;
            if (activity_[heap_[p]] >= activity_[v]) break;
            heap_[i] = heap_[p];
            heap_pos_[heap_[i]] = i;
            i = p;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
    void sift_down(std::uint32_t i) {
        std::uint32_t v = heap_[i];
        std::uint32_t n = static_cast<std::uint32_t>(heap_.size());
        while (true) {
            std::uint32_t c = 2 * i + 1;
            if (c >= n) break;
            if (c + 1 < n && activity_[heap_[c + 1]] > activity_[heap_[c]]) ++c;
            if (activity_[heap_[c]] <= activity_[v]) break;
            heap_[i] = heap_[c];
            heap_pos_[heap_[i]] = i;
            i = c;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void reduce_db() {
        // Keep locked and low-LBD clauses plus the more recent half of the
        // rest; stale arena slots are simply abandoned.
        std::vector<std::uint32_t> keep, cand;
        for (std::uint32_t ref : learnt_refs_) {
            std::uint32_t off = lits_offset(ref);
            Lit first = arena_[off];
            bool locked = value(first) == 1 && reason_[var(first)] == ref;
            if (locked || lbd_of(ref) <= 3) keep.push_back(ref);
            else cand.push_back(ref);
        }
        std::size_t drop = cand.size() / 2;
        std::vector<std::uint32_t> removed(cand.begin(), cand.begin() + drop);
        for (std::size_t i = drop; i < cand.size(); ++i) keep.push_back(cand[i]);
        if (removed.empty()) return;
        std::sort(removed.begin(), removed.end());
        for (auto& wlist : watches_) {
            std::size_t j = 0;
            for (std::size_t i = 0; i < wlist.size(); ++i)
                if (!std::binary_search(removed.begin(), removed.end(), wlist[i].ref))
                    wlist[j++] = wlist[i];
            wlist.resize(j);
        }
        learnt_refs_.swap(keep);
    }

    static std::uint64_t luby(std::uint32_t i) {
        // 1,1,2,1,1,2,4,1,1,2,1,1,2,4,8,...
        while (true) {
            std::uint32_t k = 1;
            while ((std::uint64_t{1} << k) - 1 < i) ++k;
            if (i == (std::uint64_t{1} << k) - 1) return std::uint64_t{1} << (k - 1);
            i = i - static_cast<std::uint32_t>(std::uint64_t{1} << (k - 1)) + 1;
        }
    }

    std::uint32_t nvars_ = 0;
    bool ok_ = true;
    std::vector<int8_t> assigns_;
    std::vector<std::uint32_t> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int8_t> phase_;
    std::vector<std::vector<Watch>> watches_;
    std::vector<Lit> trail_;
    std::vector<std::uint32_t> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<std::uint8_t> seen_;
    std::vector<std::uint32_t> heap_;
    std::vector<std::uint32_t> heap_pos_;
    double timeout_;
};

}  // namespace

SolverHandle SolverHandle::internal(double timeout_seconds) {
    SolverHandle h;
    h.mode = Mode::Internal;
    h.timeout_seconds = timeout_seconds;
    return h;
}

SolverHandle SolverHandle::external(std::string path, std::vector<std::string> args,
                                    double timeout_seconds) {
    SolverHandle h;
    h.mode = Mode::External;
    h.path = std::move(path);
    h.args = std::move(args);
    h.timeout_seconds = timeout_seconds;
    return h;
}

SolverHandle SolverHandle::from_env(double timeout_seconds) {
    const char* p = std::getenv("PHANTOM_SAT_SOLVER");
    if (p && *p) return external(p, {}, timeout_seconds);
    return internal(timeout_seconds);
}

SolveResult solve_internal(const CnfFormula& f, double timeout_seconds) {
    Cdcl solver(f, timeout_seconds);
    return solver.run();
}

SolveResult solve_external(const CnfFormula& f, const SolverHandle& handle) {
    SolveResult res;
    char tmpl[] = "/tmp/phantom_cnf_XXXXXX";
    int fd = mkstemp(tmpl);
    if (fd < 0) {
        res.message = "cannot create temp file";
        return res;
    }
    {
        std::string dimacs = f.to_dimacs();
        FILE* out = fdopen(fd, "w");
        fwrite(dimacs.data(), 1, dimacs.size(), out);
        fclose(out);
    }
    std::string cmd;
    if (handle.timeout_seconds > 0)
        cmd += "timeout " + std::to_string(static_cast<long>(handle.timeout_seconds + 1)) + " ";
    cmd += handle.path;
    for (const auto& a : handle.args) cmd += " " + a;
    cmd += " ";
    cmd += tmpl;
    cmd += " 2>/dev/null";

    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::remove(tmpl);
        res.message = "cannot run external solver";
        return res;
    }
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    int rc = pclose(pipe);
    std::remove(tmpl);

    res.status = SolveStatus::Error;
    std::istringstream lines(output);
    std::string line;
    std::vector<bool> model(static_cast<std::size_t>(f.num_vars()) + 1, false);
    bool have_status = false;
    while (std::getline(lines, line)) {
        if (line.rfind("s SATISFIABLE", 0) == 0) {
            res.status = SolveStatus::Sat;
            have_status = true;
        } else if (line.rfind("s UNSATISFIABLE", 0) == 0) {
            res.status = SolveStatus::Unsat;
            have_status = true;
        } else if (!line.empty() && line[0] == 'v') {
            std::istringstream vs(line.substr(1));
            long lit;
            while (vs >> lit) {
                if (lit == 0) continue;
                std::size_t v = static_cast<std::size_t>(std::labs(lit));
                if (v < model.size()) model[v] = lit > 0;
            }
        }
    }
    if (!have_status) {
        res.status = (rc == 124 * 256) ? SolveStatus::Timeout : SolveStatus::Error;
        res.message = "no status line from external solver";
        return res;
    }
    if (res.status == SolveStatus::Sat) res.model = std::move(model);
    return res;
}

SolveResult solve(const CnfFormula& f, const SolverHandle& handle) {
    if (handle.mode == SolverHandle::Mode::External) return solve_external(f, handle);
    return solve_internal(f, handle.timeout_seconds);
}

}  // namespace phantom
