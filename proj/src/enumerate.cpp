#include "phantom/enumerate.hpp"

#include "phantom/phantom.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace phantom {

std::size_t CodeDatabase::total_classes() const {
    std::size_t t = 0;
    for (const auto& [k, layer] : layers) t += layer.size();
    return t;
}

std::vector<CssCode> extend_codes(const CssCode& seed_in) {
    CssCode seed = seed_in;
    ensure_logicals(seed);
    std::size_t k1 = seed.k;  // seed encodes k+1 logicals
    std::vector<CssCode> out;
    std::uint64_t end = std::uint64_t{1} << k1;
    for (std::uint64_t a = 1; a < end; ++a) {
        BitVec xrow(seed.n), zrow(seed.n);
        for (std::size_t i = 0; i < k1; ++i)
            if ((a >> i) & 1) {
                xrow ^= seed.logicals->lx.row(i);
                zrow ^= seed.logicals->lz.row(i);
            }
        if (seed.rx() + 1 <= seed.rz()) {
            BitMatrix hx = seed.hx;
            hx.append_row(xrow);
            out.push_back(make_css(hx, seed.hz));
        }
        BitMatrix hz = seed.hz;
        hz.append_row(zrow);
        out.push_back(make_css(seed.hx, hz));
    }
    return out;
}

CodeDatabase enumerate_all(std::size_t n, const EnumerateOptions& opts) {
    CodeDatabase db;
    db.n = n;
    CssCode trivial = make_css(BitMatrix(0, n), BitMatrix(0, n));
    ClassInfo triv_info;
    triv_info.rep = trivial;
    db.layers[n].emplace(canonical_form(trivial), std::move(triv_info));

    for (std::size_t k = n; k-- > opts.k_min;) {
        auto& next = db.layers[k];
        for (const auto& [form, seed] : db.layers[k + 1]) {
            for (auto& cand : extend_codes(seed.rep)) {
                CanonicalForm cf = canonical_form(cand);
                if (next.count(cf)) continue;
                ClassInfo info;
                info.rep = std::move(cand);
                next.emplace(std::move(cf), std::move(info));
            }
        }
    }
    if (opts.compute_distances) {
        for (auto& [k, layer] : db.layers) {
            if (k == 0) continue;
            for (auto& [form, info] : layer) {
                auto d = distance_css(info.rep);
                info.dx = d.dx;
                info.dz = d.dz;
            }
        }
    }
    return db;
}

void filter_phantom(CodeDatabase& db, std::size_t min_d) {
    for (auto& [k, layer] : db.layers) {
        if (k < 2) continue;
        for (auto& [form, info] : layer) {
            if (std::min(info.dx, info.dz) < min_d) continue;
            PermActionGroup g = perm_action_group(info.rep);
            info.k_levels.assign(k, false);
            info.k_levels[0] = supports_any_cnot(g);
            for (std::size_t p = 2; p <= k; ++p)
                info.k_levels[p - 1] = supports_weak_phantom(g, p);
            info.phantom_checked = true;
        }
    }
}

std::vector<CountsRow> phantom_counts(const CodeDatabase& db) {
    // (k, dx <= dz) -> row
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, CountsRow> rows;
    for (const auto& [k, layer] : db.layers) {
        if (k < 2) continue;
        for (const auto& [form, info] : layer) {
            std::size_t lo = std::min(info.dx, info.dz), hi = std::max(info.dx, info.dz);
            if (lo < 2) continue;
            auto& row = rows[{k, lo, hi}];
            row.n = db.n;
            row.k = k;
            row.dx = lo;
            row.dz = hi;
            row.m_k.resize(k, 0);
            ++row.m;
            for (std::size_t p = 1; p <= k && info.phantom_checked; ++p)
                if (info.k_levels[p - 1]) ++row.m_k[p - 1];
        }
    }
    std::vector<CountsRow> out;
    for (auto& [key, row] : rows) out.push_back(std::move(row));
    return out;
}

std::vector<CountsRow> all_counts(const CodeDatabase& db) {
    std::map<std::pair<std::size_t, std::size_t>, CountsRow> rows;
    for (const auto& [k, layer] : db.layers) {
        if (k == 0) continue;
        for (const auto& [form, info] : layer) {
            std::size_t d = std::min(info.dx, info.dz);
            auto& row = rows[{k, d}];
            row.n = db.n;
            row.k = k;
            row.dx = row.dz = d;
            ++row.m;
        }
    }
    std::vector<CountsRow> out;
    for (auto& [key, row] : rows) out.push_back(std::move(row));
    return out;
}

std::string counts_csv(const std::vector<CountsRow>& rows) {
    std::size_t max_k = 0;
    for (const auto& r : rows) max_k = std::max(max_k, r.m_k.size());
    std::string s = "n,k,dx,dz,M";
    for (std::size_t p = 1; p <= max_k; ++p) s += ",M_K" + std::to_string(p);
    s += "\n";
    for (const auto& r : rows) {
        s += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.dx) + "," +
             std::to_string(r.dz) + "," + std::to_string(r.m);
        for (std::size_t p = 0; p < max_k; ++p)
            s += "," + (p < r.m_k.size() ? std::to_string(r.m_k[p]) : std::string());
        s += "\n";
    }
    return s;
}

namespace {

nlohmann::json matrix_rows_json(const BitMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).str());
    return rows;
}

BitMatrix matrix_from_json(const nlohmann::json& rows, std::size_t n) {
    BitMatrix m(0, n);
    for (const auto& r : rows) m.append_row(BitVec::from_string(r.get<std::string>()));
    return m;
}

}  // namespace

void save_database(const CodeDatabase& db, const std::string& dir) {
    namespace fs = std::filesystem;
    for (const auto& [k, layer] : db.layers) {
        fs::path base = fs::path(dir) / std::to_string(db.n) / std::to_string(k);
        fs::create_directories(base);
        std::ofstream forms(base / "forms.bin", std::ios::binary);
        std::ofstream reps(base / "representatives.jsonl");
        nlohmann::json index;
        index["n"] = db.n;
        index["k"] = k;
        index["classes"] = layer.size();
        std::vector<std::size_t> offsets;
        std::size_t off = 0;
        for (const auto& [form, info] : layer) {
            offsets.push_back(off);
            std::uint32_t len = static_cast<std::uint32_t>(form.bytes.size());
            forms.write(reinterpret_cast<const char*>(&len), sizeof len);
            forms.write(form.bytes.data(), static_cast<std::streamsize>(len));
            off += sizeof len + len;
            nlohmann::json rec;
            rec["hx"] = matrix_rows_json(info.rep.hx);
            rec["hz"] = matrix_rows_json(info.rep.hz);
            rec["dx"] = info.dx;
            rec["dz"] = info.dz;
            if (info.phantom_checked) {
                rec["k_levels"] = info.k_levels;
            }
            reps << rec.dump() << "\n";
        }
        index["offsets"] = offsets;
        std::ofstream(base / "index.json") << index.dump(2) << "\n";
    }
}

CodeDatabase load_database(const std::string& dir, std::size_t n) {
    namespace fs = std::filesystem;
    CodeDatabase db;
    db.n = n;
    fs::path root = fs::path(dir) / std::to_string(n);
    if (!fs::exists(root)) throw std::runtime_error("database directory not found");
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        std::size_t k = std::stoul(entry.path().filename().string());
        std::ifstream forms(entry.path() / "forms.bin", std::ios::binary);
        std::ifstream reps(entry.path() / "representatives.jsonl");
        std::string line;
        while (std::getline(reps, line)) {
            std::uint32_t len = 0;
            forms.read(reinterpret_cast<char*>(&len), sizeof len);
            std::string bytes(len, '\0');
            forms.read(bytes.data(), len);
            nlohmann::json rec = nlohmann::json::parse(line);
            ClassInfo info;
            info.rep = make_css(matrix_from_json(rec["hx"], n), matrix_from_json(rec["hz"], n));
            info.dx = rec["dx"].get<std::size_t>();
            info.dz = rec["dz"].get<std::size_t>();
            if (rec.contains("k_levels")) {
                info.k_levels = rec["k_levels"].get<std::vector<bool>>();
                info.phantom_checked = true;
            }
            db.layers[k].emplace(CanonicalForm{std::move(bytes)}, std::move(info));
        }
    }
    return db;
}

std::map<std::size_t, std::map<CanonicalForm, StabilizerCode>> enumerate_all_stabilizer(
    std::size_t n, std::size_t k_min) {
    std::map<std::size_t, std::map<CanonicalForm, StabilizerCode>> layers;
    StabilizerCode trivial = make_stabilizer(BitMatrix(0, 2 * n), n);
    layers[n].emplace(canonical_form(trivial), trivial);
    for (std::size_t k = n; k-- > k_min;) {
        auto& next = layers[k];
        for (const auto& [form, seed_const] : layers[k + 1]) {
            StabilizerCode seed = seed_const;
            ensure_logicals(seed);
            std::size_t k1 = seed.k;
            std::uint64_t end = std::uint64_t{1} << (2 * k1);
            for (std::uint64_t a = 1; a < end; ++a) {
                BitVec row(2 * n);
                for (std::size_t i = 0; i < 2 * k1; ++i)
                    if ((a >> i) & 1) row ^= seed.q->row(i);
                BitMatrix h = seed.h;
                h.append_row(row);
                StabilizerCode cand = make_stabilizer(h, n);
                CanonicalForm cf = canonical_form(cand);
                if (!next.count(cf)) next.emplace(std::move(cf), std::move(cand));
            }
        }
    }
    return layers;
}

}  // namespace phantom
