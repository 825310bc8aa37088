#include "phantom/enumerate.hpp"

#include "phantom/phantom.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>

using namespace phantom;

namespace {

CssCode code_422() {
    return make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
}

CssCode random_perm_image(const CssCode& c, std::mt19937_64& rng) {
    Perm p = perm_identity(c.n);
    for (std::size_t i = c.n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
    return make_css(c.hx.permute_cols(p), c.hz.permute_cols(p));
}

}  // namespace

TEST_CASE("canonical form is invariant under permutations and Hadamard") {
    std::mt19937_64 rng(3);
    CssCode c = code_422();
    CanonicalForm f = canonical_form(c);
    for (int t = 0; t < 50; ++t) CHECK(canonical_form(random_perm_image(c, rng)) == f);
    CHECK(canonical_form(hadamard_dual(c)) == f);

    BitMatrix hx = BitMatrix::from_strings({"110110", "011011"});
    CssCode c2 = make_css(hx, hx);
    CanonicalForm f2 = canonical_form(c2);
    for (int t = 0; t < 50; ++t) CHECK(canonical_form(random_perm_image(c2, rng)) == f2);
    CHECK(canonical_form(hadamard_dual(c2)) == f2);
    CHECK(f2 != f);
}

TEST_CASE("canonical label matches the factorial oracle at n <= 5") {
    std::mt19937_64 rng(11);
    auto key_vector = [](const TannerGraph& g, const Perm& order) {
        // order[old] = position
        std::vector<std::pair<std::uint16_t, std::uint64_t>> keys;
        for (const auto& el : g.elems) {
            int w = 0;
            std::uint64_t bits = 0;
            for (std::size_t q = 0; q < g.n; ++q) {
                int c = static_cast<int>(((el.xmask >> q) & 1) | (((el.zmask >> q) & 1) << 1));
                if (c) ++w;
                bits |= static_cast<std::uint64_t>(c) << (2 * (31 - order[q]));
            }
            keys.push_back({static_cast<std::uint16_t>((el.part << 8) | w), bits});
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    int tested = 0;
    while (tested < 6) {
        std::size_t n = 4 + rng() % 2;
        BitMatrix hz = BitMatrix::random(2, n, rng);
        Rref rz = rref(hz);
        if (rz.mat.rows() == 0) continue;
        BitMatrix dual = kernel(rz.mat);
        if (dual.rows() == 0) continue;
        BitMatrix hx(0, n);
        hx.append_row(dual.row(0));
        CssCode code;
        try {
            code = make_css(rref(hx).mat, rz.mat);
        } catch (...) {
            continue;
        }
        if (code.rx() == 0) continue;
        ++tested;
        TannerGraph g = expanded_tanner(code);
        Perm best = canonical_label(g);
        auto best_keys = key_vector(g, best);
        // Oracle: minimum over all n! qubit orders.
        Perm order = perm_identity(n);
        std::vector<std::size_t> base(n);
        for (std::size_t i = 0; i < n; ++i) base[i] = i;
        auto min_keys = best_keys;
        do {
            auto kv = key_vector(g, base);
            if (kv < min_keys) min_keys = kv;
        } while (std::next_permutation(base.begin(), base.end()));
        CHECK(best_keys == min_keys);
    }
}

TEST_CASE("enumeration counts at n = 4") {
    CodeDatabase db = enumerate_all(4);
    filter_phantom(db);
    auto rows = all_counts(db);
    auto get = [&](std::size_t k, std::size_t d) -> std::size_t {
        for (const auto& r : rows)
            if (r.k == k && r.dx == d) return r.m;
        return 0;
    };
    CHECK(get(1, 1) == 16);
    CHECK(get(1, 2) == 1);
    CHECK(get(2, 1) == 14);
    CHECK(get(2, 2) == 1);
    CHECK(get(3, 1) == 4);
    CHECK(get(4, 1) == 1);

    auto prows = phantom_counts(db);
    REQUIRE(prows.size() == 1);
    CHECK(prows[0].k == 2);
    CHECK(prows[0].dx == 2);
    CHECK(prows[0].dz == 2);
    CHECK(prows[0].m == 1);
    CHECK(prows[0].m_k == std::vector<std::size_t>{1, 1});
}

TEST_CASE("enumeration counts at n = 5") {
    CodeDatabase db = enumerate_all(5);
    auto rows = all_counts(db);
    auto get = [&](std::size_t k, std::size_t d) -> std::size_t {
        for (const auto& r : rows)
            if (r.k == k && r.dx == d) return r.m;
        return 0;
    };
    CHECK(get(1, 1) == 44);
    CHECK(get(1, 2) == 5);
    CHECK(get(2, 1) == 45);
    CHECK(get(2, 2) == 2);
    CHECK(get(3, 1) == 24);
    CHECK(get(4, 1) == 5);
    CHECK(get(5, 1) == 1);
}

TEST_CASE("enumeration and phantom strata at n = 6") {
    CodeDatabase db = enumerate_all(6);
    filter_phantom(db);
    auto rows = all_counts(db);
    auto get = [&](std::size_t k, std::size_t d) -> std::size_t {
        for (const auto& r : rows)
            if (r.k == k && r.dx == d) return r.m;
        return 0;
    };
    CHECK(get(2, 2) == 15);
    CHECK(get(3, 2) == 2);
    CHECK(get(4, 2) == 1);
    CHECK(get(1, 2) == 21);

    auto prows = phantom_counts(db);
    auto find = [&](std::size_t k, std::size_t lo, std::size_t hi) -> const CountsRow* {
        for (const auto& r : prows)
            if (r.k == k && r.dx == lo && r.dz == hi) return &r;
        return nullptr;
    };
    const CountsRow* r22 = find(2, 2, 2);
    REQUIRE(r22);
    CHECK(r22->m == 15);
    CHECK(r22->m_k[0] == 15);  // M[K1]
    CHECK(r22->m_k[1] == 9);   // M[K2]

    const CountsRow* r32 = find(3, 2, 2);
    REQUIRE(r32);
    CHECK(r32->m == 2);
    CHECK(r32->m_k[0] == 2);
    CHECK(r32->m_k[1] == 2);
    CHECK(r32->m_k[2] == 0);  // no phantom k=3 at n=6

    const CountsRow* r42 = find(4, 2, 2);
    REQUIRE(r42);
    CHECK(r42->m == 1);
    CHECK(r42->m_k[1] == 1);
    CHECK(r42->m_k[2] == 0);
}

TEST_CASE("extension dedup keeps one representative per class") {
    CssCode triv = make_css(BitMatrix(0, 4), BitMatrix(0, 4));
    auto cands = extend_codes(triv);
    CHECK(cands.size() == 15);  // Z-extensions only from the trivial seed
    std::map<CanonicalForm, std::size_t> forms;
    for (const auto& c : cands) ++forms[canonical_form(c)];
    CHECK(forms.size() == 4);  // single-stabilizer classes by weight
}

TEST_CASE("database save/load round trip") {
    CodeDatabase db = enumerate_all(4);
    filter_phantom(db);
    auto dir = std::filesystem::temp_directory_path() / "phantom_db_test";
    std::filesystem::remove_all(dir);
    save_database(db, dir.string());
    CodeDatabase back = load_database(dir.string(), 4);
    CHECK(back.total_classes() == db.total_classes());
    for (const auto& [k, layer] : db.layers) {
        REQUIRE(back.layers.count(k));
        CHECK(back.layers[k].size() == layer.size());
        for (const auto& [form, info] : layer) {
            REQUIRE(back.layers[k].count(form));
            const auto& b = back.layers[k].at(form);
            CHECK(b.dx == info.dx);
            CHECK(b.dz == info.dz);
            CHECK(b.k_levels == info.k_levels);
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("stabilizer (non-CSS) enumeration at n <= 4 is consistent") {
    auto layers = enumerate_all_stabilizer(3, 1);
    std::mt19937_64 rng(17);
    for (auto& [k, layer] : layers) {
        for (auto& [form, code] : layer) {
            StabilizerCode c = code;
            CHECK(validate_stabilizer(c));
            // A random permutation image lands on the same canonical form.
            Perm p = perm_identity(c.n);
            for (std::size_t i = c.n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
            Perm full(2 * c.n);
            for (std::size_t i = 0; i < c.n; ++i) {
                full[i] = p[i];
                full[c.n + i] = c.n + p[i];
            }
            StabilizerCode img = make_stabilizer(c.h.permute_cols(full), c.n);
            CHECK(canonical_form(img) == form);
        }
    }
    // CSS codes form a subset of the stabilizer classes at the same n.
    CodeDatabase css = enumerate_all(3);
    std::size_t css_total = css.total_classes();
    std::size_t stab_total = 0;
    for (auto& [k, layer] : layers) stab_total += layer.size();
    CHECK(stab_total >= css_total);
}
