#include "phantom/code.hpp"

#include <doctest.h>

#include <random>

using namespace phantom;

namespace {

CssCode code_422() {
    return make_css(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}), "[[4,2,2]]");
}

StabilizerCode code_513() {
    // Cyclic XZZXI check matrix.
    BitMatrix h = BitMatrix::from_strings({
        "1001001100",
        "0100100110",
        "1010000011",
        "0101010001",
    });
    return make_stabilizer(h, 5);
}

}  // namespace

TEST_CASE("make_css validates and computes k") {
    CssCode c = code_422();
    CHECK(c.n == 4);
    CHECK(c.k == 2);
    CHECK(validate_css(c));
    CHECK_THROWS(make_css(BitMatrix::from_strings({"1100"}), BitMatrix::from_strings({"1000"})));
}

TEST_CASE("logical basis satisfies the CSS invariants") {
    CssCode c = code_422();
    ensure_logicals(c);
    CHECK(validate_css(c));
    CHECK(mul(c.logicals->lx, c.logicals->lz.transpose()) == BitMatrix::identity(2));

    // Trivial [[n,n]] code: Lx = Lz = I.
    CssCode triv = make_css(BitMatrix(0, 3), BitMatrix(0, 3));
    ensure_logicals(triv);
    CHECK(triv.logicals->lx == BitMatrix::identity(3));
    CHECK(triv.logicals->lz == BitMatrix::identity(3));
}

TEST_CASE("Steane code logicals and distance") {
    BitMatrix h = BitMatrix::from_strings({"1010101", "0110011", "0001111"});
    CssCode steane = make_css(h, h, "[[7,1,3]]");
    CHECK(steane.k == 1);
    ensure_logicals(steane);
    CHECK(validate_css(steane));
    auto d = distance_css(steane);
    CHECK(d.dx == 3);
    CHECK(d.dz == 3);
}

TEST_CASE("[[4,2,2]] distances") {
    auto d = distance_css(code_422());
    CHECK(d.dx == 2);
    CHECK(d.dz == 2);
    CHECK(d.exact);
}

TEST_CASE("distance_stabilizer on [[4,2,2]] and [[5,1,3]]") {
    CssCode c = code_422();
    ensure_logicals(c);
    CHECK(distance_stabilizer(StabilizerCode::from_css(c)) == 2);
    StabilizerCode s = code_513();
    CHECK(s.k == 1);
    CHECK(distance_stabilizer(s) == 3);
}

TEST_CASE("weight-1 logical gives distance 1") {
    CssCode c = make_css(BitMatrix::from_strings({"11"}), BitMatrix(0, 2));
    auto d = distance_css(c);
    CHECK(d.d() == 1);
}

TEST_CASE("hadamard dual swaps sectors and distances") {
    BitMatrix hx = BitMatrix::from_strings({"11111111"});
    BitMatrix hz = BitMatrix::from_strings({"11110000", "11001100", "10101010", "11111111"});
    CssCode c = make_css(hx, hz);
    CHECK(c.k == 3);
    auto d = distance_css(c);
    auto dd = distance_css(hadamard_dual(c));
    CHECK(d.dx == dd.dz);
    CHECK(d.dz == dd.dx);
    CssCode back = hadamard_dual(hadamard_dual(c));
    CHECK(back.hx == c.hx);
    CHECK(back.hz == c.hz);
}

TEST_CASE("[[4,2,2]] logical class weights in the reference basis") {
    CssCode c = code_422();
    c.logicals = LogicalBasisCss{
        BitMatrix::from_strings({"1001", "1100"}),  // X1 = X_1X_4, X2 = X_1X_2
        BitMatrix::from_strings({"1100", "1001"}),  // Z1 = Z_1Z_2, Z2 = Z_1Z_4
    };
    REQUIRE(validate_css(c));

    auto x1 = logical_class_weights(c, BitVec::from_string("1000"));
    CHECK(x1 == std::map<WeightVector, std::size_t>{{{2, 0, 0}, 2}, {{0, 2, 2}, 2}});
    auto y1 = logical_class_weights(c, BitVec::from_string("1010"));
    CHECK(y1 == std::map<WeightVector, std::size_t>{{{1, 1, 1}, 4}});
    auto z1z2 = logical_class_weights(c, BitVec::from_string("0011"));
    CHECK(z1z2 == std::map<WeightVector, std::size_t>{{{0, 2, 0}, 2}, {{2, 0, 2}, 2}});
    // Identity class reproduces the stabilizer weight distribution.
    auto id = logical_class_weights(c, BitVec::from_string("0000"));
    CHECK(id == std::map<WeightVector, std::size_t>{
                    {{0, 0, 0}, 1}, {{4, 0, 0}, 1}, {{0, 4, 0}, 1}, {{0, 0, 4}, 1}});
    // Class sizes always sum to 2^{n-k}.
    for (std::uint32_t label = 0; label < 16; ++label) {
        BitVec l(4);
        for (int i = 0; i < 4; ++i) l.set(i, (label >> i) & 1);
        std::size_t total = 0;
        for (auto& [w, cnt] : logical_class_weights(c, l)) total += cnt;
        CHECK(total == 4);
    }
}

TEST_CASE("hamming_B small values") {
    CHECK(hamming_B(4, 2) == 6);
    CHECK(hamming_B(4, 3) == 1);
    CHECK(hamming_B(6, 4) == 3);
    CHECK(hamming_B(5, 3) == 2);
    CHECK(hamming_B(7, 3) == 7);
}

TEST_CASE("hamming_B closed form at d=2") {
    for (std::size_t n = 4; n <= 15; ++n)
        CHECK(hamming_B(n, 2) == n * (n - 1) / 2);
}

TEST_CASE("[[4,2,2]] saturates the Hamming bound with eta=2") {
    CssCode c = code_422();
    CHECK(check_hamming_bound(c, 2));
    CHECK(check_hamming_bound(c));  // default eta from class weights is also 2
}

TEST_CASE("general stabilizer logicals via standard form") {
    StabilizerCode s = code_513();
    ensure_logicals(s);
    CHECK(validate_stabilizer(s));
}
