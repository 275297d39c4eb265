#include <gtest/gtest.h>

#include <random>

#include "dense.hpp"
#include "locc/pauli.hpp"

using locc::PauliString;

namespace {

dense::Matrix matrix_of(const PauliString &p) {
    std::string letters;
    for (std::size_t q = 0; q < p.size(); q++) letters.push_back(p.letter(q));
    return dense::pauli(letters, p.coefficient_phase());
}

PauliString random_pauli(std::size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; q++) p.set_letter(q, "IXYZ"[rng() % 4]);
    p.add_phase(static_cast<int>(rng() % 4));
    return p;
}

}  // namespace

TEST(PauliString, ParseAndPrint) {
    auto p = PauliString::parse("-iXYZI");
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p.coefficient_phase(), 3);
    EXPECT_EQ(p.to_string(), "-iXYZI");
    EXPECT_EQ(PauliString::parse("ZZ").to_string(), "+ZZ");
    EXPECT_EQ(PauliString::parse("\xE2\x88\x92XY").to_string(), "-XY");
    EXPECT_EQ(PauliString::parse("+iY").coefficient_phase(), 1);
}

TEST(PauliString, ParseErrorsCarryColumn) {
    try {
        PauliString::parse("+XQZ");
        FAIL();
    } catch (const locc::ParseError &e) {
        EXPECT_EQ(e.column(), 3u);
    }
    EXPECT_THROW(PauliString::parse(""), locc::ParseError);
    EXPECT_THROW(PauliString::parse("-"), locc::ParseError);
}

TEST(PauliString, HermitianAndSign) {
    EXPECT_TRUE(PauliString::parse("-YY").is_hermitian());
    EXPECT_EQ(PauliString::parse("-YY").sign(), -1);
    EXPECT_FALSE(PauliString::parse("iXZ").is_hermitian());
    EXPECT_THROW(PauliString::parse("iXZ").sign(), locc::InvalidOperand);
    auto p = PauliString::parse("XYZ");
    p.set_sign(-1);
    EXPECT_EQ(p.to_string(), "-XYZ");
}

TEST(PauliString, KnownProducts) {
    EXPECT_EQ((PauliString::parse("X") * PauliString::parse("Z")).to_string(), "-iY");
    EXPECT_EQ((PauliString::parse("Z") * PauliString::parse("X")).to_string(), "+iY");
    EXPECT_EQ((PauliString::parse("XX") * PauliString::parse("ZZ")).to_string(), "-YY");
    EXPECT_TRUE(locc::anticommutes(PauliString::parse("XI"), PauliString::parse("ZZ")));
    EXPECT_TRUE(locc::commutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
    EXPECT_THROW(PauliString::parse("X") * PauliString::parse("XX"), locc::DimensionError);
}

// Products and commutation agree with explicit matrices.
TEST(PauliString, MatchesDenseMatrices) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t n = 1 + rng() % 4;
        auto a = random_pauli(n, rng);
        auto b = random_pauli(n, rng);
        dense::Matrix ma = matrix_of(a), mb = matrix_of(b);
        EXPECT_LT(dense::distance(matrix_of(a * b), ma * mb), 1e-12);
        bool comm = dense::distance(ma * mb, mb * ma) < 1e-12;
        EXPECT_EQ(locc::commutes(a, b), comm);
        EXPECT_LT(dense::distance(matrix_of(locc::inverse(a)), dense::adjoint(ma)), 1e-12);
        EXPECT_EQ(PauliString::parse(a.to_string()), a);
    }
}

TEST(PauliString, TensorConcatenates) {
    auto t = locc::tensor(PauliString::parse("-Y"), PauliString::parse("iXZ"));
    EXPECT_EQ(t.to_string(), "-iYXZ");
}
