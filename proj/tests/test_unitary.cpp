#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dense.hpp"
#include "locc/unitary.hpp"

using locc::SingleQubitUnitary;

namespace {

dense::Matrix matrix_of(const SingleQubitUnitary &u) { return dense::from2(u.to_complex()); }

SingleQubitUnitary random_clifford(std::mt19937_64 &rng) {
    const auto &gens = SingleQubitUnitary::generators();
    SingleQubitUnitary u;
    int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; i++) u = u * gens[rng() % gens.size()].second;
    return u;
}

bool equal_up_to_phase_dense(const dense::Matrix &a, const dense::Matrix &b) {
    // a = c b for a unit-modulus scalar c
    std::complex<double> c = 0;
    for (std::size_t i = 0; i < 4; i++)
        if (std::abs(b.a[i]) > 1e-9) {
            c = a.a[i] / b.a[i];
            break;
        }
    return std::abs(std::abs(c) - 1) < 1e-9 && dense::distance(a, c * b) < 1e-9;
}

}  // namespace

TEST(SingleQubitUnitary, GeneratorsMatchReferenceMatrices) {
    const double s = 1 / std::sqrt(2.0);
    const std::complex<double> i(0, 1);
    auto sqrt_of = [&](char p, double sign) {
        return s * (dense::Matrix::identity(2) + (sign * i) * dense::single(p));
    };
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::hadamard()), dense::single('H')), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::phase_s()), dense::single('S')), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::pauli_y()), dense::single('Y')), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::sqrt_iy()), sqrt_of('Y', 1)), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::sqrt_miy()), sqrt_of('Y', -1)), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::sqrt_iz()), sqrt_of('Z', 1)), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::sqrt_miz()), sqrt_of('Z', -1)), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::sqrt_ix()), sqrt_of('X', 1)), 1e-12);
    EXPECT_LT(dense::distance(matrix_of(SingleQubitUnitary::sqrt_mix()), sqrt_of('X', -1)), 1e-12);
}

TEST(SingleQubitUnitary, FromEntriesRejectsNonUnitary) {
    using G = locc::GaussInt;
    EXPECT_THROW(SingleQubitUnitary::from_entries({G{1, 0}, G{1, 0}, G{0, 0}, G{1, 0}}, 0), locc::InvalidOperand);
    auto h = SingleQubitUnitary::from_entries({G{2, 0}, G{2, 0}, G{2, 0}, G{-2, 0}}, 3);
    EXPECT_EQ(h, SingleQubitUnitary::hadamard());
}

TEST(SingleQubitUnitary, ExactAlgebraMatchesDense) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; trial++) {
        auto a = random_clifford(rng);
        auto b = random_clifford(rng);
        EXPECT_LT(dense::distance(matrix_of(a * b), matrix_of(a) * matrix_of(b)), 1e-12);
        EXPECT_LT(dense::distance(matrix_of(a.dagger()), dense::adjoint(matrix_of(a))), 1e-12);
        EXPECT_TRUE((a * a.dagger()).is_identity());
        EXPECT_TRUE(a.is_clifford());
        EXPECT_EQ(a.equal_up_to_phase(b), equal_up_to_phase_dense(matrix_of(a), matrix_of(b)));
        auto t = a.transpose();
        auto ma = matrix_of(a);
        EXPECT_NEAR(std::abs(matrix_of(t)(0, 1) - ma(1, 0)), 0, 1e-12);
    }
}

TEST(SingleQubitUnitary, ConjugationImages) {
    auto h = SingleQubitUnitary::hadamard();
    EXPECT_EQ(h.conjugate_pauli('X'), (locc::SignedPauli{'Z', 1}));
    EXPECT_EQ(h.conjugate_pauli('Y'), (locc::SignedPauli{'Y', -1}));
    auto sdg = SingleQubitUnitary::phase_sdg();
    EXPECT_EQ(sdg.conjugate_pauli('Y'), (locc::SignedPauli{'X', 1}));
    EXPECT_EQ(sdg.conjugate_pauli('X'), (locc::SignedPauli{'Y', -1}));
}

TEST(SingleQubitUnitary, ConjugationMatchesDense) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; trial++) {
        auto u = random_clifford(rng);
        auto m = matrix_of(u);
        for (char c : {'X', 'Y', 'Z'}) {
            auto img = u.conjugate_pauli(c);
            auto expect = static_cast<double>(img.sign) * dense::single(img.letter);
            EXPECT_LT(dense::distance(m * dense::single(c) * dense::adjoint(m), expect), 1e-12);
        }
    }
}

TEST(SingleQubitUnitary, WordRoundTrip) {
    EXPECT_EQ(SingleQubitUnitary::identity().to_word(), "I");
    EXPECT_EQ(SingleQubitUnitary::hadamard().to_word(), "H");
    EXPECT_EQ(SingleQubitUnitary::parse_word("H*S"), SingleQubitUnitary::hadamard() * SingleQubitUnitary::phase_s());
    std::mt19937_64 rng(3);
    std::size_t distinct = 0;
    std::set<std::string> words;
    for (int trial = 0; trial < 20000; trial++) {
        auto u = random_clifford(rng);
        std::string w = u.to_word();
        EXPECT_EQ(SingleQubitUnitary::parse_word(w), u) << w;
        words.insert(w);
    }
    distinct = words.size();
    EXPECT_EQ(distinct, 192u);
    EXPECT_THROW(SingleQubitUnitary::parse_word("H·T"), locc::ParseError);
    EXPECT_THROW(SingleQubitUnitary::parse_word(""), locc::ParseError);
}

TEST(SingleQubitUnitary, NonCliffordRejected) {
    using G = locc::GaussInt;
    EXPECT_THROW(SingleQubitUnitary::from_entries({G{1, 1}, G{0, 0}, G{0, 0}, G{1, 0}}, 1), locc::InvalidOperand);
    const std::complex<double> t(std::cos(M_PI / 4), std::sin(M_PI / 4));
    EXPECT_THROW(SingleQubitUnitary::from_complex({1.0, 0.0, 0.0, t}), locc::InvalidOperand);
    auto s = SingleQubitUnitary::from_complex({1.0, 0.0, 0.0, std::complex<double>(0, 1)});
    EXPECT_EQ(s, SingleQubitUnitary::phase_s());
    locc::LocalCliffordLayer layer(2);
    EXPECT_THROW(layer.set(2, SingleQubitUnitary::hadamard()), locc::InvalidOperand);
}

TEST(LocalCliffordLayer, ConjugatesPauliStrings) {
    locc::LocalCliffordLayer layer(3);
    layer.set(0, SingleQubitUnitary::hadamard());
    layer.set(2, SingleQubitUnitary::phase_s());
    auto p = locc::PauliString::parse("XYX");
    EXPECT_EQ(layer.conjugate(p).to_string(), "+ZYY");
    auto back = layer.dagger().conjugate(layer.conjugate(p));
    EXPECT_EQ(back, p);
    EXPECT_TRUE(layer.compose(layer.dagger()).is_identity());
}
