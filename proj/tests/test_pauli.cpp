// Copyright 2026 The qetnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "oracles/dense_oracle.hpp"
#include "qetnet/errors.hpp"
#include "qetnet/observable.hpp"
#include "qetnet/pauli.hpp"
#include "test_support.hpp"

using namespace qetnet;

namespace {

std::complex<double> i_pow(int k)
{
    static const std::complex<double> table[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

const char* kAllTwoQubit[] = {"II", "IX", "IY", "IZ", "XI", "XX", "XY", "XZ",
                              "YI", "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};

}  // namespace

TEST(PauliString, LettersRoundTrip)
{
    const auto p = PauliString::from_letters("XIZY");
    EXPECT_EQ(p.to_string(), "XIZY");
    EXPECT_EQ(p.n_qubits(), 4u);
    EXPECT_EQ(p.letter(0), Pauli::X);
    EXPECT_EQ(p.letter(3), Pauli::Y);
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.y_count(), 1);
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(PauliString(3).is_identity());
}

TEST(PauliString, MasksAreLittleEndian)
{
    const auto p = PauliString::from_letters("XZ");
    EXPECT_EQ(p.x_mask(), 1u);
    EXPECT_EQ(p.z_mask(), 2u);
    EXPECT_EQ(PauliString::single(3, 2, Pauli::Y).to_string(), "IIY");
}

TEST(PauliString, TypeQueries)
{
    EXPECT_TRUE(PauliString::from_letters("ZIZ").is_z_type());
    EXPECT_FALSE(PauliString::from_letters("ZIX").is_z_type());
    EXPECT_TRUE(PauliString::from_letters("XXI").is_x_type());
    EXPECT_FALSE(PauliString::from_letters("XYI").is_x_type());
}

TEST(PauliString, RejectsBadInput)
{
    EXPECT_THROW(PauliString::from_letters("XQ"), InvalidArgument);
    EXPECT_THROW(PauliString(65), Error);
    EXPECT_THROW((void)PauliString(2).letter(2), Error);
    EXPECT_THROW(multiply(PauliString(2), PauliString(3)), Error);
}

TEST(PauliString, WithReplacesOneSite)
{
    const auto p = PauliString::from_letters("XYZ").with(1, Pauli::I);
    EXPECT_EQ(p.to_string(), "XIZ");
}

TEST(PauliProductTest, AllTwoQubitProductsMatchMatrices)
{
    for (const char* a : kAllTwoQubit) {
        for (const char* b : kAllTwoQubit) {
            const auto pa = PauliString::from_letters(a);
            const auto pb = PauliString::from_letters(b);
            const PauliProduct c = multiply(pa, pb);
            const oracle::Mat expected = oracle::pauli(a) * oracle::pauli(b);
            const oracle::Mat got = i_pow(c.phase) * oracle::pauli(c.word.to_string());
            EXPECT_LT((expected - got).norm(), 1e-12) << a << " * " << b;
        }
    }
}

TEST(PauliProductTest, RandomFiveQubitProductsAndCommutation)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string a = testing_support::random_letters(5, rng);
        const std::string b = testing_support::random_letters(5, rng);
        const auto pa = PauliString::from_letters(a);
        const auto pb = PauliString::from_letters(b);
        const PauliProduct c = multiply(pa, pb);
        const oracle::Mat ma = oracle::pauli(a);
        const oracle::Mat mb = oracle::pauli(b);
        EXPECT_LT((ma * mb - i_pow(c.phase) * oracle::pauli(c.word.to_string())).norm(), 1e-10);
        const bool commute = (ma * mb - mb * ma).norm() < 1e-10;
        EXPECT_EQ(pa.commutes_with(pb), commute) << a << " " << b;
    }
}

TEST(PauliProductTest, BasisPhaseMatchesMatrixColumns)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::string letters = testing_support::random_letters(3, rng);
        const auto p = PauliString::from_letters(letters);
        const oracle::Mat m = oracle::pauli(letters);
        for (std::uint64_t b = 0; b < 8; ++b) {
            const auto target = static_cast<Eigen::Index>(b ^ p.x_mask());
            EXPECT_LT(std::abs(m(target, static_cast<Eigen::Index>(b)) - i_pow(basis_phase(p, b))), 1e-12);
        }
    }
}

TEST(ObservableSumTest, MergesAndCancelsDuplicates)
{
    ObservableSum obs(2);
    obs.add(1.5, PauliString::from_letters("XZ"));
    obs.add(0.5, PauliString::from_letters("XZ"));
    obs.add(1.0, PauliString::from_letters("ZZ"));
    obs.add(-1.0, PauliString::from_letters("ZZ"));
    ASSERT_EQ(obs.terms().size(), 1u);
    EXPECT_DOUBLE_EQ(obs.coefficient(PauliString::from_letters("XZ")), 2.0);
    EXPECT_DOUBLE_EQ(obs.coefficient(PauliString::from_letters("ZZ")), 0.0);
}

TEST(ObservableSumTest, IdentityFoldsIntoOffset)
{
    ObservableSum obs(2, 0.25);
    obs.add(1.0, PauliString(2));
    EXPECT_TRUE(obs.terms().empty());
    EXPECT_DOUBLE_EQ(obs.offset(), 1.25);
    EXPECT_FALSE(obs.is_zero());
    EXPECT_TRUE(ObservableSum(2).is_zero());
}

TEST(ObservableSumTest, CanonicalOrderMakesEqualityInsertionIndependent)
{
    ObservableSum a(2);
    a.add(1.0, PauliString::from_letters("XI")).add(2.0, PauliString::from_letters("IZ"));
    ObservableSum b(2);
    b.add(2.0, PauliString::from_letters("IZ")).add(1.0, PauliString::from_letters("XI"));
    EXPECT_EQ(a, b);
}

TEST(ObservableSumTest, ArithmeticMatchesMatrices)
{
    std::mt19937_64 rng(3);
    const auto a = testing_support::random_observable(3, 6, rng);
    const auto b = testing_support::random_observable(3, 6, rng);
    const oracle::Mat ma = testing_support::matrix_of(a);
    const oracle::Mat mb = testing_support::matrix_of(b);
    EXPECT_LT((testing_support::matrix_of(a + b) - (ma + mb)).norm(), 1e-12);
    EXPECT_LT((testing_support::matrix_of(a - b) - (ma - mb)).norm(), 1e-12);
    EXPECT_LT((testing_support::matrix_of(2.5 * a) - 2.5 * ma).norm(), 1e-12);
    EXPECT_TRUE(approx_equal(a + b - b, a, 1e-12));
}

TEST(ObservableSumTest, OffsetHelpers)
{
    ObservableSum obs = ObservableSum::term(3.0, PauliString::from_letters("ZI"));
    const auto shifted = obs.with_offset(-1.0);
    EXPECT_DOUBLE_EQ(shifted.offset(), -1.0);
    EXPECT_DOUBLE_EQ(shifted.pauli_part().offset(), 0.0);
    EXPECT_EQ(shifted.pauli_part(), obs);
}

TEST(ObservableSumTest, RejectsSizeMismatch)
{
    ObservableSum obs(2);
    EXPECT_THROW(obs.add(1.0, PauliString::from_letters("XXX")), Error);
    EXPECT_THROW(obs += ObservableSum(3), Error);
}
