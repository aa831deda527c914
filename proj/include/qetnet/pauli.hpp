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

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qetnet/errors.hpp"

namespace qetnet {

/**
 * Qubit ordering convention used everywhere in qetnet:
 *
 *   qubit i  <->  bit i of the amplitude index (little endian).
 *
 * Kets are written |q0 q1 ... q{n-1}>, so |10> is amplitude index 1 and
 * |011> is amplitude index 6. Pauli words print in the same order: the
 * word "XZ" is X on qubit 0 and Z on qubit 1.
 */
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::size_t kMaxPauliQubits = 64;

/// Tensor product of single-qubit Paulis, stored in symplectic (x, z) form.
/// Letter on qubit i: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::size_t n_qubits) : n_qubits_{n_qubits}
    {
        if (n_qubits == 0 || n_qubits > kMaxPauliQubits) {
            throw DimensionError("PauliString: qubit count must be in [1, 64], got " +
                                 std::to_string(n_qubits));
        }
    }

    /// Parse a word such as "XIZ"; character i is the letter on qubit i.
    static PauliString from_letters(std::string_view letters)
    {
        PauliString word(letters.size());
        for (std::size_t q = 0; q < letters.size(); ++q) {
            switch (letters[q]) {
            case 'I': break;
            case 'X': word.set(q, Pauli::X); break;
            case 'Y': word.set(q, Pauli::Y); break;
            case 'Z': word.set(q, Pauli::Z); break;
            default:
                throw InvalidArgument(std::string("PauliString: bad letter '") + letters[q] +
                                      "'");
            }
        }
        return word;
    }

    /// Build from symplectic masks; bits at or above `n_qubits` must be clear.
    static PauliString from_masks(std::size_t n_qubits, std::uint64_t x, std::uint64_t z)
    {
        PauliString word(n_qubits);
        const std::uint64_t valid =
            n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
        if (((x | z) & ~valid) != 0) {
            throw DimensionError("PauliString: mask exceeds qubit count");
        }
        word.x_ = x;
        word.z_ = z;
        return word;
    }

    static PauliString single(std::size_t n_qubits, std::size_t qubit, Pauli letter)
    {
        return PauliString(n_qubits).with(qubit, letter);
    }

    /// Copy with the letter on `qubit` replaced.
    [[nodiscard]] PauliString with(std::size_t qubit, Pauli letter) const
    {
        PauliString out = *this;
        out.set(qubit, letter);
        return out;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::uint64_t x_mask() const noexcept { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const noexcept { return z_; }

    [[nodiscard]] Pauli letter(std::size_t qubit) const
    {
        check_qubit(qubit);
        const bool x = (x_ >> qubit) & 1U;
        const bool z = (z_ >> qubit) & 1U;
        if (x && z) return Pauli::Y;
        if (x) return Pauli::X;
        if (z) return Pauli::Z;
        return Pauli::I;
    }

    [[nodiscard]] bool is_identity() const noexcept { return (x_ | z_) == 0; }
    [[nodiscard]] std::size_t weight() const noexcept
    {
        return static_cast<std::size_t>(std::popcount(x_ | z_));
    }
    /// Number of Y letters; the word equals i^{y_count} X^x Z^z.
    [[nodiscard]] int y_count() const noexcept { return std::popcount(x_ & z_); }

    [[nodiscard]] bool commutes_with(const PauliString& other) const
    {
        require_same_size(other);
        const int anti = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
        return (anti & 1) == 0;
    }

    /// Diagonal in the computational basis (only I and Z letters).
    [[nodiscard]] bool is_z_type() const noexcept { return x_ == 0; }
    /// Only I and X letters.
    [[nodiscard]] bool is_x_type() const noexcept { return z_ == 0; }

    [[nodiscard]] std::string to_string() const
    {
        static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
        std::string out(n_qubits_, 'I');
        for (std::size_t q = 0; q < n_qubits_; ++q) {
            out[q] = kLetters[static_cast<int>(letter(q))];
        }
        return out;
    }

    void require_same_size(const PauliString& other) const
    {
        if (other.n_qubits_ != n_qubits_) {
            throw DimensionError("PauliString: size mismatch " + std::to_string(n_qubits_) +
                                 " vs " + std::to_string(other.n_qubits_));
        }
    }

    friend auto operator<=>(const PauliString&, const PauliString&) = default;

  private:
    void check_qubit(std::size_t qubit) const
    {
        if (qubit >= n_qubits_) {
            throw DimensionError("PauliString: qubit " + std::to_string(qubit) +
                                 " out of range for " + std::to_string(n_qubits_) +
                                 " qubits");
        }
    }

    void set(std::size_t qubit, Pauli letter)
    {
        check_qubit(qubit);
        const std::uint64_t bit = std::uint64_t{1} << qubit;
        x_ &= ~bit;
        z_ &= ~bit;
        if (letter == Pauli::X || letter == Pauli::Y) x_ |= bit;
        if (letter == Pauli::Z || letter == Pauli::Y) z_ |= bit;
    }

    std::size_t n_qubits_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

/// a * b = i^{phase} * word.
struct PauliProduct {
    int phase = 0;  // power of i, in [0, 4)
    PauliString word;
};

/**
 * Multiply two Pauli words. With P = i^{|x&z|} X^x Z^z and
 * Z^{z1} X^{x2} = (-1)^{|z1&x2|} X^{x2} Z^{z1}:
 *
 *   a*b = i^{ya + yb - yc} (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}.
 */
inline PauliProduct multiply(const PauliString& a, const PauliString& b)
{
    a.require_same_size(b);
    const PauliString c = PauliString::from_masks(a.n_qubits(), a.x_mask() ^ b.x_mask(),
                                                  a.z_mask() ^ b.z_mask());
    const int sign_flips = std::popcount(a.z_mask() & b.x_mask());
    int phase = a.y_count() + b.y_count() - c.y_count() + 2 * sign_flips;
    phase = ((phase % 4) + 4) % 4;
    return {phase, c};
}

/// Phase (power of i) picked up when `word` maps basis state |b> to |b ^ x>.
/// Y|0> = i|1>, Y|1> = -i|0>, Z|1> = -|1>.
inline int basis_phase(const PauliString& word, std::uint64_t basis_index) noexcept
{
    const int minus = std::popcount(basis_index & word.z_mask()) & 1;
    return (word.y_count() + 2 * minus) & 3;
}

}  // namespace qetnet
