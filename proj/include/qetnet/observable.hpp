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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "qetnet/pauli.hpp"

namespace qetnet {

template <typename Real>
struct PauliTerm {
    Real coefficient;
    PauliString word;
};

/**
 * Hermitian operator  offset * I + sum_t c_t P_t  with real c_t.
 *
 * Always held in canonical form: terms sorted by word, no duplicate words,
 * no identity word (folded into the offset) and no |c_t| below
 * `kDropThreshold`. Two canonical sums are equal iff they are the same
 * operator, up to the dropped threshold.
 */
template <typename Real>
class BasicObservableSum {
  public:
    static constexpr Real kDropThreshold = Real(1e-15);

    BasicObservableSum() = default;
    explicit BasicObservableSum(std::size_t n_qubits, Real offset = Real(0))
        : n_qubits_{n_qubits}, offset_{offset}
    {
        if (n_qubits == 0 || n_qubits > kMaxPauliQubits) {
            throw DimensionError("ObservableSum: bad qubit count " + std::to_string(n_qubits));
        }
    }

    static BasicObservableSum term(Real coefficient, const PauliString& word)
    {
        BasicObservableSum out(word.n_qubits());
        out.add(coefficient, word);
        return out;
    }

    BasicObservableSum& add(Real coefficient, const PauliString& word)
    {
        require_size(word.n_qubits());
        if (word.is_identity()) {
            offset_ += coefficient;
            return *this;
        }
        auto it = std::lower_bound(terms_.begin(), terms_.end(), word,
                                   [](const PauliTerm<Real>& t, const PauliString& w) {
                                       return t.word < w;
                                   });
        if (it != terms_.end() && it->word == word) {
            it->coefficient += coefficient;
            if (std::abs(it->coefficient) < kDropThreshold) terms_.erase(it);
        } else if (std::abs(coefficient) >= kDropThreshold) {
            terms_.insert(it, PauliTerm<Real>{coefficient, word});
        }
        return *this;
    }

    BasicObservableSum& add_offset(Real value)
    {
        offset_ += value;
        return *this;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Real offset() const noexcept { return offset_; }
    [[nodiscard]] const std::vector<PauliTerm<Real>>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return terms_.empty() && std::abs(offset_) < kDropThreshold;
    }

    [[nodiscard]] BasicObservableSum with_offset(Real offset) const
    {
        BasicObservableSum out = *this;
        out.offset_ = offset;
        return out;
    }

    /// Same Pauli terms, zero offset.
    [[nodiscard]] BasicObservableSum pauli_part() const { return with_offset(Real(0)); }

    /// Coefficient of `word` (0 when absent). The identity word returns the offset.
    [[nodiscard]] Real coefficient(const PauliString& word) const
    {
        if (word.is_identity()) return offset_;
        for (const auto& t : terms_) {
            if (t.word == word) return t.coefficient;
        }
        return Real(0);
    }

    BasicObservableSum& operator+=(const BasicObservableSum& rhs)
    {
        require_size(rhs.n_qubits_);
        for (const auto& t : rhs.terms_) add(t.coefficient, t.word);
        offset_ += rhs.offset_;
        return *this;
    }

    BasicObservableSum& operator*=(Real scale)
    {
        for (auto& t : terms_) t.coefficient *= scale;
        std::erase_if(terms_, [](const PauliTerm<Real>& t) {
            return std::abs(t.coefficient) < kDropThreshold;
        });
        offset_ *= scale;
        return *this;
    }

    friend BasicObservableSum operator+(BasicObservableSum lhs, const BasicObservableSum& rhs)
    {
        lhs += rhs;
        return lhs;
    }
    friend BasicObservableSum operator-(BasicObservableSum lhs, const BasicObservableSum& rhs)
    {
        lhs += rhs * Real(-1);
        return lhs;
    }
    friend BasicObservableSum operator*(BasicObservableSum lhs, Real scale)
    {
        lhs *= scale;
        return lhs;
    }
    friend BasicObservableSum operator*(Real scale, BasicObservableSum rhs)
    {
        rhs *= scale;
        return rhs;
    }

    friend bool operator==(const BasicObservableSum& a, const BasicObservableSum& b)
    {
        if (a.n_qubits_ != b.n_qubits_ || a.offset_ != b.offset_ ||
            a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].word != b.terms_[i].word ||
                a.terms_[i].coefficient != b.terms_[i].coefficient) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        os.precision(12);
        os << offset_;
        for (const auto& t : terms_) os << " + (" << t.coefficient << ")*" << t.word.to_string();
        return os.str();
    }

  private:
    void require_size(std::size_t n) const
    {
        if (n != n_qubits_) {
            throw DimensionError("ObservableSum: expected " + std::to_string(n_qubits_) +
                                 " qubits, got " + std::to_string(n));
        }
    }

    std::size_t n_qubits_ = 0;
    Real offset_ = Real(0);
    std::vector<PauliTerm<Real>> terms_;
};

/// Same words and every coefficient (and the offset) within `tol`.
template <typename Real>
bool approx_equal(const BasicObservableSum<Real>& a, const BasicObservableSum<Real>& b,
                  Real tol)
{
    if (a.n_qubits() != b.n_qubits()) return false;
    const auto diff = a - b;
    if (std::abs(diff.offset()) > tol) return false;
    return std::all_of(diff.terms().begin(), diff.terms().end(),
                       [tol](const PauliTerm<Real>& t) { return std::abs(t.coefficient) <= tol; });
}

using ObservableSum = BasicObservableSum<double>;

}  // namespace qetnet
