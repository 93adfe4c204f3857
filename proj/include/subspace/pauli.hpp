// Copyright 2026 The subspace-sim Authors
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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subspace/errors.hpp"

namespace subspace {

using Complex = std::complex<double>;

/// An n-qubit Pauli word in symplectic (x, z) encoding with a fourth-root
/// phase tracked separately.
///
/// Per qubit, (x, z) = (0,0) -> I, (1,0) -> X, (0,1) -> Z, (1,1) -> Y, and the
/// operator is phase * P_0 (x) P_1 (x) ... with phase = i^k, k in {0,1,2,3}.
/// Word operations cost O(n/64).
class PauliString {
 public:
  PauliString() = default;

  /// The n-qubit identity.
  explicit PauliString(std::size_t n)
      : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

  static PauliString identity(std::size_t n) { return PauliString(n); }

  /// Parses a word from letters over {I, X, Y, Z}; qubit 0 is leftmost.
  static PauliString from_string(std::string_view text);

  /// A single-letter word: `letter` on `qubit`, identity elsewhere.
  static PauliString single(std::size_t n, std::size_t qubit, char letter);

  std::size_t num_qubits() const { return n_; }

  char letter(std::size_t qubit) const;
  void set_letter(std::size_t qubit, char letter);

  bool x_bit(std::size_t qubit) const { return bit(x_, qubit); }
  bool z_bit(std::size_t qubit) const { return bit(z_, qubit); }

  /// Phase exponent k, meaning the word carries the scalar i^k.
  int phase_power() const { return phase_; }
  Complex phase() const;
  void set_phase_power(int k) { phase_ = k & 3; }

  /// Same word with the phase reset to +1 (the hash-key form).
  PauliString canonical() const;

  bool is_identity() const;

  /// True when the carried phase is +1 or -1.
  bool is_hermitian() const { return phase_ == 0 || phase_ == 2; }

  /// Number of non-identity letters.
  std::size_t weight() const;

  /// Sorted qubits with a non-identity letter.
  std::vector<std::size_t> support() const;

  /// True iff the words commute (symplectic product even).
  bool commutes_with(const PauliString& other) const;

  /// Group product p*q with the accumulated phase.
  friend PauliString operator*(const PauliString& p, const PauliString& q);

  /// Letters only; the phase is not part of the text form.
  std::string to_string() const;

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ &&
           z_ == other.z_;
  }

  /// Lexicographic on letters, then phase; a deterministic total order for
  /// serialization and tie-breaking.
  bool operator<(const PauliString& other) const;

  std::size_t hash() const;

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

 private:
  static bool bit(const std::vector<std::uint64_t>& w, std::size_t i) {
    return (w[i >> 6] >> (i & 63)) & 1ULL;
  }
  static void set_bit(std::vector<std::uint64_t>& w, std::size_t i, bool v) {
    if (v)
      w[i >> 6] |= 1ULL << (i & 63);
    else
      w[i >> 6] &= ~(1ULL << (i & 63));
  }

  std::size_t n_ = 0;
  int phase_ = 0;  // power of i
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const { return p.hash(); }
};

/// A sparse complex-weighted sum of Pauli words.  Keys are phase-canonical;
/// any carried phase is folded into the coefficient on insertion.
/// Coefficients below the prune threshold are dropped.
class PauliSum {
 public:
  using TermMap = std::unordered_map<PauliString, Complex, PauliStringHash>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n) : n_(n) {}

  static PauliSum zero(std::size_t n) { return PauliSum(n); }
  static PauliSum from_word(const PauliString& word, Complex coeff = 1.0);

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of a (phase-canonical) word; 0 if absent.
  Complex coeff(const PauliString& word) const;

  /// Accumulates coeff * word, canonicalizing the word's phase.
  void add(const PauliString& word, Complex coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

  /// Accumulates scale * other.
  void axpy(Complex scale, const PauliSum& other);

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// Drops terms with |coefficient| <= threshold.
  void prune(double threshold = kDefaultPruneThreshold);

  /// True iff all coefficients are real within tol (canonical words are
  /// Hermitian, so this decides Hermiticity of the sum).
  bool is_hermitian(double tol = 1e-12) const;

  /// l2 norm under the normalized Hilbert-Schmidt inner product.
  double norm2() const;

  const TermMap& terms() const { return terms_; }
  TermMap::const_iterator begin() const { return terms_.begin(); }
  TermMap::const_iterator end() const { return terms_.end(); }

  /// Lines "coeff<TAB>word", sorted by word; exact round-trip with
  /// from_text.  Real coefficients print as one number, complex ones as
  /// "(re,im)".
  std::string to_text() const;
  static PauliSum from_text(std::string_view text, std::size_t n_hint = 0);

  static constexpr double kDefaultPruneThreshold = 1e-14;

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

/// Product of two words: returns the canonical word r and phase f with
/// p*q = f*r, |f| = 1 (f is the returned string's carried phase).
PauliString multiply(const PauliString& p, const PauliString& q);

/// Commutator [p, q] = pq - qp; zero or 2*(phase)*(single word).
PauliSum commutator(const PauliString& p, const PauliString& q);
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Normalized Hilbert-Schmidt inner product Tr[a^dag b] / 2^n, under which
/// distinct canonical Pauli words are orthonormal.
Complex hs_inner(const PauliSum& a, const PauliSum& b);

std::size_t weight(const PauliString& p);

}  // namespace subspace
