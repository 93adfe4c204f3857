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

#include "subspace/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace subspace {

namespace {

void check_same_size(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw DimensionError("Pauli words act on different qubit counts (" +
                         std::to_string(p.num_qubits()) + " vs " +
                         std::to_string(q.num_qubits()) + ")");
  }
}

// Exact round-trip formatting for doubles.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_coeff(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  return "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
}

Complex parse_coeff(const std::string& field) {
  if (!field.empty() && field.front() == '(') {
    const auto comma = field.find(',');
    const auto close = field.rfind(')');
    if (comma == std::string::npos || close == std::string::npos || comma > close) {
      throw ArgumentError("malformed complex coefficient: " + field);
    }
    const double re = std::stod(field.substr(1, comma - 1));
    const double im = std::stod(field.substr(comma + 1, close - comma - 1));
    return {re, im};
  }
  std::size_t pos = 0;
  const double re = std::stod(field, &pos);
  if (pos != field.size()) {
    throw ArgumentError("malformed coefficient: " + field);
  }
  return {re, 0.0};
}

}  // namespace

PauliString PauliString::from_string(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    p.set_letter(q, text[q]);
  }
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, char letter) {
  if (qubit >= n) {
    throw ArgumentError("qubit index " + std::to_string(qubit) +
                        " out of range for n=" + std::to_string(n));
  }
  PauliString p(n);
  p.set_letter(qubit, letter);
  return p;
}

char PauliString::letter(std::size_t qubit) const {
  const bool x = x_bit(qubit), z = z_bit(qubit);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set_letter(std::size_t qubit, char letter) {
  if (qubit >= n_) {
    throw ArgumentError("qubit index out of range");
  }
  switch (letter) {
    case 'I':
      set_bit(x_, qubit, false);
      set_bit(z_, qubit, false);
      break;
    case 'X':
      set_bit(x_, qubit, true);
      set_bit(z_, qubit, false);
      break;
    case 'Y':
      set_bit(x_, qubit, true);
      set_bit(z_, qubit, true);
      break;
    case 'Z':
      set_bit(x_, qubit, false);
      set_bit(z_, qubit, true);
      break;
    default:
      throw ArgumentError(std::string("invalid Pauli letter '") + letter + "'");
  }
}

Complex PauliString::phase() const {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_ & 3];
}

PauliString PauliString::canonical() const {
  PauliString p = *this;
  p.phase_ = 0;
  return p;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] != 0 || z_[i] != 0) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    w += static_cast<std::size_t>(std::popcount(x_[i] | z_[i]));
  }
  return w;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> qubits;
  for (std::size_t q = 0; q < n_; ++q) {
    if (x_bit(q) || z_bit(q)) qubits.push_back(q);
  }
  return qubits;
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_size(*this, other);
  std::uint64_t parity = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    parity ^= std::popcount(x_[i] & other.z_[i]) ^
              std::popcount(z_[i] & other.x_[i]);
  }
  return (parity & 1) == 0;
}

PauliString operator*(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  PauliString r(p.n_);
  int k = p.phase_ + q.phase_;
  int plus = 0, minus = 0;
  for (std::size_t i = 0; i < p.x_.size(); ++i) {
    const std::uint64_t xa = p.x_[i], za = p.z_[i];
    const std::uint64_t xb = q.x_[i], zb = q.z_[i];
    const std::uint64_t ax = xa & ~za, ay = xa & za, az = za & ~xa;
    const std::uint64_t bx = xb & ~zb, by = xb & zb, bz = zb & ~xb;
    // X*Y = iZ, Y*Z = iX, Z*X = iY carry +1; the reversed pairings carry -1.
    plus += std::popcount((ax & by) | (ay & bz) | (az & bx));
    minus += std::popcount((ax & bz) | (ay & bx) | (az & by));
    r.x_[i] = xa ^ xb;
    r.z_[i] = za ^ zb;
  }
  r.phase_ = (k + plus - minus) & 3;
  return r;
}

std::string PauliString::to_string() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

bool PauliString::operator<(const PauliString& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  for (std::size_t q = 0; q < n_; ++q) {
    const char a = letter(q), b = other.letter(q);
    if (a != b) return a < b;
  }
  return phase_ < other.phase_;
}

std::size_t PauliString::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ (n_ * 0x9e3779b97f4a7c15ULL);
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  };
  for (std::size_t i = 0; i < x_.size(); ++i) {
    mix(x_[i]);
    mix(z_[i]);
  }
  mix(static_cast<std::uint64_t>(phase_));
  return static_cast<std::size_t>(h);
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  return p * q;
}

std::size_t weight(const PauliString& p) { return p.weight(); }

PauliSum commutator(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  PauliSum result(p.num_qubits());
  if (p.commutes_with(q)) return result;
  // Anticommuting words: [p, q] = 2 pq.
  const PauliString pq = p * q;
  result.add(pq.canonical(), 2.0 * pq.phase());
  return result;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("commutator of sums on different qubit counts");
  }
  PauliSum result(a.num_qubits());
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (wa.commutes_with(wb)) continue;
      const PauliString pq = wa * wb;
      result.add(pq.canonical(), 2.0 * ca * cb * pq.phase());
    }
  }
  result.prune();
  return result;
}

PauliSum PauliSum::from_word(const PauliString& word, Complex coeff) {
  PauliSum s(word.num_qubits());
  s.add(word, coeff);
  return s;
}

Complex PauliSum::coeff(const PauliString& word) const {
  const auto it = terms_.find(word.phase_power() == 0 ? word : word.canonical());
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

void PauliSum::add(const PauliString& word, Complex coeff) {
  if (word.num_qubits() != n_) {
    throw DimensionError("word size does not match sum size");
  }
  const Complex total = coeff * word.phase();
  auto [it, inserted] = terms_.try_emplace(word.canonical(), total);
  if (!inserted) it->second += total;
  if (std::abs(it->second) <= kDefaultPruneThreshold) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  axpy(1.0, other);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  axpy(-1.0, other);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& [w, c] : terms_) c *= scale;
  return *this;
}

void PauliSum::axpy(Complex scale, const PauliSum& other) {
  if (other.n_ != n_) {
    throw DimensionError("sum sizes differ");
  }
  for (const auto& [w, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, scale * c);
    if (!inserted) it->second += scale * c;
    if (std::abs(it->second) <= kDefaultPruneThreshold) terms_.erase(it);
  }
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("sum sizes differ");
  }
  PauliSum result(a.num_qubits());
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      const PauliString w = wa * wb;
      result.add(w.canonical(), ca * cb * w.phase());
    }
  }
  result.prune();
  return result;
}

void PauliSum::prune(double threshold) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [w, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

double PauliSum::norm2() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

Complex hs_inner(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("hs_inner of sums on different qubit counts");
  }
  const PauliSum& small = a.size() <= b.size() ? a : b;
  const PauliSum& large = a.size() <= b.size() ? b : a;
  Complex acc = 0.0;
  for (const auto& [w, c] : small) {
    const auto it = large.terms().find(w);
    if (it == large.terms().end()) continue;
    // Conjugate always lands on a's coefficient.
    if (&small == &a)
      acc += std::conj(c) * it->second;
    else
      acc += std::conj(it->second) * c;
  }
  return acc;
}

std::string PauliSum::to_text() const {
  std::vector<const PauliString*> order;
  order.reserve(terms_.size());
  for (const auto& [w, c] : terms_) order.push_back(&w);
  std::sort(order.begin(), order.end(),
            [](const PauliString* a, const PauliString* b) { return *a < *b; });
  std::string out;
  for (const PauliString* w : order) {
    out += format_coeff(terms_.at(*w));
    out += '\t';
    out += w->to_string();
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text, std::size_t n_hint) {
  PauliSum sum(n_hint);
  bool size_known = n_hint > 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ArgumentError("Pauli sum line missing TAB separator: " + line);
    }
    const Complex c = parse_coeff(line.substr(0, tab));
    const PauliString w = PauliString::from_string(line.substr(tab + 1));
    if (!size_known) {
      sum = PauliSum(w.num_qubits());
      size_known = true;
    }
    sum.add(w, c);
  }
  return sum;
}

}  // namespace subspace
