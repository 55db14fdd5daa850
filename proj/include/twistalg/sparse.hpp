#pragma once

#include <twistalg/rational.hpp>
#include <twistalg/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twistalg {

inline bool value_is_zero(const Q& q) { return is_zero(q); }
inline bool value_is_zero(const Scalar& s) { return s.is_zero(); }

/// Sparse vector: entries sorted by index, no stored zeros.
template <typename T>
class SparseVec {
 public:
  using Entry = std::pair<int, T>;

  SparseVec() = default;
  explicit SparseVec(std::vector<Entry> entries) : entries_(std::move(entries)) { normalize(); }

  static SparseVec unit(int index, T value = T(1)) {
    SparseVec v;
    if (!value_is_zero(value)) v.entries_.emplace_back(index, std::move(value));
    return v;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  int lead_index() const { return entries_.front().first; }
  const T& lead_value() const { return entries_.front().second; }

  T get(int index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, int i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return T(0);
  }

  /// this += factor * other
  void axpy(const T& factor, const SparseVec& other) {
    if (value_is_zero(factor) || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(std::move(*a));
        ++a;
      } else if (a == entries_.end() || b->first < a->first) {
        T v = factor * b->second;
        if (!value_is_zero(v)) out.emplace_back(b->first, std::move(v));
        ++b;
      } else {
        T v = a->second + factor * b->second;
        if (!value_is_zero(v)) out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  SparseVec& operator+=(const SparseVec& o) {
    axpy(T(1), o);
    return *this;
  }
  SparseVec& operator-=(const SparseVec& o) {
    axpy(T(-1), o);
    return *this;
  }
  SparseVec& operator*=(const T& f) {
    if (value_is_zero(f)) {
      entries_.clear();
      return *this;
    }
    std::vector<Entry> out;
    for (auto& e : entries_) {
      T v = e.second * f;
      if (!value_is_zero(v)) out.emplace_back(e.first, std::move(v));
    }
    entries_ = std::move(out);
    return *this;
  }
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(SparseVec a, const T& f) { return a *= f; }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

  /// Adds value at index (used while assembling).
  void add(int index, const T& value) { axpy(T(1), unit(index, value)); }

 private:
  void normalize() {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> out;
    for (auto& e : entries_) {
      if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
      else out.push_back(std::move(e));
    }
    std::erase_if(out, [](const Entry& e) { return value_is_zero(e.second); });
    entries_ = std::move(out);
  }

  std::vector<Entry> entries_;
};

using QVec = SparseVec<Q>;

/// Accumulates a sparse vector through a hash map; cheaper than repeated axpy.
template <typename T>
class VecBuilder {
 public:
  void add(int index, const T& value) {
    if (value_is_zero(value)) return;
    auto [it, inserted] = acc_.try_emplace(index, value);
    if (!inserted) it->second += value;
  }
  void add(const SparseVec<T>& v, const T& factor) {
    for (const auto& [i, x] : v) add(i, factor * x);
  }
  SparseVec<T> build() {
    std::vector<typename SparseVec<T>::Entry> e;
    e.reserve(acc_.size());
    for (auto& [i, x] : acc_)
      if (!value_is_zero(x)) e.emplace_back(i, std::move(x));
    acc_.clear();
    return SparseVec<T>(std::move(e));
  }

 private:
  std::unordered_map<int, T> acc_;
};

/// Incremental row echelon form over ℚ. Pivots are keyed by leading index
/// and normalized to leading coefficient 1; inserted vectors are reduced
/// fully against existing pivots (leading-term reduction only).
class Echelon {
 public:
  /// Returns true if v was independent of the current span (and is added).
  bool insert(QVec v) {
    reduce_leading(v);
    if (v.empty()) return false;
    Q inv = 1 / v.lead_value();
    v *= inv;
    pivots_.emplace(v.lead_index(), std::move(v));
    return true;
  }

  /// Reduce until the leading index is not a pivot (or v vanishes).
  void reduce_leading(QVec& v) const {
    while (!v.empty()) {
      auto it = pivots_.find(v.lead_index());
      if (it == pivots_.end()) return;
      Q f = -v.lead_value();
      v.axpy(f, it->second);
    }
  }

  /// Reduce every entry that sits on a pivot index; the result is a
  /// canonical representative of v modulo the span.
  QVec reduce_full(QVec v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      const int idx = v.entries()[pos].first;
      auto it = pivots_.find(idx);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      Q f = -v.entries()[pos].second;
      v.axpy(f, it->second);
      // entries before pos are unaffected (pivot vectors lead at idx)
    }
    return v;
  }

  bool contains(const QVec& v) const {
    QVec w = v;
    reduce_leading(w);
    return w.empty();
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<int, QVec>& pivots() const { return pivots_; }

 private:
  std::map<int, QVec> pivots_;
};

/// Rank of a set of sparse vectors over ℚ.
inline std::size_t rank_of(const std::vector<QVec>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

/// Expresses vectors modulo a subspace (the image) in terms of a chosen
/// family of representatives. Used to read off cohomology classes.
class QuotientReducer {
 public:
  QuotientReducer(const std::vector<QVec>& image, const std::vector<QVec>& representatives)
      : nreps_(representatives.size()) {
    for (const auto& v : image) image_.insert(v);
    for (std::size_t i = 0; i < representatives.size(); ++i) {
      QVec r = image_.reduce_full(representatives[i]);
      add_tracked(std::move(r), QVec::unit(static_cast<int>(i)));
    }
  }

  std::size_t representatives_independent() const { return reps_.size(); }

  /// Coefficients c with v = Σ c_i rep_i + (element of the image); nullopt
  /// when v is not in span(image ∪ representatives).
  std::optional<QVec> coordinates(const QVec& v) const {
    QVec w = image_.reduce_full(v);
    QVec coeffs;
    while (!w.empty()) {
      auto it = reps_.find(w.lead_index());
      if (it == reps_.end()) return std::nullopt;
      Q f = -w.lead_value();
      w.axpy(f, it->second.first);
      w = image_.reduce_full(std::move(w));
      coeffs.axpy(-f, it->second.second);
    }
    return coeffs;
  }

  bool in_image(const QVec& v) const { return image_.contains(v); }
  std::size_t image_rank() const { return image_.rank(); }

 private:
  void add_tracked(QVec v, QVec track) {
    while (!v.empty()) {
      auto it = reps_.find(v.lead_index());
      if (it == reps_.end()) break;
      Q f = -v.lead_value();
      v.axpy(f, it->second.first);
      v = image_.reduce_full(std::move(v));
      track.axpy(f, it->second.second);
    }
    if (v.empty()) return;
    Q inv = 1 / v.lead_value();
    v *= inv;
    track *= inv;
    const int lead = v.lead_index();
    reps_.emplace(lead, std::make_pair(std::move(v), std::move(track)));
  }

  Echelon image_;
  std::map<int, std::pair<QVec, QVec>> reps_;
  std::size_t nreps_;
};

}  // namespace twistalg
