#pragma once

#include <twistalg/grading.hpp>
#include <twistalg/scalar.hpp>
#include <twistalg/space.hpp>
#include <twistalg/sparse.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

using ScalarVec = SparseVec<Scalar>;

/// Linear map between bigraded spaces, stored by columns: column j is the
/// image of source basis element j.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(BigradedSpace source, BigradedSpace target, BiDegree degree)
      : source_(std::move(source)), target_(std::move(target)), degree_(degree), cols_(source_.dim()) {}

  static GradedMap identity(const BigradedSpace& v) {
    GradedMap m(v, v, BiDegree());
    for (std::size_t i = 0; i < v.dim(); ++i) m.set(i, i, Scalar(1));
    return m;
  }

  const BigradedSpace& source() const { return source_; }
  const BigradedSpace& target() const { return target_; }
  const BiDegree& degree() const { return degree_; }
  int parity() const { return degree_.parity(); }
  const ScalarVec& column(std::size_t j) const { return cols_.at(j); }

  /// Sets entry (row i of target, column j of source). Entries that would
  /// break homogeneity are rejected.
  void set(std::size_t i, std::size_t j, const Scalar& value) {
    check_entry(i, j, value);
    ScalarVec& c = cols_.at(j);
    c.axpy(Scalar(1), ScalarVec::unit(static_cast<int>(i), value - c.get(static_cast<int>(i))));
  }
  void add(std::size_t i, std::size_t j, const Scalar& value) {
    check_entry(i, j, value);
    cols_.at(j).add(static_cast<int>(i), value);
  }
  void set_column(std::size_t j, ScalarVec col) {
    for (const auto& [i, v] : col) check_entry(static_cast<std::size_t>(i), j, v);
    cols_.at(j) = std::move(col);
  }
  Scalar get(std::size_t i, std::size_t j) const { return cols_.at(j).get(static_cast<int>(i)); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }
  bool is_zero() const { return nonzeros() == 0; }

  ScalarVec apply(const ScalarVec& v) const {
    VecBuilder<Scalar> b;
    for (const auto& [j, x] : v) b.add(cols_.at(static_cast<std::size_t>(j)), x);
    return b.build();
  }

  /// Columns specialized at a rational value of ħ.
  std::vector<QVec> specialize(const Q& hbar) const {
    std::vector<QVec> out;
    out.reserve(cols_.size());
    for (const auto& c : cols_) {
      std::vector<QVec::Entry> e;
      for (const auto& [i, x] : c) e.emplace_back(i, x.at(hbar));
      out.emplace_back(std::move(e));
    }
    return out;
  }

  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.degree_ == b.degree_ && a.cols_ == b.cols_;
  }

 private:
  void check_entry(std::size_t i, std::size_t j, const Scalar& value) const {
    if (i >= target_.dim() || j >= source_.dim()) throw std::out_of_range("GradedMap: entry index out of range");
    if (value.is_zero()) return;
    if (target_.degree(i) != source_.degree(j) + degree_)
      throw std::invalid_argument("GradedMap: entry (" + target_[i].name + ", " + source_[j].name +
                                  ") does not respect degree " + degree_.str());
  }

  BigradedSpace source_, target_;
  BiDegree degree_;
  std::vector<ScalarVec> cols_;
};

/// f∘g (g applied first).
inline GradedMap compose(const GradedMap& f, const GradedMap& g) {
  if (!(g.target() == f.source())) throw std::invalid_argument("compose: target of g differs from source of f");
  GradedMap out(g.source(), f.target(), f.degree() + g.degree());
  for (std::size_t j = 0; j < g.source().dim(); ++j) out.set_column(j, f.apply(g.column(j)));
  return out;
}

namespace detail {
inline bool all_dual_names(const BigradedSpace& v) {
  if (v.dim() == 0) return false;
  for (const auto& b : v.basis())
    if (!BigradedSpace::is_dual_name(b.name)) return false;
  return true;
}
}  // namespace detail

/// Transpose with the Koszul sign (f^∨ξ)(v) = (-1)^{|f||ξ|} ξ(f v).
/// A map between dual spaces is dualized back through the evaluation
/// isomorphism V → V^∨∨, which contributes (-1)^{|f|}; with that,
/// dualize(dualize(f)) = f.
inline GradedMap dualize(const GradedMap& f) {
  GradedMap out(f.target().dual(), f.source().dual(), f.degree());
  const bool back = detail::all_dual_names(f.source()) && detail::all_dual_names(f.target());
  const int extra = (back && f.parity()) ? -1 : 1;
  for (std::size_t j = 0; j < f.source().dim(); ++j)
    for (const auto& [i, x] : f.column(j)) {
      const int s = (f.parity() && f.target().parity(static_cast<std::size_t>(i))) ? -1 : 1;
      out.add(j, static_cast<std::size_t>(i), x * Scalar(s * extra));
    }
  return out;
}

}  // namespace twistalg
