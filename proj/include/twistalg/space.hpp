#pragma once

#include <twistalg/grading.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

struct BasisElement {
  std::string name;
  BiDegree degree;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Finite-dimensional ℤ×ℤ/2-graded vector space with a named, ordered basis.
class BigradedSpace {
 public:
  BigradedSpace() = default;
  explicit BigradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) { index(); }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& operator[](std::size_t i) const { return basis_[i]; }
  const BiDegree& degree(std::size_t i) const { return basis_[i].degree; }
  int parity(std::size_t i) const { return basis_[i].degree.parity(); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::out_of_range("BigradedSpace: no basis element named '" + name + "'");
    return *i;
  }

  /// Indices of basis elements in a given cohomological degree.
  std::vector<std::size_t> in_degree(int cohomological) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree.cohomological == cohomological) out.push_back(i);
    return out;
  }

  /// V[n]: an element of degree d in V has degree d-n in V[n].
  BigradedSpace shift(int n) const {
    std::vector<BasisElement> b = basis_;
    for (auto& e : b) e.degree.cohomological -= n;
    return BigradedSpace(std::move(b));
  }

  /// Linear dual with the dual basis; cohomological degrees are negated.
  /// Dualizing a dual returns the original names.
  BigradedSpace dual() const {
    std::vector<BasisElement> b;
    b.reserve(basis_.size());
    for (const auto& e : basis_) b.push_back({dual_name(e.name), -e.degree});
    return BigradedSpace(std::move(b));
  }

  friend BigradedSpace direct_sum(const BigradedSpace& a, const BigradedSpace& b) {
    std::vector<BasisElement> out = a.basis_;
    out.insert(out.end(), b.basis_.begin(), b.basis_.end());
    return BigradedSpace(std::move(out));
  }

  friend BigradedSpace tensor(const BigradedSpace& a, const BigradedSpace& b) {
    std::vector<BasisElement> out;
    out.reserve(a.dim() * b.dim());
    for (const auto& x : a.basis_)
      for (const auto& y : b.basis_) out.push_back({x.name + "⊗" + y.name, x.degree + y.degree});
    return BigradedSpace(std::move(out));
  }

  friend bool operator==(const BigradedSpace& a, const BigradedSpace& b) { return a.basis_ == b.basis_; }

  static bool is_dual_name(const std::string& n) { return n.size() > 3 && n.ends_with("^∨"); }

  static std::string dual_name(const std::string& n) {
    if (is_dual_name(n)) {
      std::string base = n.substr(0, n.size() - std::string("^∨").size());
      if (base.size() > 2 && base.front() == '(' && base.back() == ')') base = base.substr(1, base.size() - 2);
      return base;
    }
    if (n.find("⊗") != std::string::npos || n.find_first_of("*+ ") != std::string::npos)
      return "(" + n + ")^∨";
    return n + "^∨";
  }

 private:
  void index() {
    lookup_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      auto [it, inserted] = lookup_.emplace(basis_[i].name, i);
      if (!inserted) throw std::invalid_argument("BigradedSpace: duplicate basis name '" + basis_[i].name + "'");
    }
  }

  std::vector<BasisElement> basis_;
  std::map<std::string, std::size_t> lookup_;
};

}  // namespace twistalg
