#pragma once

#include <twistalg/graded_map.hpp>
#include <twistalg/sparse.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistalg {

/// Graded pieces C^k with differentials d^k : C^k → C^{k+1}.
class CochainComplex {
 public:
  void set_piece(int k, BigradedSpace v) { pieces_[k] = std::move(v); }

  void set_differential(int k, GradedMap d) {
    if (d.degree().cohomological != 1) throw std::invalid_argument("CochainComplex: differential must raise degree by 1");
    if (!(d.source() == piece(k)) || !(d.target() == piece(k + 1)))
      throw std::invalid_argument("CochainComplex: differential " + std::to_string(k) + " has wrong source/target");
    d_[k] = std::move(d);
  }

  const std::map<int, BigradedSpace>& pieces() const { return pieces_; }
  const BigradedSpace& piece(int k) const {
    static const BigradedSpace empty;
    auto it = pieces_.find(k);
    return it == pieces_.end() ? empty : it->second;
  }
  /// d^k, or nullptr when it is zero.
  const GradedMap* differential(int k) const {
    auto it = d_.find(k);
    return it == d_.end() ? nullptr : &it->second;
  }

  /// First (k, row, col) at which d^{k+1} d^k is nonzero, rendered as text.
  std::optional<std::string> square_zero_violation() const {
    for (const auto& [k, d] : d_) {
      const GradedMap* next = differential(k + 1);
      if (!next) continue;
      for (std::size_t j = 0; j < d.source().dim(); ++j) {
        ScalarVec v = next->apply(d.column(j));
        if (!v.empty())
          return "d∘d ≠ 0 at degree " + std::to_string(k) + ": " + d.source()[j].name + " ↦ " +
                 v.lead_value().str() + "·" + piece(k + 2)[static_cast<std::size_t>(v.lead_index())].name;
      }
    }
    return std::nullopt;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (const auto& [k, v] : pieces_) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(v.dim());
    return chi;
  }

 private:
  std::map<int, BigradedSpace> pieces_;
  std::map<int, GradedMap> d_;
};

/// Basis of the kernel of the linear map with the given columns.
inline std::vector<QVec> kernel_basis(const std::vector<QVec>& cols) {
  std::map<int, std::pair<QVec, QVec>> piv;  // lead row -> (reduced column, combination)
  std::vector<QVec> out;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    QVec v = cols[j];
    QVec track = QVec::unit(static_cast<int>(j));
    while (!v.empty()) {
      auto it = piv.find(v.lead_index());
      if (it == piv.end()) break;
      Q f = -v.lead_value() / it->second.first.lead_value();
      v.axpy(f, it->second.first);
      track.axpy(f, it->second.second);
    }
    if (v.empty()) out.push_back(std::move(track));
    else {
      const int lead = v.lead_index();
      piv.emplace(lead, std::make_pair(std::move(v), std::move(track)));
    }
  }
  return out;
}

struct CohomologyResult {
  Q hbar;
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<QVec>> representatives;

  long long euler_characteristic() const {
    long long chi = 0;
    for (const auto& [k, n] : dims) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
    return chi;
  }
};

/// Cohomology after setting ħ to a rational value. Representatives are
/// kernel vectors reduced against the image; ties go to the earliest pivot.
inline CohomologyResult cohomology(const CochainComplex& c, const Q& hbar = Q(0), bool with_representatives = true) {
  CohomologyResult r;
  r.hbar = hbar;
  for (const auto& [k, v] : c.pieces()) {
    std::vector<QVec> out_cols, in_cols;
    if (const GradedMap* d = c.differential(k)) out_cols = d->specialize(hbar);
    if (const GradedMap* d = c.differential(k - 1)) in_cols = d->specialize(hbar);
    Echelon image;
    for (const auto& col : in_cols) image.insert(col);
    if (!with_representatives) {
      const std::size_t rank_out = out_cols.empty() ? 0 : rank_of(out_cols);
      r.dims[k] = v.dim() - rank_out - image.rank();
      continue;
    }
    std::vector<QVec> ker;
    if (out_cols.empty())
      for (std::size_t i = 0; i < v.dim(); ++i) ker.push_back(QVec::unit(static_cast<int>(i)));
    else
      ker = kernel_basis(out_cols);
    Echelon span = image;
    std::vector<QVec> reps;
    for (const auto& z : ker) {
      QVec red = image.reduce_full(z);
      if (span.insert(red)) reps.push_back(std::move(red));
    }
    r.dims[k] = reps.size();
    r.representatives[k] = std::move(reps);
  }
  return r;
}

/// Cohomology at ħ = 0 and at each additional requested value.
inline std::vector<CohomologyResult> cohomology_at(const CochainComplex& c, const std::vector<Q>& hbars = {Q(1)},
                                                   bool with_representatives = true) {
  std::vector<CohomologyResult> out{cohomology(c, Q(0), with_representatives)};
  for (const auto& h : hbars)
    if (h != 0) out.push_back(cohomology(c, h, with_representatives));
  return out;
}

}  // namespace twistalg
