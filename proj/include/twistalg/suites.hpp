#pragma once
// Verification suites behind the command-line runner. Each suite turns a
// validated parameter set into a Report of named pass/fail checks.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bf.hpp"
#include "freefield.hpp"
#include "koszul.hpp"
#include "susy.hpp"
#include "vertex.hpp"

namespace twistalg {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct ParamSpec {
  std::string name;
  std::string doc;
  std::string def;
  // integer parameters use [lo, hi]; choice parameters list their values
  int lo = 0, hi = 0;
  std::vector<std::string> choices;

  bool is_choice() const { return !choices.empty(); }

  void validate(const std::string& suite, const std::string& v) const {
    if (is_choice()) {
      if (std::find(choices.begin(), choices.end(), v) == choices.end())
        throw std::out_of_range(suite + ": parameter " + name + "=" + v + " is not one of the allowed values");
      return;
    }
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size()) throw std::invalid_argument(suite + ": parameter " + name + "=" + v + " is not an integer");
    if (x < lo || x > hi)
      throw std::out_of_range(suite + ": parameter " + name + "=" + v + " outside [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
  }

  nlohmann::json schema() const {
    nlohmann::json j{{"name", name}, {"doc", doc}, {"default", def}};
    if (is_choice()) {
      j["type"] = "choice";
      j["choices"] = choices;
    } else {
      j["type"] = "int";
      j["min"] = lo;
      j["max"] = hi;
    }
    return j;
  }
};

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct Report {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, std::string> params;
  std::vector<Check> checks;
  std::map<std::string, std::map<std::string, std::string>> tables;
  std::map<std::string, double> timings;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  void sort_checks() {
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  }
  std::vector<std::string> summary() const {
    std::vector<std::string> out;
    for (const auto& c : checks) out.push_back(c.name + ": " + (c.pass ? "pass" : "fail"));
    return out;
  }
};

class SuiteContext {
 public:
  SuiteContext(Report& r, std::map<std::string, std::string> params) : rep_(r), params_(std::move(params)) {}

  int i(const std::string& k) const { return std::stoi(params_.at(k)); }
  const std::string& s(const std::string& k) const { return params_.at(k); }
  std::uint64_t seed() const { return rep_.seed; }

  void check(const std::string& name, bool pass, const std::string& witness = "") {
    rep_.checks.push_back({name, pass, witness});
  }
  void table(const std::string& t, const std::string& k, const std::string& v) { rep_.tables[t][k] = v; }

  template <class F>
  void timed(const std::string& label, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    rep_.timings[label] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

 private:
  Report& rep_;
  std::map<std::string, std::string> params_;
};

struct SuiteSpec {
  std::string name;
  std::string doc;
  std::vector<ParamSpec> params;
  std::function<void(SuiteContext&)> body;

  nlohmann::json schema() const {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : params) ps.push_back(p.schema());
    return {{"name", name}, {"doc", doc}, {"params", ps}};
  }
};

namespace suites_detail {

inline std::string dims_str(const std::map<int, std::size_t>& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!v) continue;
    os << (first ? "" : " ") << k << ":" << v;
    first = false;
  }
  return first ? "0" : os.str();
}

inline std::string first_or(const std::vector<std::string>& v, const std::string& fallback = "") {
  return v.empty() ? fallback : v.front();
}

inline WeylElement hbar_times(std::initializer_list<std::pair<std::tuple<int, int, int>, int>> terms) {
  WeylElement w;
  for (const auto& [k, c] : terms) w[k] = Q(c);
  return w;
}

// ---- susy -----------------------------------------------------------------

inline void run_susy(SuiteContext& cx) {
  const int max_n = cx.i("N");
  const int samples = cx.i("samples");
  std::mt19937_64 rng(cx.seed());
  std::uniform_int_distribution<int> coef(-3, 3);

  std::size_t tried = 0, bad_dim = 0, bad_j2 = 0, bad_orth = 0, bad_qq = 0, rejected_ok = 0, rejected_total = 0;
  std::string w_dim, w_j2, w_orth, w_qq;
  std::map<int, std::size_t> orientations;
  QMat4 identity{};
  for (int r = 0; r < 4; ++r) identity[r][r] = 1;
  QMat4 minus_identity = identity;
  for (int r = 0; r < 4; ++r) minus_identity[r][r] = -1;

  cx.timed("susy", [&] {
    for (int n = 1; n <= max_n; ++n) {
      const SuperTranslation T(n);
      const LinfReport lr = check_linf(T.as_linf());
      cx.check("check_linf(T^W) dimW=" + std::to_string(n), lr.ok(), first_or(lr.violations));

      std::vector<QVec> qs;
      for (int i = 0; i < 2; ++i)
        for (int a = 0; a < n; ++a) qs.push_back(QVec::unit(T.plus(i, a)));
      for (int k = 0; k < samples; ++k) {
        std::array<int, 2> sp{coef(rng), coef(rng)};
        std::vector<int> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = coef(rng);
        if ((sp[0] == 0 && sp[1] == 0) || std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) continue;
        VecBuilder<Q> b;
        for (int i = 0; i < 2; ++i)
          for (int a = 0; a < n; ++a) b.add(T.plus(i, a), Q(sp[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(a)]));
        qs.push_back(b.build());
      }
      for (const QVec& q : qs) {
        ++tried;
        const std::size_t d = twist_image(T, q).dim();
        if (d != 2 && !bad_dim++) w_dim = T.render(q) + " gives dim " + std::to_string(d);
        if (!validate_twisting(T, {q, std::vector<int>(static_cast<std::size_t>(n), 1)}).empty() && !bad_qq++)
          w_qq = T.render(q);
        const QMat4 J = complex_structure_from(T, q);
        if (qmul(J, J) != minus_identity && !bad_j2++) w_j2 = T.render(q);
        QMat4 jt{};
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) jt[r][c] = J[c][r];
        if (qmul(jt, J) != identity && !bad_orth++) w_orth = T.render(q);
        ++orientations[induced_orientation(J)];
      }
      if (n >= 2) {
        ++rejected_total;
        const QVec rank2 = QVec::unit(T.plus(0, 0)) + QVec::unit(T.plus(1, 1));
        try {
          complex_structure_from(T, rank2);
        } catch (const std::invalid_argument&) {
          ++rejected_ok;
        }
      }
    }
  });
  const std::string of = " of " + std::to_string(tried) + " minimal Q";
  cx.check("twist_image dim=2", bad_dim == 0, bad_dim ? w_dim : std::to_string(tried) + " minimal Q");
  cx.check("[Q,Q]=0 with weight one", bad_qq == 0, bad_qq ? w_qq : "");
  cx.check("J^2=-1", bad_j2 == 0, bad_j2 ? std::to_string(bad_j2) + of + ", first " + w_j2 : "");
  cx.check("J orthogonal", bad_orth == 0, bad_orth ? std::to_string(bad_orth) + of + ", first " + w_orth : "");
  cx.check("rank-two Q rejected", rejected_ok == rejected_total,
           std::to_string(rejected_ok) + "/" + std::to_string(rejected_total));
  for (const auto& [o, c] : orientations) cx.table("orientation", std::to_string(o), std::to_string(c));

  cx.check("regrade S+=+1", regrade({1, 0, 1}) == BiDegree(1, 0), regrade({1, 0, 1}).str());
  cx.check("regrade S-=-1", regrade({-1, 0, 1}) == BiDegree(-1, 0), regrade({-1, 0, 1}).str());
  cx.check("regrade t=(0,0)", regrade({0, 0, 0}) == BiDegree(0, 0), regrade({0, 0, 0}).str());

  const SuperTranslation T1(1);
  const GradedSupertranslation gs = graded_supertranslation(QVec::unit(T1.plus(0, 0)));
  const auto h = cohomology(gs.complex).dims;
  cx.table("twisted_cohomology", "dims", dims_str(h));
  const std::map<int, std::size_t> expect{{0, 2}, {1, 2}};
  cx.check("twisted cohomology holomorphic", dims_str(h) == dims_str(expect), dims_str(h));
  const LinfReport gl = check_linf(gs.dgl);
  cx.check("check_linf(twisted dgla)", gl.ok(), first_or(gl.violations));
}

// ---- freefield ------------------------------------------------------------

inline void run_freefield(SuiteContext& cx) {
  const int sites = cx.i("sites"), sym_cap = cx.i("sym_cap"), hbar_cap = cx.i("hbar_cap");
  const int max_sites = cx.i("max_sites"), full_sites = cx.i("full_sites"), full_cap = cx.i("full_cap");

  cx.timed("linear", [&] {
    std::string bad_lin, bad_field;
    for (int n = 3; n <= max_sites; ++n) {
      const LatticeInterval I(0, n - 1);
      const auto lin = linear_observable_cohomology(I);
      const auto fld = field_complex_cohomology(I);
      if (lin != std::make_pair<std::size_t, std::size_t>(2, 0) && bad_lin.empty())
        bad_lin = std::to_string(n) + " sites: (" + std::to_string(lin.first) + "," + std::to_string(lin.second) + ")";
      if (fld != std::make_pair<std::size_t, std::size_t>(2, 0) && bad_field.empty()) bad_field = std::to_string(n) + " sites";
    }
    const std::string range = "sites=3.." + std::to_string(max_sites);
    cx.check("linear_cohomology=(2,0) " + range, bad_lin.empty(), bad_lin);
    cx.check("field_complex_cohomology=(2,0) " + range, bad_field.empty(), bad_field);
  });

  cx.timed("full", [&] {
    for (int s = 1; s <= full_cap; ++s) {
      const FreeField ff(LatticeInterval(0, full_sites - 1), s);
      for (int hb = 0; hb <= 1; ++hb) {
        const auto dims = ff.cohomology_dims(Q(hb));
        const std::string tag = "sym_cap=" + std::to_string(s) + " hbar=" + std::to_string(hb);
        cx.table("full_cohomology", tag, dims_str(dims));
        const std::map<int, std::size_t> expect{{0, pbw_count(s)}};
        cx.check("full_cohomology=pbw " + tag, dims_str(dims) == dims_str(expect), dims_str(dims));
        const auto sq = ff.complex_at(Q(hb)).square_zero_violation();
        cx.check("d^2=0 " + tag, !sq, sq.value_or(""));
      }
      if (s == std::min(full_cap, 2)) {
        const D1Report r = d1_bracket_check(ff);
        cx.check("d1_bracket deviation=0", r.nonzero_deviations == 0,
                 std::to_string(r.pairs) + " pairs" + (r.witnesses.empty() ? "" : ", " + r.witnesses.front()));
      }
    }
  });

  cx.timed("weyl", [&] {
    const FreeField V(LatticeInterval(0, sites - 1), sym_cap, hbar_cap);
    const PQPoly p{{{0, 1}, Q(1)}}, q{{{1, 0}, Q(1)}}, p2{{{0, 2}, Q(1)}}, q2{{{2, 0}, Q(1)}};
    auto expect = [&](const std::string& name, const WeylElement& got, const WeylElement& want) {
      cx.check(name, got == want, render_weyl(got));
    };
    const WeylElement hbar = hbar_times({{{1, 0, 0}, 1}});
    expect("weyl_commutator(p,q)=ħ", weyl_commutator(V, p, q), hbar);
    expect("weyl_commutator(q,p)=-ħ", weyl_commutator(V, q, p), hbar_times({{{1, 0, 0}, -1}}));
    expect("weyl_commutator(p^2,q)=2ħp", weyl_commutator(V, p2, q), hbar_times({{{1, 0, 1}, 2}}));
    expect("hamiltonian(q)=p", hamiltonian(V, q), hbar_times({{{0, 0, 1}, 1}}));
    expect("hamiltonian(p)=0", hamiltonian(V, p), {});
    std::string moved;
    for (int left = 0; left + 6 <= sites; ++left)
      if (weyl_commutator(V, p, q, left) != hbar && moved.empty()) moved = "offset " + std::to_string(left);
    cx.check("weyl_commutator translation invariant", moved.empty(), moved);
    if (sym_cap >= 4) {
      // pq + qp = 2qp + ħ
      expect("hamiltonian(q^2)=pq+qp", hamiltonian(V, q2), hbar_times({{{0, 1, 1}, 2}, {{1, 0, 0}, 1}}));
      if (sites >= 8)
        expect("weyl_commutator(p^2,q^2)=4ħqp+2ħ^2", weyl_commutator(V, p2, q2),
               hbar_times({{{1, 1, 1}, 4}, {{2, 0, 0}, 2}}));
    }
    const FreeField U(LatticeInterval(2, 5), std::min(sym_cap, 3), hbar_cap);
    const std::size_t rk = inclusion_rank(U, V);
    cx.check("inclusion [2,5] injective", rk == U.class_basis_size(),
             std::to_string(rk) + "/" + std::to_string(U.class_basis_size()));
    bool overlap_rejected = false;
    try {
      factorization_product(V, {{LatticeInterval(0, 3), V.a(1)}, {LatticeInterval(3, 5), V.a(4)}});
    } catch (const std::invalid_argument&) {
      overlap_rejected = true;
    }
    cx.check("factorization_product rejects overlap", overlap_rejected);
  });
}

// ---- bf -------------------------------------------------------------------

inline std::vector<std::string> lie_choices(const std::string& v, const std::vector<std::string>& all) {
  return v == "both" ? all : std::vector<std::string>{v};
}

inline void run_bf(SuiteContext& cx) {
  const int max_n = cx.i("max_n"), sym_cap = cx.i("sym_cap"), pattern_n = cx.i("pattern_n");
  cx.timed("structures", [&] {
    for (const auto& gn : lie_choices(cx.s("g"), {"abelian1", "sl2"}))
      for (int n = 1; n <= max_n; ++n)
        for (int N : {1, 2, 4}) {
          const BFStructure bf = build_bf(lie_by_name(gn), n, N);
          const std::string tag = " g=" + gn + " n=" + std::to_string(n) + " N=" + std::to_string(N);
          const LinfReport l = check_linf(bf.structure);
          cx.check("check_linf(bf)" + tag, l.ok(), first_or(l.violations, std::to_string(l.tuples_checked) + " tuples"));
          const LinfReport inv = check_pairing_invariance(bf.structure, bf.pairing);
          cx.check("pairing invariance" + tag, inv.ok(), first_or(inv.violations));
          cx.check("pairing nondegenerate" + tag, bf.pairing.nondegenerate());
          const auto ct = compare_with_cotangent(bf);
          cx.check("cotangent agreement" + tag, ct.empty(), first_or(ct));
          cx.table("bf_dims", gn + " n=" + std::to_string(n) + " N=" + std::to_string(N),
                   std::to_string(bf.structure.dim()));
        }
  });
  cx.timed("observables", [&] {
    for (int n = 1; n <= pattern_n; ++n)
      for (int cap = 1; cap <= sym_cap; ++cap) {
        const auto got = local_observables(lie_abelian(1), n, 4, cap);
        const auto want = n4_abelian_pattern(1, n, cap);
        const std::string tag = "n=" + std::to_string(n) + " sym_cap=" + std::to_string(cap);
        cx.table("n4_local_observables", tag, dims_str(got));
        cx.check("N=4 local observables=Sym pattern " + tag, dims_str(got) == dims_str(want),
                 dims_str(got) + " vs " + dims_str(want));
      }
  });
  cx.timed("mc", [&] {
    for (const auto& gn : lie_choices(cx.s("g"), {"abelian1", "sl2"})) {
      std::string bad;
      std::size_t k = 0;
      for (const auto& c : mc_solutions_shape(lie_by_name(gn), 2)) {
        ++k;
        if (!c.consistent() && bad.empty()) bad = c.description + ": " + c.residual;
      }
      cx.check("mc flat+coadjoint g=" + gn, bad.empty(), bad.empty() ? std::to_string(k) + " cases" : bad);
    }
  });
}

// ---- vertex ---------------------------------------------------------------

inline void run_vertex(SuiteContext& cx) {
  const int D = cx.i("D"), fdeg = cx.i("f_degree"), sl2_D = cx.i("sl2_truncation");
  const int ladder_max = cx.i("ladder_max"), samples = cx.i("samples");
  const ConformalModel ab = abelian_vertex_model();

  cx.timed("local", [&] {
    cx.check("residue(z1^-1 z2^-1)=1", residue(zmono(-1, -1), zmono(0, 0)) == 1);
    bool hart = true;
    for (int d = 1; d <= D; ++d) hart = hart && hartogs_consistent(d);
    cx.check("annulus cohomology Hartogs D<=" + std::to_string(D), hart);
    std::string bad;
    for (const auto& m : monomials_up_to(3)) {
      std::map<std::pair<Exp2, Exp2>, Q> got;
      for (const auto& [a, b] : sweedler(zmono(m[0], m[1])))
        for (const auto& [ea, ca] : a)
          for (const auto& [eb, cb] : b) got[{ea, eb}] += ca * cb;
      for (const auto& i : below(m))
        if (got[{i, m - i}] != binomial(m, i) && bad.empty()) bad = render_z(zmono(m[0], m[1]));
      if (got.size() != below(m).size() && bad.empty()) bad = render_z(zmono(m[0], m[1]));
    }
    cx.check("sweedler coproduct binomial deg<=3", bad.empty(), bad);
  });

  cx.timed("mu", [&] {
    std::string cs;
    bool stable = true;
    Q first;
    for (int d = 2; d <= D; ++d) {
      const Q c = abelian_mu_constant(ab, d);
      cx.table("mu_constant", "D=" + std::to_string(d), c.get_str());
      if (d == 2) first = c;
      stable = stable && c == first && c != 0;
    }
    cx.check("mu(φ,ψ)=c·ħ·z1^-1 z2^-1, c stable for D=2.." + std::to_string(D), stable, "c=" + first.get_str());
    cx.check("mu pairing constant=residue normalization", first == abelian_pairing_constant(), first.get_str());
  });

  cx.timed("jacobi", [&] {
    const auto fs = monomials_up_to(fdeg);
    const auto sk = skew_violations(ab);
    cx.check("skew symmetry abelian", sk.empty(), first_or(sk));
    const JacobiSweep r = higher_jacobi_check(ab, linear_observables(ab, D), fs, fs);
    cx.check("higher_jacobi abelian D=" + std::to_string(D) + " deg<=" + std::to_string(fdeg), r.ok(),
             r.ok() ? std::to_string(r.evaluations) + " evaluations" : first_or(r.witnesses));
    const ConformalModel sl = current_model(lie_sl2());
    const auto sk2 = skew_violations(sl);
    cx.check("skew symmetry sl2", sk2.empty(), first_or(sk2));
    const JacobiSweep r2 = higher_jacobi_check(sl, linear_observables(sl, sl2_D), fs, fs);
    cx.check("higher_jacobi sl2 D=" + std::to_string(sl2_D) + " deg<=" + std::to_string(fdeg), r2.ok(),
             r2.ok() ? std::to_string(r2.evaluations) + " evaluations" : first_or(r2.witnesses));

    // random linear combinations, seeded
    std::mt19937_64 rng(cx.seed());
    std::uniform_int_distribution<int> coef(-2, 2);
    const auto obs = linear_observables(ab, D);
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    auto combo = [&] {
      Poly x;
      for (const auto& o : obs) {
        const int c = coef(rng);
        if (c) x += o * Scalar(Q(c));
      }
      return x;
    };
    std::size_t fails = 0;
    std::string w;
    for (int k = 0; k < samples; ++k) {
      const Poly a = combo(), b = combo(), c = combo();
      const Exp2 fe = fs[pick(rng)], ge = fs[pick(rng)];
      const Poly dev = higher_jacobi_deviation(ab, a, b, c, zmono(fe[0], fe[1]), zmono(ge[0], ge[1]));
      if (!dev.is_zero() && !fails++) w = ab.render(dev);
    }
    cx.check("higher_jacobi random combinations", fails == 0, fails ? w : std::to_string(samples) + " samples");
  });

  cx.timed("ladder", [&] {
    std::vector<int> long_ladder;
    for (int r = 1; r <= ladder_max; ++r) long_ladder.push_back(r);
    const std::vector<std::tuple<std::string, int, std::vector<int>>> cases{
        {"abelian1", 1, long_ladder}, {"sl2", 1, {1, 2}}, {"abelian1", 2, {1, 2}}, {"abelian1", 4, {1, 2}}};
    for (const auto& [gn, N, lad] : cases) {
      const VertexData V = vertex_assemble(lie_by_name(gn), N, lad, 2);
      const std::string tag = " g=" + gn + " N=" + std::to_string(N);
      bool inj = true, chain = true;
      for (const auto& st : V.steps) {
        inj = inj && st.injective();
        chain = chain && st.chain_map;
      }
      for (std::size_t i = 0; i < V.cohomology.size(); ++i)
        cx.table("vertex_levels", gn + " N=" + std::to_string(N) + " r=" + std::to_string(lad[i]),
                 dims_str(V.cohomology[i].dims));
      cx.check("ladder maps injective" + tag, inj);
      cx.check("ladder maps are chain maps" + tag, chain);
      cx.check("z-derivations commute" + tag, V.derivations.commute);
      cx.check("z-derivations satisfy Leibniz" + tag, V.derivations.leibniz);
      cx.check("z-derivations are chain maps" + tag, V.derivations.chain_map);
    }
  });
}

// ---- koszul ---------------------------------------------------------------

inline void run_koszul(SuiteContext& cx) {
  const int wcap = cx.i("weight_cap"), tcap = cx.i("tensor_cap");
  const int max_n1 = cx.i("max_n1"), max_n2 = cx.i("max_n2"), sym_cap = cx.i("sym_cap");
  cx.timed("bar", [&] {
    for (const std::string h : {"abelian1", "abelian2", "abelian3", "heisenberg"}) {
      const BarTorResult r = bar_tor_dims(lie_by_name(h), tcap, wcap);
      const std::string tag = " h=" + h;
      for (const auto& [w, d] : r.totals)
        cx.table("bar_tor", h + " w=" + std::to_string(w), std::to_string(d) + "/" + std::to_string(r.pbw.count(w) ? r.pbw.at(w) : 0));
      cx.check("bar_tor=pbw" + tag, r.matches_pbw(), r.unresolved.empty() ? "" : "unresolved weights present");
      cx.check("bar d^2=0" + tag, r.d_squared_zero);
    }
  });
  cx.timed("deformed", [&] {
    for (const std::string gn : {"abelian1", "sl2"})
      for (int n1 = 1; n1 <= max_n1; ++n1)
        for (int n2 = 1; n2 <= max_n2; ++n2) {
          const DeformedBF D = deformed_bf(lie_by_name(gn), n1, n2);
          const std::string tag = " g=" + gn + " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2);
          const LinfReport l = check_linf(D.structure);
          cx.check("check_linf(deformed)" + tag, l.ok(), first_or(l.violations));
          const auto [ker, coker] = deformed_l1_kernel_cokernel(D);
          const std::size_t want = static_cast<std::size_t>(D.g.dim() * n1);
          cx.check("deformed l1 kernel=dim(g)·n1, cokernel=0" + tag, ker == want && coker == 0,
                   std::to_string(ker) + "," + std::to_string(coker));
        }
    const LieAlgebra g = lie_by_name(cx.s("g"));
    for (int n1 = 1; n1 <= max_n1; ++n1)
      for (int cap = 1; cap <= sym_cap; ++cap) {
        const std::string want = dims_str(deformed_expected_dims(g, n1, cap));
        std::string bad;
        for (int n2 = 1; n2 <= max_n2; ++n2) {
          const std::string got = dims_str(deformed_observables_dims(g, n1, n2, cap));
          cx.table("deformed_observables", g.name + " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) +
                                               " sym_cap=" + std::to_string(cap),
                   got);
          if (got != want && bad.empty()) bad = "n2=" + std::to_string(n2) + ": " + got + " vs " + want;
        }
        cx.check("deformed observables=Sym, n2-independent g=" + g.name + " n1=" + std::to_string(n1) +
                     " sym_cap=" + std::to_string(cap),
                 bad.empty(), bad.empty() ? want : bad);
      }
  });
}

}  // namespace suites_detail

// ---- registry -------------------------------------------------------------

inline const std::vector<SuiteSpec>& suite_registry() {
  using namespace suites_detail;
  static const std::vector<SuiteSpec> reg{
      {"susy", "super-translation algebras and minimal twists",
       {{"N", "largest dim W checked (all dims 1..N)", "4", 1, 4, {}},
        {"samples", "random rank-one supercharges per dim W", "24", 0, 200, {}}},
       run_susy},
      {"freefield", "lattice free field: observables, Weyl algebra",
       {{"sites", "lattice sites for the Weyl checks", "8", 6, 16, {}},
        {"sym_cap", "polynomial degree cap for the Weyl checks", "4", 3, 4, {}},
        {"hbar_cap", "ħ truncation order", "3", 2, 4, {}},
        {"max_sites", "largest interval for the linear sweep", "65", 3, 65, {}},
        {"full_sites", "interval size for full cohomology", "6", 3, 8, {}},
        {"full_cap", "largest sym cap for full cohomology", "4", 1, 4, {}}},
       run_freefield},
      {"bf", "truncated holomorphic BF models",
       {{"g", "Lie algebra", "both", 0, 0, {"abelian1", "sl2", "both"}},
        {"max_n", "largest truncation order n", "3", 1, 4, {}},
        {"sym_cap", "Sym cap for local observables", "2", 1, 3, {}},
        {"pattern_n", "largest n for the N=4 observable count", "2", 1, 3, {}}},
       run_bf},
      {"vertex", "two-variable vertex analog: μ, higher Jacobi, ladder",
       {{"D", "truncation order of the abelian model", "4", 2, 4, {}},
        {"f_degree", "largest total degree of f and g", "3", 0, 3, {}},
        {"sl2_truncation", "truncation order of the sl2 current model", "2", 1, 3, {}},
        {"ladder_max", "longest truncation ladder for abelian1", "3", 2, 3, {}},
        {"samples", "random Jacobi samples", "64", 0, 1000, {}}},
       run_vertex},
      {"koszul", "bar construction and the deformed theory",
       {{"weight_cap", "largest weight", "4", 1, 5, {}},
        {"tensor_cap", "largest bar length", "6", 1, 7, {}},
        {"max_n1", "largest z1 truncation", "2", 1, 2, {}},
        {"max_n2", "largest z2 truncation", "3", 1, 3, {}},
        {"sym_cap", "Sym cap for deformed observables", "2", 1, 2, {}},
        {"g", "Lie algebra for deformed observables", "abelian1", 0, 0, {"abelian1", "abelian2"}}},
       run_koszul},
      {"all", "every suite with default parameters", {}, {}},
  };
  return reg;
}

inline const SuiteSpec& find_suite(const std::string& name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

/// Fills defaults and validates every supplied parameter.
inline std::map<std::string, std::string> effective_params(const SuiteSpec& spec,
                                                           const std::map<std::string, std::string>& given) {
  std::map<std::string, std::string> out;
  for (const auto& p : spec.params) out[p.name] = p.def;
  for (const auto& [k, v] : given) {
    auto it = std::find_if(spec.params.begin(), spec.params.end(), [&](const ParamSpec& p) { return p.name == k; });
    if (it == spec.params.end()) throw std::invalid_argument(spec.name + ": unknown parameter '" + k + "'");
    it->validate(spec.name, v);
    out[k] = v;
  }
  return out;
}

inline Report run_suite(const std::string& name, const std::map<std::string, std::string>& given = {},
                        std::uint64_t seed = kDefaultSeed) {
  const SuiteSpec& spec = find_suite(name);
  Report rep;
  rep.suite = name;
  rep.seed = seed;
  rep.params = effective_params(spec, given);
  if (name == "all") {
    for (const auto& s : suite_registry()) {
      if (s.name == "all") continue;
      Report sub = run_suite(s.name, {}, seed);
      for (auto& c : sub.checks) rep.checks.push_back({s.name + "/" + c.name, c.pass, std::move(c.witness)});
      for (auto& [t, rows] : sub.tables) rep.tables[s.name + "/" + t] = std::move(rows);
      for (auto& [t, v] : sub.timings) rep.timings[s.name + "/" + t] = v;
    }
  } else {
    SuiteContext cx(rep, rep.params);
    spec.body(cx);
  }
  rep.sort_checks();
  return rep;
}

// ---- serialization --------------------------------------------------------

inline nlohmann::json report_json(const Report& r, bool with_timings) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"verdict", c.pass ? "pass" : "fail"}, {"witness", c.witness}});
  nlohmann::json j{{"suite", r.suite},
                   {"config", {{"suite", r.suite}, {"seed", r.seed}, {"params", r.params}}},
                   {"passed", r.ok()},
                   {"checks", checks},
                   {"tables", r.tables},
                   {"summary", r.summary()}};
  if (with_timings) j["timings"] = r.timings;
  return j;
}

namespace suites_detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace suites_detail

/// Columns: kind,name,key,value.
inline std::string report_csv(const Report& r, bool with_timings) {
  using suites_detail::csv_field;
  std::ostringstream os;
  auto row = [&](const std::string& kind, const std::string& name, const std::string& key, const std::string& value) {
    os << kind << ',' << csv_field(name) << ',' << csv_field(key) << ',' << csv_field(value) << '\n';
  };
  os << "kind,name,key,value\n";
  row("config", "suite", "", r.suite);
  row("config", "seed", "", std::to_string(r.seed));
  for (const auto& [k, v] : r.params) row("config", "param", k, v);
  for (const auto& c : r.checks) {
    row("check", c.name, "verdict", c.pass ? "pass" : "fail");
    row("check", c.name, "witness", c.witness);
  }
  for (const auto& [t, rows] : r.tables)
    for (const auto& [k, v] : rows) row("table", t, k, v);
  for (const auto& s : r.summary()) row("summary", "", "", s);
  if (with_timings) {
    std::ostringstream ts;
    for (const auto& [k, v] : r.timings) {
      ts.str("");
      ts << v;
      row("timing", k, "seconds", ts.str());
    }
  }
  return os.str();
}

}  // namespace twistalg
