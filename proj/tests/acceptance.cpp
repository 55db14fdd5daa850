// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <twistalg/bf.hpp>
#include <twistalg/freefield.hpp>
#include <twistalg/koszul.hpp>
#include <twistalg/susy.hpp>
#include <twistalg/vertex.hpp>

using namespace twistalg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

struct Criterion {
  int id;
  std::string what;
  double limit_s;
  std::function<Outcome()> body;
};

WeylElement w(std::initializer_list<std::pair<std::tuple<int, int, int>, int>> terms) {
  WeylElement out;
  for (const auto& [k, c] : terms) out[k] = Q(c);
  return out;
}

Q fact(int n) {
  Q r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// multisets of generators by total weight
std::map<int, std::size_t> pbw_enumerate(const std::vector<int>& weights, int cap) {
  std::map<int, std::size_t> out;
  for (int k = 0; k <= cap; ++k) out[k] = 0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int s) {
    ++out[s];
    for (std::size_t i = from; i < weights.size(); ++i)
      if (s + weights[i] <= cap) rec(i, s + weights[i]);
  };
  rec(0, 0);
  return out;
}

// sl2 current model evaluated straight from structure constants
struct Lin {
  std::map<std::pair<int, Exp2>, Q> lin;
  Q c = 0;
  void clean() { std::erase_if(lin, [](const auto& e) { return e.second == 0; }); }
  bool zero() const { return lin.empty() && c == 0; }
  bool operator==(const Lin& o) const { return lin == o.lin && c == o.c; }
};

Lin bracket_oracle(const LieAlgebra& g, const Lin& A, const Lin& B, const Exp2& m) {
  Lin out;
  for (const auto& [xa, ca] : A.lin)
    for (const auto& [yb, cb] : B.lin) {
      const auto& [x, j] = xa;
      const auto& [y, k] = yb;
      const Q sgn = (k[0] + k[1]) % 2 ? -1 : 1;
      for (int i0 = 0; i0 <= j[0]; ++i0)
        for (int i1 = 0; i1 <= j[1]; ++i1) {
          const Q pre = ca * cb * fact(m[0]) * fact(m[1]) * sgn / (fact(k[0]) * fact(k[1]) * fact(i0) * fact(i1));
          if (k[0] + i0 == m[0] && k[1] + i1 == m[1])
            for (int z = 0; z < g.dim(); ++z)
              if (const Q s = g.structure_constant(y, x, z); s != 0) out.lin[{z, Exp2{j[0] - i0, j[1] - i1}}] += pre * s;
          if (i0 == j[0] && i1 == j[1] && g.form) {
            const Q kap = (*g.form)[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            if (k[0] + i0 + 1 == m[0] && k[1] + i1 == m[1]) out.c += pre * kap;
            if (k[0] + i0 == m[0] && k[1] + i1 + 1 == m[1]) out.c += pre * kap;
          }
        }
    }
  out.clean();
  return out;
}

Lin jacobi_oracle(const LieAlgebra& g, const Lin& a, const Lin& b, const Lin& c, const Exp2& f, const Exp2& h) {
  auto add = [](Lin& into, const Lin& x, const Q& s) {
    for (const auto& [k, v] : x.lin) into.lin[k] += s * v;
    into.c += s * x.c;
  };
  Lin dev = bracket_oracle(g, bracket_oracle(g, a, b, f), c, h);
  add(dev, bracket_oracle(g, bracket_oracle(g, a, c, h), b, f), -1);
  for (int k0 = 0; k0 <= h[0]; ++k0)
    for (int k1 = 0; k1 <= h[1]; ++k1) {
      const Q bin = fact(h[0]) * fact(h[1]) / (fact(k0) * fact(k1) * fact(h[0] - k0) * fact(h[1] - k1));
      add(dev, bracket_oracle(g, a, bracket_oracle(g, b, c, {k0, k1}), {f[0] + h[0] - k0, f[1] + h[1] - k1}), -bin);
    }
  dev.clean();
  return dev;
}

Lin of_poly(const Poly& p) {
  Lin out;
  for (const auto& [m, s] : p.terms()) {
    if (m.is_unit()) {
      out.c += s.coeff(0);
      continue;
    }
    const int x = m.factors.front().first;
    out.lin[{ConformalModel::gen_of(x), ConformalModel::order_of(x)}] += s.coeff(0);
  }
  out.clean();
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = "'" TWISTALG_CLI_PATH "' " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome free_field_cohomology() {
  Outcome o;
  for (int n = 3; n <= 65; ++n) {
    const LatticeInterval I(0, n - 1);
    if (linear_observable_cohomology(I) != std::pair<std::size_t, std::size_t>(2, 0)) o.fail("linear, " + std::to_string(n) + " sites");
    if (field_complex_cohomology(I) != std::pair<std::size_t, std::size_t>(2, 0)) o.fail("fields, " + std::to_string(n) + " sites");
  }
  for (int s = 1; s <= 4; ++s) {
    std::size_t monomials = 0;
    for (int i = 0; i <= s; ++i) monomials += static_cast<std::size_t>(s - i + 1);
    const FreeField ff(LatticeInterval(0, 5), s);
    for (int hb = 0; hb <= 1; ++hb) {
      auto dims = ff.cohomology_dims(Q(hb));
      std::erase_if(dims, [](const auto& e) { return e.second == 0; });
      if (dims != std::map<int, std::size_t>{{0, monomials}}) o.fail("full cohomology, sym_cap " + std::to_string(s));
    }
  }
  if (o.ok) o.note = "(2,0) for 3..65 sites; H = q,p polynomials for sym_cap 1..4";
  return o;
}

Outcome weyl_relation() {
  Outcome o;
  const PQPoly p{{{0, 1}, Q(1)}}, q{{{1, 0}, Q(1)}}, p2{{{0, 2}, Q(1)}}, q2{{{2, 0}, Q(1)}};
  for (const auto& [sites, cap, hcap] : std::vector<std::tuple<int, int, int>>{{6, 3, 2}, {8, 3, 3}, {8, 4, 3}}) {
    const FreeField V(LatticeInterval(0, sites - 1), cap, hcap);
    const std::string tag = " sites=" + std::to_string(sites) + " cap=" + std::to_string(cap) + " hcap=" + std::to_string(hcap);
    if (weyl_commutator(V, p, q) != w({{{1, 0, 0}, 1}})) o.fail("[p,q]" + tag);
    if (weyl_commutator(V, p2, q) != w({{{1, 0, 1}, 2}})) o.fail("[p^2,q]" + tag);
    if (hamiltonian(V, q) != w({{{0, 0, 1}, 1}})) o.fail("H(q)" + tag);
    if (cap >= 4 && hamiltonian(V, q2) != w({{{0, 1, 1}, 2}, {{1, 0, 0}, 1}})) o.fail("H(q^2)" + tag);
  }
  if (o.ok) o.note = "[p,q]=ħ, [p²,q]=2ħp, H(q)=p at sites 6..8";
  return o;
}

Outcome d1_bracket() {
  Outcome o;
  const D1Report r = d1_bracket_check(FreeField(LatticeInterval(0, 5), 2));
  if (r.nonzero_deviations) o.fail(std::to_string(r.nonzero_deviations) + " nonzero deviations");
  else o.note = std::to_string(r.pairs) + " pairs, all zero";
  return o;
}

Outcome susy_twist() {
  Outcome o;
  QMat4 minus_id{};
  for (int r = 0; r < 4; ++r) minus_id[r][r] = -1;
  for (int n : {1, 2, 4}) {
    const SuperTranslation T(n);
    if (!check_linf(T.as_linf()).ok()) o.fail("linf dim W=" + std::to_string(n));
    for (int i = 0; i < 2; ++i)
      for (int a = 0; a < n; ++a) {
        const QVec Q_ = QVec::unit(T.plus(i, a));
        if (twist_image(T, Q_).dim() != 2) o.fail("image dim W=" + std::to_string(n));
        if (!T.bracket(Q_, Q_).empty()) o.fail("[Q,Q] dim W=" + std::to_string(n));
        if (qmul(complex_structure_from(T, Q_), complex_structure_from(T, Q_)) != minus_id) o.fail("J^2");
      }
  }
  if (o.ok) o.note = "image dim 2, J^2=-1 for dim W = 1, 2, 4";
  return o;
}

Outcome bf_models() {
  Outcome o;
  std::size_t count = 0;
  for (const auto& gn : {"abelian1", "sl2"})
    for (int n = 1; n <= 3; ++n)
      for (int N : {1, 2, 4}) {
        const BFStructure bf = build_bf(lie_by_name(gn), n, N);
        const std::string tag = std::string(gn) + " n=" + std::to_string(n) + " N=" + std::to_string(N);
        if (!check_linf(bf.structure).ok()) o.fail("linf " + tag);
        if (!check_pairing_invariance(bf.structure, bf.pairing).ok()) o.fail("pairing " + tag);
        if (!bf.pairing.nondegenerate()) o.fail("degenerate " + tag);
        ++count;
      }
  for (int n = 1; n <= 2; ++n)
    for (int cap = 1; cap <= 2; ++cap) {
      auto got = local_observables(lie_abelian(1), n, 4, cap);
      auto want = n4_abelian_pattern(1, n, cap);
      std::erase_if(got, [](const auto& e) { return e.second == 0; });
      std::erase_if(want, [](const auto& e) { return e.second == 0; });
      if (got != want) o.fail("N=4 pattern n=" + std::to_string(n) + " cap=" + std::to_string(cap));
    }
  if (o.ok) o.note = std::to_string(count) + " models, N=4 pattern n<=2";
  return o;
}

Outcome higher_jacobi() {
  Outcome o;
  const ConformalModel ab = abelian_vertex_model();
  const auto fs3 = monomials_up_to(3);
  const JacobiSweep r = higher_jacobi_check(ab, linear_observables(ab, 4), fs3, fs3);
  if (!r.ok()) o.fail(r.witnesses.empty() ? "abelian sweep" : r.witnesses.front());
  // closed form: {φ_(j), ψ_(k)}_{z^m} = m! (-1)^{|k|} / (j! k!) ħ c when m = j + k
  const Q c = abelian_pairing_constant();
  for (const auto& j : monomials_up_to(3))
    for (const auto& k : monomials_up_to(3))
      for (const auto& m : monomials_up_to(6)) {
        const Poly got = ab.bracket(ab.linear(kPhi, j), ab.linear(kPsi, k), zmono(m[0], m[1]));
        Q want = 0;
        if (m[0] == j[0] + k[0] && m[1] == j[1] + k[1])
          want = fact(m[0]) * fact(m[1]) * ((k[0] + k[1]) % 2 ? -1 : 1) * c / (fact(j[0]) * fact(j[1]) * fact(k[0]) * fact(k[1]));
        const Q have = got.is_zero() ? Q(0) : got.terms().begin()->second.coeff(1);
        if (have != want || got.terms().size() > 1) o.fail("abelian closed form");
      }
  const LieAlgebra g = lie_sl2();
  const ConformalModel sl = current_model(g);
  const std::vector<Exp2> f1{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  std::vector<Lin> obs;
  for (int x = 0; x < 3; ++x)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Lin l;
        l.lin[{x, Exp2{i, j}}] = 1;
        obs.push_back(l);
      }
  for (const auto& a : obs)
    for (const auto& b : obs)
      for (const auto& f : fs3) {
        const auto& [xa, ca] = *a.lin.begin();
        const auto& [xb, cb] = *b.lin.begin();
        if (!(of_poly(sl.bracket(sl.linear(xa.first, xa.second), sl.linear(xb.first, xb.second), zmono(f[0], f[1]))) ==
              bracket_oracle(g, a, b, f)))
          o.fail("sl2 bracket disagrees with the evaluator");
      }
  std::size_t evals = 0;
  for (const auto& f : f1)
    for (const auto& h : f1)
      for (const auto& a : obs)
        for (const auto& b : obs)
          for (const auto& cc : obs) {
            ++evals;
            if (!jacobi_oracle(g, a, b, cc, f, h).zero()) o.fail("sl2 evaluator deviation");
          }
  const JacobiSweep r2 = higher_jacobi_check(sl, linear_observables(sl, 2), fs3, fs3);
  if (!r2.ok()) o.fail("sl2 sweep");
  if (o.ok) o.note = std::to_string(r.evaluations + r2.evaluations) + " library + " + std::to_string(evals) + " evaluator checks";
  return o;
}

Outcome mu_constant() {
  Outcome o;
  const ConformalModel ab = abelian_vertex_model();
  const Q c2 = abelian_mu_constant(ab, 2);
  for (int D = 2; D <= 4; ++D)
    if (abelian_mu_constant(ab, D) != c2) o.fail("c changes at D=" + std::to_string(D));
  if (c2 == 0) o.fail("c = 0");
  if (!ab.mu(ab.linear(kPhi, {0, 0}), ab.linear(kPhi, {1, 0})).empty()) o.fail("μ(φ,φ') != 0");
  if (o.ok) o.note = "c = " + c2.get_str() + " for D=2..4";
  return o;
}

Outcome bar_tor() {
  Outcome o;
  for (const std::string h : {"abelian1", "abelian2", "abelian3", "heisenberg"}) {
    const LieAlgebra g = lie_by_name(h);
    const BarTorResult r = bar_tor_dims(g, 6, 4);
    if (!r.d_squared_zero) o.fail("d^2 " + h);
    if (!r.unresolved.empty()) o.fail("unresolved weights " + h);
    if (r.totals != pbw_enumerate(*g.weights, 4)) o.fail("Tor != PBW for " + h);
  }
  if (o.ok) o.note = "abelian 1-3 and heisenberg, weights <= 4";
  return o;
}

Outcome deformed() {
  Outcome o;
  for (const auto& gn : {"abelian1", "abelian2"})
    for (int n1 = 1; n1 <= 2; ++n1)
      for (int cap = 1; cap <= 2; ++cap) {
        const LieAlgebra g = lie_by_name(gn);
        const std::size_t gens = static_cast<std::size_t>(g.dim() * n1);
        std::map<int, std::size_t> want;
        for (std::size_t k = 0; k <= static_cast<std::size_t>(cap) && k <= gens; ++k) want[static_cast<int>(k)] = choose(gens, k);
        for (int n2 = 1; n2 <= 3; ++n2)
          if (deformed_observables_dims(g, n1, n2, cap) != want)
            o.fail(std::string(gn) + " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) + " cap=" + std::to_string(cap));
      }
  if (o.ok) o.note = "exterior on z1 modes, independent of n2";
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  const fs::path d = fs::temp_directory_path() / ("twistalg_accept_" + std::to_string(::getpid()));
  fs::create_directories(d);
  for (const std::string s : {"susy", "freefield", "bf", "vertex", "koszul"})
    for (const std::string fmt : {"json", "csv"}) {
      const fs::path a = d / (s + "_a." + fmt), b = d / (s + "_b." + fmt);
      const std::string base = "run " + s + " --format " + fmt + " --out ";
      if (run_cli(base + "'" + a.string() + "'") != 0 || run_cli(base + "'" + b.string() + "'") != 0) o.fail(s + " exit status");
      else if (slurp(a).empty() || slurp(a) != slurp(b)) o.fail(s + "." + fmt + " differs between runs");
    }
  fs::remove_all(d);
  if (o.ok) o.note = "5 suites x json,csv byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> crits{
      {1, "lattice free field cohomology", 10, free_field_cohomology},
      {2, "Weyl relation from ordered products", 30, weyl_relation},
      {3, "d1 bracket compatibility", 5, d1_bracket},
      {4, "minimal twist of super-translations", 5, susy_twist},
      {5, "holomorphic BF models", 60, bf_models},
      {6, "higher Jacobi identity", 60, higher_jacobi},
      {7, "mu pairing constant", 5, mu_constant},
      {8, "bar construction Tor = PBW", 60, bar_tor},
      {9, "deformed theory observables", 30, deformed},
      {10, "CLI reports reproducible", 120, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : crits) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.limit_s) o.fail("over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit");
    failed += o.ok ? 0 : 1;
    std::cout << "criterion " << c.id << " [" << c.what << "]: " << (o.ok ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(2) << s << " s) " << o.note << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
