#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "grquiver/errors.hpp"
#include "grquiver/grcore.hpp"
#include "grquiver/quiver.hpp"
#include "grquiver/rep.hpp"
#include "oracle.hpp"

using grq::field;
using grq::gr_measure;
using grq::mat;
using grq::quiver;
using grq::rep;

namespace {

rep random_rep(std::mt19937_64& rng, const quiver& q, field f,
               const std::vector<std::uint32_t>& max_dims) {
  std::vector<std::uint32_t> dims(q.n);
  for (std::uint32_t v = 0; v < q.n; ++v) dims[v] = rng() % (max_dims[v] + 1);
  rep m = rep::zero(q, f, dims);
  for (auto& mp : m.maps)
    for (auto& x : mp.a) x = static_cast<std::uint8_t>(rng() % f.p());
  return m;
}

std::set<std::vector<std::uint8_t>> key_set(const std::vector<grq::subspaces>& v) {
  std::set<std::vector<std::uint8_t>> s;
  for (const auto& x : v) s.insert(x.key());
  return s;
}

// Kronecker module (k^n --(A,B)--> k^n) given by two square matrices
rep kronecker_pair(field f, const mat& A, const mat& B) {
  rep m = rep::zero(grq::preset("kronecker")->q, f, {A.cols, A.rows});
  m.maps[0] = A;
  m.maps[1] = B;
  return m;
}

// (1,1,1)-dimensional module of the three-arrow triangle, maps (alpha, beta, gamma)
rep a21_triple(field f, std::uint8_t al, std::uint8_t be, std::uint8_t ga) {
  rep m = rep::zero(grq::preset("a21")->q, f, {1, 1, 1});
  m.maps[0].at(0, 0) = al;
  m.maps[1].at(0, 0) = be;
  m.maps[2].at(0, 0) = ga;
  return m;
}

gr_measure gm(std::vector<std::uint32_t> v) { return gr_measure(std::move(v)); }

}  // namespace

TEST_CASE("all_submodules agrees with brute force") {
  std::mt19937_64 rng(901);
  auto kr = grq::preset("kronecker")->q;
  auto a21 = grq::preset("a21")->q;
  for (int t = 0; t < 30; ++t) {
    rep m = random_rep(rng, kr, field(2), {3, 3});
    CHECK(key_set(grq::all_submodules(m)) == key_set(oracle::all_submodules(m)));
  }
  for (int t = 0; t < 15; ++t) {
    rep m = random_rep(rng, a21, field(2), {2, 2, 2});
    CHECK(key_set(grq::all_submodules(m)) == key_set(oracle::all_submodules(m)));
  }
  for (int t = 0; t < 10; ++t) {
    rep m = random_rep(rng, kr, field(3), {2, 2});
    CHECK(key_set(grq::all_submodules(m)) == key_set(oracle::all_submodules(m)));
  }
}

TEST_CASE("all_submodules is sorted, bounded by zero and the full module") {
  std::mt19937_64 rng(902);
  auto q = grq::preset("a21")->q;
  for (int t = 0; t < 10; ++t) {
    rep m = random_rep(rng, q, field(2), {2, 2, 2});
    auto lat = grq::all_submodules(m);
    REQUIRE(!lat.empty());
    CHECK(lat.front().total_dim() == 0);
    CHECK(lat.back().total_dim() == m.length());
    for (std::size_t i = 1; i < lat.size(); ++i)
      CHECK(lat[i - 1].total_dim() <= lat[i].total_dim());
  }
}

TEST_CASE("is_indecomposable agrees with the idempotent search") {
  std::mt19937_64 rng(903);
  auto kr = grq::preset("kronecker")->q;
  auto a21 = grq::preset("a21")->q;
  int decomposables = 0, indecomposables = 0;
  for (int t = 0; t < 40; ++t) {
    rep m = random_rep(rng, kr, field(2), {2, 2});
    if (m.is_zero()) continue;
    bool got = grq::is_indecomposable(m);
    CHECK(got == oracle::indecomposable(m));
    (got ? indecomposables : decomposables)++;
  }
  for (int t = 0; t < 15; ++t) {
    rep m = random_rep(rng, a21, field(2), {2, 2, 2});
    if (m.is_zero() || grq::hom_dim(m, m) > 12) continue;
    CHECK(grq::is_indecomposable(m) == oracle::indecomposable(m));
  }
  for (int t = 0; t < 15; ++t) {
    rep m = random_rep(rng, kr, field(3), {2, 2});
    if (m.is_zero() || grq::hom_dim(m, m) > 7) continue;
    CHECK(grq::is_indecomposable(m) == oracle::indecomposable(m));
  }
  CHECK(decomposables > 3);
  CHECK(indecomposables > 3);
}

TEST_CASE("projectives, injectives and simples are indecomposable; sums are not") {
  for (const auto& name : grq::preset_names()) {
    auto q = grq::preset(name)->q;
    field f(2);
    for (std::uint32_t v = 0; v < q.n; ++v) {
      CHECK(grq::is_indecomposable(rep::simple(q, f, v)));
      CHECK(grq::is_indecomposable(rep::projective(q, f, v)));
      CHECK(grq::is_indecomposable(rep::injective(q, f, v)));
      CHECK(!grq::is_indecomposable(
          rep::direct_sum(rep::projective(q, f, v), rep::simple(q, f, v))));
    }
    CHECK(!grq::is_indecomposable(rep::zero(q, f, std::vector<std::uint32_t>(q.n, 0))));
  }
}

TEST_CASE("is_isomorphic: change of basis, distinct modules, self") {
  std::mt19937_64 rng(904);
  auto kr = grq::preset("kronecker")->q;
  field f(2);
  for (int t = 0; t < 20; ++t) {
    rep m = random_rep(rng, kr, f, {3, 3});
    CHECK(grq::is_isomorphic(m, m));
    // conjugate by random invertible matrices at both vertices
    std::vector<mat> g;
    std::vector<mat> ginv;
    for (std::uint32_t v = 0; v < kr.n; ++v) {
      for (;;) {
        mat c(f, m.dims[v], m.dims[v]);
        for (auto& x : c.a) x = static_cast<std::uint8_t>(rng() % f.p());
        if (auto ci = grq::inverse(c)) {
          g.push_back(c);
          ginv.push_back(*ci);
          break;
        }
      }
    }
    rep n = m;
    for (std::uint32_t a = 0; a < kr.arrows.size(); ++a) {
      auto [s, tt] = kr.arrows[a];
      n.maps[a] = g[tt].mul(m.maps[a]).mul(ginv[s]);
    }
    CHECK(grq::is_isomorphic(m, n));
  }
  // the three (1,1) regulars at distinct points are pairwise non-isomorphic
  mat one(f, 1, 1), zero(f, 1, 1);
  one.at(0, 0) = 1;
  rep r10 = kronecker_pair(f, one, zero);
  rep r01 = kronecker_pair(f, zero, one);
  rep r11 = kronecker_pair(f, one, one);
  CHECK(!grq::is_isomorphic(r10, r01));
  CHECK(!grq::is_isomorphic(r10, r11));
  CHECK(!grq::is_isomorphic(r01, r11));
  CHECK(grq::is_isomorphic(r11, r11));
  // decomposable vs indecomposable with equal dimension vectors
  rep ss = rep::direct_sum(rep::simple(kr, f, 0), rep::simple(kr, f, 1));
  CHECK(!grq::is_isomorphic(ss, r11));
}

TEST_CASE("gr_measure_of matches the recursive oracle") {
  std::mt19937_64 rng(905);
  auto kr = grq::preset("kronecker")->q;
  auto a21 = grq::preset("a21")->q;
  auto d4 = grq::preset("d4_tilde")->q;
  int nontrivial = 0;
  for (int t = 0; t < 25; ++t) {
    rep m = random_rep(rng, kr, field(2), {3, 3});
    CHECK(grq::gr_measure_of(m).mu == oracle::mu(m));
    if (m.length() >= 4) ++nontrivial;
  }
  for (int t = 0; t < 12; ++t) {
    rep m = random_rep(rng, a21, field(2), {2, 2, 2});
    CHECK(grq::gr_measure_of(m).mu == oracle::mu(m));
  }
  for (int t = 0; t < 6; ++t) {
    rep m = random_rep(rng, d4, field(2), {1, 1, 1, 1, 2});
    CHECK(grq::gr_measure_of(m).mu == oracle::mu(m));
  }
  for (int t = 0; t < 8; ++t) {
    rep m = random_rep(rng, kr, field(3), {2, 2});
    CHECK(grq::gr_measure_of(m).mu == oracle::mu(m));
  }
  CHECK(nontrivial > 5);
}

TEST_CASE("pinned measures over the Kronecker quiver") {
  field f(2);
  auto q = grq::preset("kronecker")->q;
  CHECK(grq::gr_measure_of(rep::simple(q, f, 1)).mu == gm({1}));
  CHECK(grq::gr_measure_of(rep::projective(q, f, 0)).mu == gm({1, 3}));
  CHECK(grq::gr_measure_of(rep::injective(q, f, 1)).mu == gm({1, 2, 3}));

  // regular layers at a rational point: Jordan blocks J_n(0) against the identity
  for (std::uint32_t n : {1u, 2u, 3u}) {
    mat A = mat::identity(f, n), B(f, n, n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) B.at(i, i + 1) = 1;
    std::vector<std::uint32_t> want;
    want.push_back(1);
    for (std::uint32_t i = 1; i <= n; ++i) want.push_back(2 * i);
    CHECK(grq::gr_measure_of(kronecker_pair(f, A, B)).mu == gm(want));  // {1,2,...,2n}
  }

  // regular at the irreducible quadratic point: no eigenvector, so the Gabriel-Roiter
  // submodule is preprojective and the measure differs from the rational layer (2,2)
  mat A = mat::identity(f, 2), C(f, 2, 2);
  C.at(0, 1) = 1;
  C.at(1, 0) = 1;
  C.at(1, 1) = 1;  // companion of x^2+x+1
  CHECK(grq::gr_measure_of(kronecker_pair(f, A, C)).mu == gm({1, 3, 4}));

  // decomposable module: measure is inherited from the best indecomposable submodule
  CHECK(grq::gr_measure_of(rep::direct_sum(rep::injective(q, f, 1), rep::simple(q, f, 0))).mu ==
        gm({1, 2, 3}));

  // (3,2) preinjective: Gabriel-Roiter submodule is the (2,2) rational layer
  mat A32(f, 2, 3), B32(f, 2, 3);
  A32.at(0, 0) = A32.at(1, 1) = 1;  // drop the last coordinate
  B32.at(0, 1) = B32.at(1, 2) = 1;  // drop the first
  rep i2 = kronecker_pair(f, A32, B32);
  CHECK(grq::is_indecomposable(i2));
  CHECK(grq::gr_measure_of(i2).mu == gm({1, 2, 4, 5}));
}

TEST_CASE("pinned measures over the three-arrow triangle") {
  field f(2);
  auto q = grq::preset("a21")->q;
  CHECK(grq::gr_measure_of(rep::projective(q, f, 1)).mu == gm({1, 2}));
  CHECK(grq::gr_measure_of(rep::projective(q, f, 0)).mu == gm({1, 2, 4}));
  CHECK(grq::gr_measure_of(rep::injective(q, f, 2)).mu == gm({1, 2, 3, 4}));
  // delta-dimensional modules: both homogeneous ones and the exceptional-tube pair
  CHECK(grq::gr_measure_of(a21_triple(f, 1, 1, 0)).mu == gm({1, 2, 3}));
  CHECK(grq::gr_measure_of(a21_triple(f, 1, 1, 1)).mu == gm({1, 2, 3}));
  CHECK(grq::gr_measure_of(a21_triple(f, 0, 1, 1)).mu == gm({1, 2, 3}));
  CHECK(grq::gr_measure_of(a21_triple(f, 1, 0, 1)).mu == gm({1, 3}));
}

TEST_CASE("witness chains realize the measure") {
  std::mt19937_64 rng(906);
  for (const char* name : {"kronecker", "a21"}) {
    auto q = grq::preset(name)->q;
    field f(2);
    for (int t = 0; t < 20; ++t) {
      rep m = random_rep(rng, q, f, std::vector<std::uint32_t>(q.n, 2));
      auto res = grq::gr_measure_of(m);
      REQUIRE(res.chain.size() == res.mu.size());
      for (std::size_t i = 0; i < res.chain.size(); ++i) {
        CHECK(res.chain[i].total_dim() == res.mu.elems()[i]);
        CHECK(grq::is_indecomposable(grq::sub_rep(m, res.chain[i])));
        if (i > 0) {
          CHECK(res.chain[i].contains(res.chain[i - 1]));
          CHECK(res.chain[i].total_dim() > res.chain[i - 1].total_dim());
        }
      }
      if (!m.is_zero() && grq::is_indecomposable(m))
        CHECK(res.chain.back().total_dim() == m.length());
    }
  }
}

TEST_CASE("gr_submodules: one representative per isomorphism class of maxima") {
  field f(2);
  auto q = grq::preset("kronecker")->q;
  // P(0) = (1,2): the three socle lines all realize {1} but are one class, S(1)
  auto subs = grq::gr_submodules(rep::projective(q, f, 0));
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].dims == std::vector<std::uint32_t>{0, 1});
  // simples have no proper nonzero submodules
  CHECK(grq::gr_submodules(rep::simple(q, f, 0)).empty());
  // rational layer (2,2): the unique regular (1,1) submodule wins
  mat A = mat::identity(f, 2), B(f, 2, 2);
  B.at(0, 1) = 1;
  auto h2 = kronecker_pair(f, A, B);
  auto gr = grq::gr_submodules(h2);
  REQUIRE(gr.size() == 1);
  CHECK(gr[0].dims == std::vector<std::uint32_t>{1, 1});
  CHECK(grq::gr_measure_of(gr[0]).mu == gm({1, 2}));
  // measure relation mu(M) = extend(mu(T), length(M)) for each representative
  auto res = grq::gr_measure_of(h2);
  for (const auto& t : res.gr_subs)
    CHECK(res.mu == grq::gr_measure_of(t).mu.extend(static_cast<std::uint32_t>(h2.length())));
}

TEST_CASE("gr_filtration walks simple -> layer -> module") {
  field f(2);
  auto q = grq::preset("kronecker")->q;
  mat A = mat::identity(f, 2), B(f, 2, 2);
  B.at(0, 1) = 1;
  auto h2 = kronecker_pair(f, A, B);
  auto filt = grq::gr_filtration(h2);
  REQUIRE(filt.size() == 3);
  CHECK(filt[0].dims == std::vector<std::uint32_t>{0, 1});  // S(1)
  CHECK(filt[1].dims == std::vector<std::uint32_t>{1, 1});  // rational layer 1
  CHECK(filt[2].dims == std::vector<std::uint32_t>{2, 2});
  CHECK(grq::is_isomorphic(filt[2], h2));
  auto single = grq::gr_filtration(rep::simple(q, f, 0));
  REQUIRE(single.size() == 1);
  CHECK(single[0].length() == 1);
}

TEST_CASE("measure of a proper indecomposable submodule is strictly smaller") {
  std::mt19937_64 rng(907);
  auto q = grq::preset("kronecker")->q;
  field f(2);
  int checked = 0;
  for (int t = 0; t < 80; ++t) {
    rep m = random_rep(rng, q, f, {2, 2});
    if (m.is_zero() || !grq::is_indecomposable(m)) continue;
    auto mu_m = grq::gr_measure_of(m).mu;
    for (const auto& u : grq::all_submodules(m)) {
      if (u.total_dim() == 0 || u.total_dim() == m.length()) continue;
      rep s = grq::sub_rep(m, u);
      if (!grq::is_indecomposable(s)) continue;
      CHECK(grq::gr_measure_of(s).mu < mu_m);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("decompose: Krull-Schmidt at desk scale") {
  std::mt19937_64 rng(908);
  auto q = grq::preset("kronecker")->q;
  field f(2);
  // indecomposable input comes back whole; direct sums split into matching parts
  rep p0 = rep::projective(q, f, 0);
  auto only = grq::decompose(p0);
  REQUIRE(only.size() == 1);
  CHECK(grq::is_isomorphic(only[0], p0));
  CHECK(grq::decompose(rep::zero(q, f, {0, 0})).empty());

  for (int t = 0; t < 15; ++t) {
    rep m = random_rep(rng, q, f, {2, 2});
    rep n = random_rep(rng, q, f, {2, 2});
    auto dm = grq::decompose(m);
    auto dn = grq::decompose(n);
    auto dsum = grq::decompose(rep::direct_sum(m, n));
    // summand multiset of the sum = union of the separate summand multisets
    REQUIRE(dsum.size() == dm.size() + dn.size());
    std::vector<rep> pool = dm;
    pool.insert(pool.end(), dn.begin(), dn.end());
    std::vector<bool> used(pool.size(), false);
    for (const auto& s : dsum) {
      CHECK(grq::is_indecomposable(s));
      bool matched = false;
      for (std::size_t i = 0; i < pool.size() && !matched; ++i)
        if (!used[i] && grq::is_isomorphic(s, pool[i])) {
          used[i] = true;
          matched = true;
        }
      CHECK(matched);
    }
    std::uint64_t total = 0;
    for (const auto& s : dsum) total += s.length();
    CHECK(total == m.length() + n.length());
  }
}

TEST_CASE("is_isomorphic is an equivalence relation on small samples") {
  std::mt19937_64 rng(909);
  auto q = grq::preset("kronecker")->q;
  field f(2);
  std::vector<rep> sample;
  for (int t = 0; t < 12; ++t) sample.push_back(random_rep(rng, q, f, {2, 2}));
  for (const auto& a : sample) CHECK(grq::is_isomorphic(a, a));
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.size(); ++j) {
      bool ij = grq::is_isomorphic(sample[i], sample[j]);
      CHECK(ij == grq::is_isomorphic(sample[j], sample[i]));
      if (!ij) continue;
      for (std::size_t k = 0; k < sample.size(); ++k)
        if (grq::is_isomorphic(sample[j], sample[k]))
          CHECK(grq::is_isomorphic(sample[i], sample[k]));
    }
}

TEST_CASE("submodule lattice of a rational (1,1) module has exactly three entries") {
  field f(2);
  mat one(f, 1, 1);
  one.at(0, 0) = 1;
  auto h1 = kronecker_pair(f, one, one);
  auto lat = grq::all_submodules(h1);
  REQUIRE(lat.size() == 3);
  CHECK(lat[0].total_dim() == 0);
  CHECK(lat[1].dims() == std::vector<std::uint32_t>{0, 1});
  CHECK(lat[2].total_dim() == 2);
}

TEST_CASE("budgets trip on oversized enumerations") {
  field f(2);
  auto q = grq::preset("kronecker")->q;
  grq::budgets tiny;
  tiny.subspace = 4;
  rep big = rep::zero(q, f, {3, 3});
  CHECK_THROWS_AS(grq::all_submodules(big, tiny), grq::budget_exhausted);
  grq::budgets tiny_endo;
  tiny_endo.endo = 2;
  // S(1)^2 has a 4-dimensional endomorphism algebra but Fitting splits it instantly
  rep ss = rep::direct_sum(rep::simple(q, f, 1), rep::simple(q, f, 1));
  CHECK(!grq::is_indecomposable(ss, tiny_endo));
}

TEST_CASE("both reference measures and the production measure coincide") {
  std::mt19937_64 rng(910);
  field f(2);
  auto kr = grq::preset("kronecker")->q;
  for (int t = 0; t < 8; ++t) {
    rep m = random_rep(rng, kr, f, {2, 2});
    auto fast = grq::gr_measure_of(m).mu;
    CHECK(fast == oracle::mu(m));
    CHECK(fast == oracle::mu_chains(m));
  }
  for (std::uint8_t al = 0; al < 2; ++al)
    for (std::uint8_t be = 0; be < 2; ++be)
      for (std::uint8_t ga = 0; ga < 2; ++ga) {
        rep m = a21_triple(f, al, be, ga);
        auto fast = grq::gr_measure_of(m).mu;
        CHECK(fast == oracle::mu(m));
        CHECK(fast == oracle::mu_chains(m));
      }
}
