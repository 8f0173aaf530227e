#include "grquiver/grcore.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace grq {

namespace {

using endo = std::vector<mat>;  // one square matrix per vertex

bool advance_odometer(std::vector<std::uint8_t>& c, std::uint32_t p) {
  for (auto& x : c) {
    if (++x < p) return true;
    x = 0;
  }
  return false;
}

endo combine(const rep& m, const std::vector<endo>& basis, const std::vector<std::uint8_t>& c) {
  endo phi;
  for (std::uint32_t v = 0; v < m.q.n; ++v) phi.emplace_back(m.f, m.dims[v], m.dims[v]);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!c[i]) continue;
    for (std::uint32_t v = 0; v < m.q.n; ++v)
      phi[v] = phi[v].add(basis[i][v].scale(c[i]));
  }
  return phi;
}

endo endo_sum(const endo& a, const endo& b) {
  endo r;
  for (std::size_t v = 0; v < a.size(); ++v) r.push_back(a[v].add(b[v]));
  return r;
}

bool vertexwise_invertible(const endo& phi) {
  for (const auto& pv : phi)
    if (rank_of(pv) != pv.rows) return false;
  return true;
}

// rank of phi^N for N past stabilization; 0 => nilpotent, total => invertible,
// anything else certifies a nontrivial direct-sum decomposition (Fitting)
std::uint64_t stable_rank(const rep& m, const endo& phi) {
  std::uint32_t n = 0;
  for (auto d : m.dims) n = std::max(n, d);
  std::uint64_t r = 0;
  for (std::uint32_t v = 0; v < m.q.n; ++v)
    if (m.dims[v]) r += rank_of(phi[v].pow(n));
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

namespace {

// an endomorphism whose Fitting decomposition splits m, or nullopt when m is
// indecomposable (zero module counts as decomposable with no witness available)
std::optional<endo> find_splitter(const rep& m, const budgets& bud) {
  const auto basis = hom_basis(m, m);
  const std::size_t e = basis.size();
  if (e == 1) return std::nullopt;  // End = scalars
  const std::uint64_t total = m.length();

  auto splits = [&](const endo& phi) {
    const std::uint64_t r = stable_rank(m, phi);
    return r > 0 && r < total;
  };

  // Fitting fast path over a deterministic candidate pool
  for (const auto& phi : basis)
    if (splits(phi)) return phi;
  if (e <= 24) {
    for (std::size_t i = 0; i < e; ++i)
      for (std::size_t j = i + 1; j < e; ++j) {
        endo phi = endo_sum(basis[i], basis[j]);
        if (splits(phi)) return phi;
      }
  }
  std::mt19937_64 rng(0x5EED0000u + e);
  for (int t = 0; t < 64; ++t) {
    std::vector<std::uint8_t> c(e);
    for (auto& x : c) x = static_cast<std::uint8_t>(rng() % m.f.p());
    endo phi = combine(m, basis, c);
    if (splits(phi)) return phi;
  }

  // exact fallback: End is local iff every element is nilpotent or invertible
  if (checked_pow(m.f.p(), e, bud.endo) > bud.endo)
    throw undecided_error("indecomposability: endomorphism enumeration over budget");
  std::vector<std::uint8_t> c(e, 0);
  while (advance_odometer(c, m.f.p())) {
    endo phi = combine(m, basis, c);
    if (vertexwise_invertible(phi)) continue;
    if (stable_rank(m, phi) != 0) return phi;  // neither unit nor nilpotent
  }
  return std::nullopt;
}

}  // namespace

bool is_indecomposable(const rep& m, const budgets& bud) {
  if (m.is_zero()) return false;
  return !find_splitter(m, bud).has_value();
}

std::vector<rep> decompose(const rep& m, const budgets& bud) {
  std::vector<rep> out;
  std::vector<rep> stack{m};
  while (!stack.empty()) {
    rep cur = std::move(stack.back());
    stack.pop_back();
    if (cur.is_zero()) continue;
    auto phi = find_splitter(cur, bud);
    if (!phi) {
      out.push_back(std::move(cur));
      continue;
    }
    std::uint32_t n = 0;
    for (auto d : cur.dims) n = std::max(n, d);
    subspaces ker, im;
    for (std::uint32_t v = 0; v < cur.q.n; ++v) {
      mat pw = (*phi)[v].pow(n);
      ker.basis.push_back(column_echelon(kernel_basis(pw)));
      im.basis.push_back(column_echelon(pw));
    }
    stack.push_back(sub_rep(cur, ker));
    stack.push_back(sub_rep(cur, im));
  }
  std::sort(out.begin(), out.end(), [](const rep& a, const rep& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.dims != b.dims) return a.dims < b.dims;
    std::vector<std::uint8_t> ba, bb;
    for (const auto& mp : a.maps) ba.insert(ba.end(), mp.a.begin(), mp.a.end());
    for (const auto& mp : b.maps) bb.insert(bb.end(), mp.a.begin(), mp.a.end());
    return ba < bb;
  });
  return out;
}

bool is_isomorphic(const rep& a, const rep& b, const budgets& bud) {
  if (a.q != b.q || a.f != b.f) throw invalid_input("is_isomorphic: mismatched quiver or field");
  if (a.dims != b.dims) return false;
  if (a.is_zero()) return true;
  for (std::size_t k = 0; k < a.maps.size(); ++k)
    if (rank_of(a.maps[k]) != rank_of(b.maps[k])) return false;
  if (hom_dim(a, a) != hom_dim(b, b)) return false;
  const auto basis = hom_basis(a, b);
  const std::size_t h = basis.size();
  if (h == 0) return false;
  if (hom_dim(b, a) != h) return false;

  std::mt19937_64 rng(0x150C0DEu + h);
  for (int t = 0; t < 128; ++t) {
    std::vector<std::uint8_t> c(h);
    for (auto& x : c) x = static_cast<std::uint8_t>(rng() % a.f.p());
    if (vertexwise_invertible(combine(a, basis, c))) return true;
  }
  if (checked_pow(a.f.p(), h, bud.endo) > bud.endo)
    throw undecided_error("isomorphism: hom-space enumeration over budget");
  std::vector<std::uint8_t> c(h, 0);
  while (advance_odometer(c, a.f.p()))
    if (vertexwise_invertible(combine(a, basis, c))) return true;
  return false;
}

std::vector<subspaces> all_submodules(const rep& m, const budgets& bud) {
  m.validate();
  for (auto d : m.dims)
    if (checked_pow(m.f.p(), d, bud.subspace) > bud.subspace)
      throw budget_exhausted("submodules: vector enumeration over budget");

  std::map<std::vector<std::uint8_t>, std::size_t> seen;
  std::vector<subspaces> elems;
  auto push = [&](subspaces s) -> bool {
    auto k = s.key();
    if (seen.count(k)) return false;
    if (elems.size() >= bud.subspace)
      throw budget_exhausted("submodules: lattice size over budget");
    seen.emplace(std::move(k), elems.size());
    elems.push_back(std::move(s));
    return true;
  };
  push(zero_subspaces(m));

  // cyclic submodules: closure of a single vector, one vertex at a time
  std::vector<subspaces> cyclics;
  for (std::uint32_t v = 0; v < m.q.n; ++v) {
    if (m.dims[v] == 0) continue;
    std::vector<std::uint8_t> x(m.dims[v], 0);
    while (advance_odometer(x, m.f.p())) {
      // normalize: first nonzero coordinate 1 (scalar multiples span the same line)
      std::uint32_t first = 0;
      while (x[first] == 0) ++first;
      if (x[first] != 1) continue;
      std::vector<mat> gens;
      for (std::uint32_t w = 0; w < m.q.n; ++w) gens.emplace_back(m.f, m.dims[w], 0);
      gens[v] = mat(m.f, m.dims[v], 1);
      for (std::uint32_t i = 0; i < m.dims[v]; ++i) gens[v].at(i, 0) = x[i];
      auto c = closure(m, gens);
      if (push(c)) cyclics.push_back(std::move(c));
    }
  }

  // saturate under sums with cyclics: every submodule is a sum of cyclic ones
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& c : cyclics) {
      // copy: push may reallocate elems
      subspaces u = elems[head];
      push(subspace_sum(m, u, c));
    }

  std::sort(elems.begin(), elems.end(), [](const subspaces& a, const subspaces& b) {
    auto da = a.total_dim(), db = b.total_dim();
    if (da != db) return da < db;
    return a.key() < b.key();
  });
  return elems;
}

namespace {

struct lattice_dp {
  std::vector<subspaces> lat;
  std::vector<gr_measure> nu;     // measure of each element viewed as a module
  std::vector<std::ptrdiff_t> from;  // argmax proper submodule (-1 for zero)
  std::vector<char> indec;
};

lattice_dp run_dp(const rep& m, const budgets& bud) {
  lattice_dp d;
  d.lat = all_submodules(m, bud);
  const std::size_t n = d.lat.size();
  d.nu.resize(n);
  d.from.assign(n, -1);
  d.indec.assign(n, 0);
  std::vector<std::uint64_t> dim(n);
  for (std::size_t i = 0; i < n; ++i) dim[i] = d.lat[i].total_dim();

  // processed indices ordered by (nu descending, index ascending): the first
  // contained element found in this order is the best proper submodule
  std::vector<std::size_t> by_nu;
  auto nu_less = [&](std::size_t a, std::size_t b) {
    int c = compare(d.nu[a], d.nu[b]);
    if (c != 0) return c > 0;  // larger measure first
    return a < b;
  };
  by_nu.push_back(0);  // zero element: nu = {}, sorted last automatically

  for (std::size_t i = 1; i < n; ++i) {
    rep sub = sub_rep(m, d.lat[i]);
    d.indec[i] = is_indecomposable(sub, bud) ? 1 : 0;
    std::size_t best = 0;
    for (std::size_t j : by_nu) {
      if (dim[j] >= dim[i]) continue;
      if (d.lat[i].contains(d.lat[j])) {
        best = j;
        break;
      }
    }
    d.from[i] = static_cast<std::ptrdiff_t>(best);
    d.nu[i] = d.indec[i] ? d.nu[best].extend(static_cast<std::uint32_t>(dim[i])) : d.nu[best];
    by_nu.insert(std::lower_bound(by_nu.begin(), by_nu.end(), i, nu_less), i);
  }
  return d;
}

}  // namespace

measure_result gr_measure_of(const rep& m, const budgets& bud) {
  measure_result res;
  if (m.is_zero()) return res;
  auto d = run_dp(m, bud);
  const std::size_t n = d.lat.size();
  const std::size_t top = n - 1;
  res.mu = d.nu[top];
  std::vector<std::size_t> idx;
  for (std::ptrdiff_t cur = static_cast<std::ptrdiff_t>(top); cur > 0; cur = d.from[cur])
    if (d.indec[cur]) idx.push_back(static_cast<std::size_t>(cur));
  std::reverse(idx.begin(), idx.end());
  for (auto i : idx) res.chain.push_back(d.lat[i]);

  // maximal-measure proper indecomposable submodules, one per isomorphism class
  gr_measure best;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (best < d.nu[i]) best = d.nu[i];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!d.indec[i] || d.nu[i] != best) continue;
    rep cand = sub_rep(m, d.lat[i]);
    bool fresh = true;
    for (const auto& have : res.gr_subs)
      if (is_isomorphic(have, cand, bud)) {
        fresh = false;
        break;
      }
    if (fresh) res.gr_subs.push_back(std::move(cand));
  }
  return res;
}

std::vector<rep> gr_submodules(const rep& m, const budgets& bud) {
  return gr_measure_of(m, bud).gr_subs;
}

std::vector<rep> gr_filtration(const rep& m, const budgets& bud) {
  auto res = gr_measure_of(m, bud);
  std::vector<rep> out;
  out.reserve(res.chain.size());
  for (const auto& s : res.chain) out.push_back(sub_rep(m, s));
  return out;
}

}  // namespace grq
