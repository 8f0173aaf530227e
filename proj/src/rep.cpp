#include "grquiver/rep.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "grquiver/errors.hpp"

namespace grq {

namespace {

// paths grouped by endpoint, in the deterministic all_paths order
std::vector<std::vector<quiver::path>> paths_by(const quiver& q, bool group_by_from) {
  std::vector<std::vector<quiver::path>> out(q.n);
  for (const auto& p : q.all_paths()) out[group_by_from ? p.from : p.to].push_back(p);
  return out;
}

}  // namespace

rep rep::zero(const quiver& q, field f, std::vector<std::uint32_t> dims) {
  q.validate();
  if (dims.size() != q.n) throw invalid_input("dimension vector length != vertex count");
  rep m{q, f, std::move(dims), {}};
  m.maps.reserve(q.arrows.size());
  for (auto [s, t] : q.arrows) m.maps.emplace_back(f, m.dims[t], m.dims[s]);
  return m;
}

rep rep::simple(const quiver& q, field f, std::uint32_t v) {
  if (v >= q.n) throw invalid_input("simple: vertex out of range");
  std::vector<std::uint32_t> dims(q.n, 0);
  dims[v] = 1;
  return zero(q, f, std::move(dims));
}

rep rep::projective(const quiver& q, field f, std::uint32_t v) {
  if (v >= q.n) throw invalid_input("projective: vertex out of range");
  auto grouped = paths_by(q, true);  // by start vertex
  // basis of the space at w: paths v -> w
  std::vector<std::vector<quiver::path>> basis(q.n);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(q.n);
  for (const auto& p : grouped[v]) {
    index[p.to][p.arrows] = static_cast<std::uint32_t>(basis[p.to].size());
    basis[p.to].push_back(p);
  }
  std::vector<std::uint32_t> dims(q.n);
  for (std::uint32_t w = 0; w < q.n; ++w) dims[w] = static_cast<std::uint32_t>(basis[w].size());
  rep m = zero(q, f, dims);
  // arrow a: s -> t appends a to each path ending at s
  for (std::uint32_t a = 0; a < q.arrows.size(); ++a) {
    auto [s, t] = q.arrows[a];
    for (std::uint32_t j = 0; j < dims[s]; ++j) {
      auto ext = basis[s][j].arrows;
      ext.push_back(a);
      m.maps[a].at(index[t].at(ext), j) = 1;
    }
  }
  return m;
}

rep rep::injective(const quiver& q, field f, std::uint32_t v) {
  if (v >= q.n) throw invalid_input("injective: vertex out of range");
  auto grouped = paths_by(q, false);  // by end vertex
  // basis of the space at w: paths w -> v
  std::vector<std::vector<quiver::path>> basis(q.n);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(q.n);
  for (const auto& p : grouped[v]) {
    index[p.from][p.arrows] = static_cast<std::uint32_t>(basis[p.from].size());
    basis[p.from].push_back(p);
  }
  std::vector<std::uint32_t> dims(q.n);
  for (std::uint32_t w = 0; w < q.n; ++w) dims[w] = static_cast<std::uint32_t>(basis[w].size());
  rep m = zero(q, f, dims);
  // arrow a: s -> t strips a leading a; paths not starting with a go to zero
  for (std::uint32_t a = 0; a < q.arrows.size(); ++a) {
    auto [s, t] = q.arrows[a];
    for (std::uint32_t j = 0; j < dims[s]; ++j) {
      const auto& pa = basis[s][j].arrows;
      if (!pa.empty() && pa.front() == a) {
        std::vector<std::uint32_t> rest(pa.begin() + 1, pa.end());
        m.maps[a].at(index[t].at(rest), j) = 1;
      }
    }
  }
  return m;
}

rep rep::direct_sum(const rep& a, const rep& b) {
  if (a.q != b.q || a.f != b.f) throw invalid_input("direct_sum: mismatched quiver or field");
  std::vector<std::uint32_t> dims(a.q.n);
  for (std::uint32_t v = 0; v < a.q.n; ++v) dims[v] = a.dims[v] + b.dims[v];
  rep m = zero(a.q, a.f, dims);
  for (std::uint32_t k = 0; k < a.q.arrows.size(); ++k) {
    auto [s, t] = a.q.arrows[k];
    for (std::uint32_t i = 0; i < a.dims[t]; ++i)
      for (std::uint32_t j = 0; j < a.dims[s]; ++j) m.maps[k].at(i, j) = a.maps[k].at(i, j);
    for (std::uint32_t i = 0; i < b.dims[t]; ++i)
      for (std::uint32_t j = 0; j < b.dims[s]; ++j)
        m.maps[k].at(a.dims[t] + i, a.dims[s] + j) = b.maps[k].at(i, j);
  }
  return m;
}

void rep::validate() const {
  q.validate();
  if (dims.size() != q.n) throw invalid_input("rep: dimension vector length != vertex count");
  if (maps.size() != q.arrows.size()) throw invalid_input("rep: one matrix per arrow required");
  for (std::uint32_t a = 0; a < q.arrows.size(); ++a) {
    auto [s, t] = q.arrows[a];
    if (maps[a].f != f) throw invalid_input("rep: arrow matrix over wrong field");
    if (maps[a].rows != dims[t] || maps[a].cols != dims[s])
      throw invalid_input("rep: arrow matrix shape mismatch");
  }
}

std::uint64_t rep::length() const {
  return std::accumulate(dims.begin(), dims.end(), std::uint64_t{0});
}

bool rep::is_zero() const { return length() == 0; }

std::uint64_t subspaces::total_dim() const {
  std::uint64_t d = 0;
  for (const auto& b : basis) d += b.cols;
  return d;
}

std::vector<std::uint32_t> subspaces::dims() const {
  std::vector<std::uint32_t> d;
  d.reserve(basis.size());
  for (const auto& b : basis) d.push_back(b.cols);
  return d;
}

std::vector<std::uint8_t> subspaces::key() const {
  std::vector<std::uint8_t> k;
  for (const auto& b : basis) {
    k.push_back(static_cast<std::uint8_t>(b.cols));
    k.insert(k.end(), b.a.begin(), b.a.end());
    k.push_back(0xFF);  // separator; entries are < p <= 31
  }
  return k;
}

bool subspaces::contains(const subspaces& other) const {
  if (basis.size() != other.basis.size()) return false;
  for (std::size_t v = 0; v < basis.size(); ++v)
    if (!colspace_contains(basis[v], other.basis[v])) return false;
  return true;
}

subspaces zero_subspaces(const rep& m) {
  subspaces s;
  for (std::uint32_t v = 0; v < m.q.n; ++v) s.basis.emplace_back(m.f, m.dims[v], 0);
  return s;
}

subspaces full_subspaces(const rep& m) {
  subspaces s;
  for (std::uint32_t v = 0; v < m.q.n; ++v) s.basis.push_back(mat::identity(m.f, m.dims[v]));
  return s;
}

subspaces closure(const rep& m, const std::vector<mat>& gens) {
  if (gens.size() != m.q.n) throw invalid_input("closure: one generator block per vertex");
  subspaces s;
  for (std::uint32_t v = 0; v < m.q.n; ++v) {
    if (gens[v].rows != m.dims[v]) throw invalid_input("closure: generator row count mismatch");
    s.basis.push_back(column_echelon(gens[v]));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t a = 0; a < m.q.arrows.size(); ++a) {
      auto [sv, tv] = m.q.arrows[a];
      if (s.basis[sv].cols == 0) continue;
      mat grown = column_echelon(mat::hstack(s.basis[tv], m.maps[a].mul(s.basis[sv])));
      if (grown.cols != s.basis[tv].cols) {
        s.basis[tv] = std::move(grown);
        changed = true;
      }
    }
  }
  return s;
}

subspaces subspace_sum(const rep& m, const subspaces& a, const subspaces& b) {
  subspaces s;
  for (std::uint32_t v = 0; v < m.q.n; ++v)
    s.basis.push_back(column_echelon(mat::hstack(a.basis[v], b.basis[v])));
  return s;
}

rep sub_rep(const rep& m, const subspaces& s) {
  rep out = rep::zero(m.q, m.f, s.dims());
  for (std::uint32_t a = 0; a < m.q.arrows.size(); ++a) {
    auto [sv, tv] = m.q.arrows[a];
    auto x = solve(s.basis[tv], m.maps[a].mul(s.basis[sv]));
    if (!x) throw invalid_input("sub_rep: subspaces are not arrow-closed");
    out.maps[a] = std::move(*x);
  }
  return out;
}

namespace {

// section of the quotient: standard basis vectors at the non-pivot rows of the
// echelon basis, plus the projection matrix (bottom rows of [basis | section]^-1)
struct quotient_frame {
  mat section;  // dims[v] x (dims[v]-k)
  mat proj;     // (dims[v]-k) x dims[v]
};

quotient_frame quotient_frame_at(const field& f, const mat& basis, std::uint32_t dim) {
  std::vector<bool> is_pivot(dim, false);
  for (std::uint32_t j = 0; j < basis.cols; ++j) {
    std::uint32_t r = 0;
    while (r < basis.rows && basis.at(r, j) == 0) ++r;
    if (r == basis.rows) throw invalid_input("quotient_rep: zero basis column");
    is_pivot[r] = true;
  }
  mat section(f, dim, dim - basis.cols);
  std::uint32_t c = 0;
  for (std::uint32_t r = 0; r < dim; ++r)
    if (!is_pivot[r]) section.at(r, c++) = 1;
  auto inv = inverse(mat::hstack(basis, section));
  if (!inv) throw invalid_input("quotient_rep: basis columns are not independent");
  return {std::move(section), inv->rows_slice(basis.cols, dim)};
}

}  // namespace

rep quotient_rep(const rep& m, const subspaces& s) {
  std::vector<quotient_frame> frames;
  std::vector<std::uint32_t> dims(m.q.n);
  for (std::uint32_t v = 0; v < m.q.n; ++v) {
    frames.push_back(quotient_frame_at(m.f, s.basis[v], m.dims[v]));
    dims[v] = m.dims[v] - s.basis[v].cols;
  }
  rep out = rep::zero(m.q, m.f, dims);
  for (std::uint32_t a = 0; a < m.q.arrows.size(); ++a) {
    auto [sv, tv] = m.q.arrows[a];
    out.maps[a] = frames[tv].proj.mul(m.maps[a]).mul(frames[sv].section);
  }
  return out;
}

namespace {

// linear system for graded maps (phi_v)_v with phi_t A_a = B_a phi_s for all arrows;
// unknowns are the entries of all phi_v, row-major, vertices ascending
struct hom_problem {
  mat H;  // equations x unknowns
  std::vector<std::uint32_t> voff;  // unknown offset per vertex
  std::uint32_t unknowns = 0, equations = 0;
};

hom_problem build_hom_problem(const rep& A, const rep& B) {
  if (A.q != B.q || A.f != B.f) throw invalid_input("hom: mismatched quiver or field");
  hom_problem hp;
  hp.voff.resize(A.q.n);
  for (std::uint32_t v = 0; v < A.q.n; ++v) {
    hp.voff[v] = hp.unknowns;
    hp.unknowns += B.dims[v] * A.dims[v];
  }
  for (auto [s, t] : A.q.arrows) hp.equations += B.dims[t] * A.dims[s];
  hp.H = mat(A.f, hp.equations, hp.unknowns);
  std::uint32_t row = 0;
  for (std::uint32_t a = 0; a < A.q.arrows.size(); ++a) {
    auto [s, t] = A.q.arrows[a];
    // equation (i,j): sum_k phi_t(i,k) A_a(k,j) - sum_k B_a(i,k) phi_s(k,j) = 0
    for (std::uint32_t i = 0; i < B.dims[t]; ++i)
      for (std::uint32_t j = 0; j < A.dims[s]; ++j, ++row) {
        for (std::uint32_t k = 0; k < A.dims[t]; ++k)
          hp.H.at(row, hp.voff[t] + i * A.dims[t] + k) =
              A.f.add(hp.H.at(row, hp.voff[t] + i * A.dims[t] + k), A.maps[a].at(k, j));
        for (std::uint32_t k = 0; k < B.dims[s]; ++k)
          hp.H.at(row, hp.voff[s] + k * A.dims[s] + j) =
              A.f.sub(hp.H.at(row, hp.voff[s] + k * A.dims[s] + j), B.maps[a].at(i, k));
      }
  }
  return hp;
}

std::vector<mat> unvec_hom(const rep& A, const rep& B, const hom_problem& hp, const mat& flat,
                           std::uint32_t col) {
  std::vector<mat> phi;
  for (std::uint32_t v = 0; v < A.q.n; ++v) {
    mat pv(A.f, B.dims[v], A.dims[v]);
    for (std::uint32_t i = 0; i < B.dims[v]; ++i)
      for (std::uint32_t j = 0; j < A.dims[v]; ++j)
        pv.at(i, j) = flat.at(hp.voff[v] + i * A.dims[v] + j, col);
    phi.push_back(std::move(pv));
  }
  return phi;
}

}  // namespace

std::vector<std::vector<mat>> hom_basis(const rep& A, const rep& B) {
  auto hp = build_hom_problem(A, B);
  mat K = kernel_basis(hp.H);
  std::vector<std::vector<mat>> out;
  out.reserve(K.cols);
  for (std::uint32_t c = 0; c < K.cols; ++c) out.push_back(unvec_hom(A, B, hp, K, c));
  return out;
}

std::uint32_t hom_dim(const rep& A, const rep& B) {
  auto hp = build_hom_problem(A, B);
  return hp.unknowns - rank_of(hp.H);
}

std::uint32_t ext_dim(const rep& A, const rep& B) {
  auto hp = build_hom_problem(A, B);
  return hp.equations - rank_of(hp.H);
}

std::optional<rep> nonsplit_extension(const rep& A, const rep& B) {
  auto hp = build_hom_problem(A, B);
  mat image = column_echelon(hp.H);  // coboundaries inside the cocycle space
  if (image.cols == hp.equations) return std::nullopt;
  // first standard coordinate of the cocycle space not hit by a coboundary
  mat z(A.f, hp.equations, 1);
  bool found = false;
  for (std::uint32_t i = 0; i < hp.equations && !found; ++i) {
    mat e(A.f, hp.equations, 1);
    e.at(i, 0) = 1;
    if (!colspace_contains(image, e)) {
      z = std::move(e);
      found = true;
    }
  }
  if (!found) return std::nullopt;  // unreachable given the rank check
  std::vector<std::uint32_t> dims(A.q.n);
  for (std::uint32_t v = 0; v < A.q.n; ++v) dims[v] = B.dims[v] + A.dims[v];
  rep E = rep::zero(A.q, A.f, dims);
  std::uint32_t row = 0;
  for (std::uint32_t a = 0; a < A.q.arrows.size(); ++a) {
    auto [s, t] = A.q.arrows[a];
    // block structure [[B_a, z_a], [0, A_a]] on B-part-first coordinates
    for (std::uint32_t i = 0; i < B.dims[t]; ++i)
      for (std::uint32_t j = 0; j < B.dims[s]; ++j) E.maps[a].at(i, j) = B.maps[a].at(i, j);
    for (std::uint32_t i = 0; i < A.dims[t]; ++i)
      for (std::uint32_t j = 0; j < A.dims[s]; ++j)
        E.maps[a].at(B.dims[t] + i, B.dims[s] + j) = A.maps[a].at(i, j);
    for (std::uint32_t i = 0; i < B.dims[t]; ++i)
      for (std::uint32_t j = 0; j < A.dims[s]; ++j, ++row)
        E.maps[a].at(i, B.dims[s] + j) = z.at(row, 0);
  }
  return E;
}

}  // namespace grq
