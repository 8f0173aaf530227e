#include "grquiver/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "grquiver/errors.hpp"

namespace grq {

namespace {
bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

field::field(std::uint32_t p) : p_(p) {
  if (p < 2 || p > 31 || !is_prime(p)) throw invalid_input("field: p must be a prime <= 31");
  for (std::uint32_t a = 1; a < p_; ++a)
    for (std::uint32_t b = 1; b < p_; ++b)
      if (a * b % p_ == 1) {
        inv_[a] = static_cast<std::uint8_t>(b);
        break;
      }
}

std::uint8_t field::inv(std::uint8_t a) const {
  if (a == 0 || a >= p_) throw std::logic_error("field::inv: not a unit");
  return inv_[a];
}

mat mat::identity(field fld, std::uint32_t n) {
  mat m(fld, n, n);
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

mat mat::mul(const mat& o) const {
  if (f != o.f || cols != o.rows) throw std::logic_error("mat::mul: shape/field mismatch");
  mat r(f, rows, o.cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t k = 0; k < cols; ++k) {
      const std::uint8_t v = at(i, k);
      if (!v) continue;
      for (std::uint32_t j = 0; j < o.cols; ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(v, o.at(k, j)));
    }
  return r;
}

mat mat::add(const mat& o) const {
  if (f != o.f || rows != o.rows || cols != o.cols) throw std::logic_error("mat::add: mismatch");
  mat r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = f.add(a[i], o.a[i]);
  return r;
}

mat mat::sub(const mat& o) const {
  if (f != o.f || rows != o.rows || cols != o.cols) throw std::logic_error("mat::sub: mismatch");
  mat r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = f.sub(a[i], o.a[i]);
  return r;
}

mat mat::scale(std::uint8_t c) const {
  mat r = *this;
  for (auto& x : r.a) x = f.mul(x, c);
  return r;
}

mat mat::transpose() const {
  mat r(f, cols, rows);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

mat mat::pow(std::uint64_t e) const {
  if (rows != cols) throw std::logic_error("mat::pow: square only");
  mat base = *this, acc = identity(f, rows);
  while (e) {
    if (e & 1) acc = acc.mul(base);
    e >>= 1;
    if (e) base = base.mul(base);
  }
  return acc;
}

bool mat::is_zero() const {
  for (auto x : a)
    if (x) return false;
  return true;
}

mat mat::hstack(const mat& l, const mat& r) {
  if (l.f != r.f || l.rows != r.rows) throw std::logic_error("mat::hstack: mismatch");
  mat m(l.f, l.rows, l.cols + r.cols);
  for (std::uint32_t i = 0; i < l.rows; ++i) {
    for (std::uint32_t j = 0; j < l.cols; ++j) m.at(i, j) = l.at(i, j);
    for (std::uint32_t j = 0; j < r.cols; ++j) m.at(i, l.cols + j) = r.at(i, j);
  }
  return m;
}

mat mat::vstack(const mat& t, const mat& b) {
  if (t.f != b.f || t.cols != b.cols) throw std::logic_error("mat::vstack: mismatch");
  mat m(t.f, t.rows + b.rows, t.cols);
  for (std::uint32_t i = 0; i < t.rows; ++i)
    for (std::uint32_t j = 0; j < t.cols; ++j) m.at(i, j) = t.at(i, j);
  for (std::uint32_t i = 0; i < b.rows; ++i)
    for (std::uint32_t j = 0; j < b.cols; ++j) m.at(t.rows + i, j) = b.at(i, j);
  return m;
}

mat mat::cols_slice(std::uint32_t lo, std::uint32_t hi) const {
  mat m(f, rows, hi - lo);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = lo; j < hi; ++j) m.at(i, j - lo) = at(i, j);
  return m;
}

mat mat::rows_slice(std::uint32_t lo, std::uint32_t hi) const {
  mat m(f, hi - lo, cols);
  for (std::uint32_t i = lo; i < hi; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) m.at(i - lo, j) = at(i, j);
  return m;
}

std::vector<std::uint32_t> rref_inplace(mat& m) {
  std::vector<std::uint32_t> pivots;
  std::uint32_t row = 0;
  for (std::uint32_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::uint32_t piv = row;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::uint32_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    const std::uint8_t s = m.f.inv(m.at(row, col));
    for (std::uint32_t j = 0; j < m.cols; ++j) m.at(row, j) = m.f.mul(m.at(row, j), s);
    for (std::uint32_t i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      const std::uint8_t v = m.at(i, col);
      if (!v) continue;
      for (std::uint32_t j = 0; j < m.cols; ++j)
        m.at(i, j) = m.f.sub(m.at(i, j), m.f.mul(v, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::uint32_t rank_of(mat m) { return static_cast<std::uint32_t>(rref_inplace(m).size()); }

mat kernel_basis(const mat& m) {
  mat r = m;
  auto pivots = rref_inplace(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::uint32_t> free_cols;
  for (std::uint32_t c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  mat k(m.f, m.cols, static_cast<std::uint32_t>(free_cols.size()));
  for (std::uint32_t j = 0; j < free_cols.size(); ++j) {
    const std::uint32_t fc = free_cols[j];
    k.at(fc, j) = 1;
    for (std::uint32_t i = 0; i < pivots.size(); ++i)
      k.at(pivots[i], j) = m.f.neg(r.at(i, fc));
  }
  return k;
}

std::optional<mat> solve(const mat& A, const mat& B) {
  if (A.f != B.f || A.rows != B.rows) throw std::logic_error("solve: mismatch");
  mat aug = mat::hstack(A, B);
  auto pivots = rref_inplace(aug);
  for (auto c : pivots)
    if (c >= A.cols) return std::nullopt;  // a pivot in the rhs block: inconsistent
  mat x(A.f, A.cols, B.cols);
  for (std::uint32_t i = 0; i < pivots.size(); ++i)
    for (std::uint32_t j = 0; j < B.cols; ++j) x.at(pivots[i], j) = aug.at(i, A.cols + j);
  return x;
}

std::optional<mat> inverse(const mat& m) {
  if (m.rows != m.cols) throw std::logic_error("inverse: square only");
  auto x = solve(m, mat::identity(m.f, m.rows));
  if (!x) return std::nullopt;
  // solve() found a preimage for every basis vector only if rank is full
  if (rank_of(m) != m.rows) return std::nullopt;
  return x;
}

mat column_echelon(const mat& m) {
  mat t = m.transpose();
  auto pivots = rref_inplace(t);
  mat basis(m.f, m.rows, static_cast<std::uint32_t>(pivots.size()));
  for (std::uint32_t j = 0; j < pivots.size(); ++j)
    for (std::uint32_t i = 0; i < m.rows; ++i) basis.at(i, j) = t.at(j, i);
  return basis;
}

bool colspace_contains(const mat& basis, const mat& vecs) {
  if (vecs.cols == 0) return true;
  if (basis.cols == 0) return vecs.is_zero();
  return rank_of(mat::hstack(basis, vecs)) == rank_of(basis);
}

std::vector<mat> all_subspaces(field f, std::uint32_t n, unsigned long long cap) {
  if (n > 25) throw budget_exhausted("all_subspaces: ambient dimension too large");
  std::vector<mat> out;
  // enumerate reduced column echelon forms directly: choose pivot rows, then fill
  // the free entries (below each pivot, at non-pivot rows) in every possible way
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::uint32_t> pivots;
    for (std::uint32_t r = 0; r < n; ++r)
      if (mask & (1u << r)) pivots.push_back(r);
    const std::uint32_t k = static_cast<std::uint32_t>(pivots.size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;  // (row, col)
    for (std::uint32_t j = 0; j < k; ++j)
      for (std::uint32_t r = pivots[j] + 1; r < n; ++r)
        if (!(mask & (1u << r))) free_pos.emplace_back(r, j);
    std::vector<std::uint8_t> fill(free_pos.size(), 0);
    for (;;) {
      mat b(f, n, k);
      for (std::uint32_t j = 0; j < k; ++j) b.at(pivots[j], j) = 1;
      for (std::size_t i = 0; i < free_pos.size(); ++i) b.at(free_pos[i].first, free_pos[i].second) = fill[i];
      if (out.size() >= cap) throw budget_exhausted("all_subspaces: count over budget");
      out.push_back(std::move(b));
      std::size_t i = 0;
      while (i < fill.size() && ++fill[i] == f.p()) fill[i++] = 0;
      if (i == fill.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const mat& a, const mat& b) {
    if (a.cols != b.cols) return a.cols < b.cols;
    return a.a < b.a;
  });
  return out;
}

mat span_sum(const mat& a, const mat& b) { return column_echelon(mat::hstack(a, b)); }

mat span_intersect(const mat& a, const mat& b) {
  if (a.f != b.f || a.rows != b.rows) throw std::logic_error("span_intersect: mismatch");
  if (a.cols == 0 || b.cols == 0) return mat(a.f, a.rows, 0);
  // x in both spans: a*u = b*w, i.e. (u;w) in ker[a | -b]; intersection = a * (u part)
  mat k = kernel_basis(mat::hstack(a, b.scale(a.f.neg(1))));
  return column_echelon(a.mul(k.rows_slice(0, a.cols)));
}

}  // namespace grq
