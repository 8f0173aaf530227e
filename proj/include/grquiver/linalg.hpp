#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace grq {

// prime field F_p for p <= 31; elements are 0..p-1 stored in uint8_t
class field {
 public:
  explicit field(std::uint32_t p);
  std::uint32_t p() const { return p_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
    auto s = static_cast<std::uint32_t>(a) + b;
    return static_cast<std::uint8_t>(s >= p_ ? s - p_ : s);
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const {
    return static_cast<std::uint8_t>(a >= b ? a - b : a + p_ - b);
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    return static_cast<std::uint8_t>((static_cast<std::uint32_t>(a) * b) % p_);
  }
  std::uint8_t neg(std::uint8_t a) const { return static_cast<std::uint8_t>(a ? p_ - a : 0); }
  std::uint8_t inv(std::uint8_t a) const;  // requires a != 0

  bool operator==(const field& o) const { return p_ == o.p_; }
  bool operator!=(const field& o) const { return p_ != o.p_; }

 private:
  std::uint32_t p_;
  std::array<std::uint8_t, 32> inv_{};
};

// dense row-major matrix over F_p
struct mat {
  field f{2};
  std::uint32_t rows = 0, cols = 0;
  std::vector<std::uint8_t> a;

  mat() = default;
  mat(field fld, std::uint32_t r, std::uint32_t c)
      : f(fld), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  static mat identity(field fld, std::uint32_t n);

  std::uint8_t& at(std::uint32_t r, std::uint32_t c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::uint8_t at(std::uint32_t r, std::uint32_t c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  mat mul(const mat& o) const;
  mat add(const mat& o) const;
  mat sub(const mat& o) const;
  mat scale(std::uint8_t c) const;
  mat transpose() const;
  mat pow(std::uint64_t e) const;  // square matrices
  bool is_zero() const;

  static mat hstack(const mat& l, const mat& r);
  static mat vstack(const mat& t, const mat& b);
  mat cols_slice(std::uint32_t lo, std::uint32_t hi) const;  // [lo, hi)
  mat rows_slice(std::uint32_t lo, std::uint32_t hi) const;

  bool operator==(const mat& o) const {
    return f == o.f && rows == o.rows && cols == o.cols && a == o.a;
  }
};

// reduced row echelon form in place; returns the pivot column indices
std::vector<std::uint32_t> rref_inplace(mat& m);
std::uint32_t rank_of(mat m);
// columns form a basis of the right kernel {x : Mx = 0}; unique reduced form
mat kernel_basis(const mat& m);
// solve A X = B; nullopt when inconsistent
std::optional<mat> solve(const mat& A, const mat& B);
std::optional<mat> inverse(const mat& m);

// canonical (reduced column echelon, zero columns dropped) basis of the column space
mat column_echelon(const mat& m);
// does span(basis) contain every column of vecs?  basis need not be echelonized
bool colspace_contains(const mat& basis, const mat& vecs);

// every subspace of F_p^n as a canonical echelon basis, sorted by (dimension,
// entry bytes); count is the Gaussian binomial sum.  throws budget_exhausted when
// the count would exceed cap
std::vector<mat> all_subspaces(field f, std::uint32_t n, unsigned long long cap = 1ull << 20);
// canonical basis of span(a) + span(b)
mat span_sum(const mat& a, const mat& b);
// canonical basis of span(a) and span(b)'s intersection
mat span_intersect(const mat& a, const mat& b);

}  // namespace grq
