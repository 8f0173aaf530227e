#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grquiver/linalg.hpp"
#include "grquiver/quiver.hpp"

namespace grq {

// finite-dimensional representation: one F_p space per vertex, one matrix per
// arrow (maps[i] sends the source space to the target space, column convention)
struct rep {
  quiver q;
  field f{2};
  std::vector<std::uint32_t> dims;
  std::vector<mat> maps;

  static rep zero(const quiver& q, field f, std::vector<std::uint32_t> dims);
  static rep simple(const quiver& q, field f, std::uint32_t v);
  static rep projective(const quiver& q, field f, std::uint32_t v);  // basis: paths from v
  static rep injective(const quiver& q, field f, std::uint32_t v);   // basis: paths into v
  static rep direct_sum(const rep& a, const rep& b);

  void validate() const;  // shape consistency; throws invalid_input
  std::uint64_t length() const;  // composition length = total dimension
  bool is_zero() const;
  bool same_space(const rep& o) const { return q == o.q && f == o.f && dims == o.dims; }
  bool operator==(const rep& o) const {
    return q == o.q && f == o.f && dims == o.dims && maps == o.maps;
  }
};

// a subrepresentation of a fixed ambient rep, stored as one canonical
// column-echelon basis per vertex (arrow-closedness is the caller's invariant)
struct subspaces {
  std::vector<mat> basis;

  std::uint64_t total_dim() const;
  std::vector<std::uint32_t> dims() const;
  // canonical byte key (dims + echelon entries) for hashing/dedup
  std::vector<std::uint8_t> key() const;
  bool contains(const subspaces& other) const;  // vertexwise column-space containment
  bool operator==(const subspaces& o) const { return basis == o.basis; }
};

subspaces zero_subspaces(const rep& m);
subspaces full_subspaces(const rep& m);
// smallest arrow-closed subspace tuple containing the given generators
// (gens: one matrix of generator columns per vertex; may have zero columns)
subspaces closure(const rep& m, const std::vector<mat>& gens);
subspaces subspace_sum(const rep& m, const subspaces& a, const subspaces& b);

rep sub_rep(const rep& m, const subspaces& s);
// quotient by an arrow-closed subspace tuple
rep quotient_rep(const rep& m, const subspaces& s);

// basis of Hom(A, B): each element is one matrix per vertex commuting with all arrows
std::vector<std::vector<mat>> hom_basis(const rep& A, const rep& B);
std::uint32_t hom_dim(const rep& A, const rep& B);
// first extension group dimension (hereditary: cokernel of the same constraint map)
std::uint32_t ext_dim(const rep& A, const rep& B);
// middle term of a nonsplit extension 0 -> B -> E -> A -> 0 picked canonically;
// nullopt when every extension splits
std::optional<rep> nonsplit_extension(const rep& A, const rep& B);

}  // namespace grq
