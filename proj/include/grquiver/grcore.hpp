#pragma once

#include <vector>

#include "grquiver/errors.hpp"
#include "grquiver/measure.hpp"
#include "grquiver/rep.hpp"

namespace grq {

// the full submodule lattice of m: every arrow-closed subspace tuple, deduplicated,
// sorted by (total dimension, canonical key); first entry is zero, last is m itself.
// built from cyclic submodules saturated under sums; throws budget_exhausted when a
// vertex needs more than bud.subspace vector scans or the lattice outgrows it
std::vector<subspaces> all_submodules(const rep& m, const budgets& bud = {});

// exact decision via locality of the endomorphism ring.  dim End == 1 and Fitting
// splitters are fast paths; the fallback enumerates all p^dimEnd endomorphisms and
// throws undecided_error when that exceeds bud.endo
bool is_indecomposable(const rep& m, const budgets& bud = {});

// exact: searches Hom(a, b) for a vertexwise invertible element
bool is_isomorphic(const rep& a, const rep& b, const budgets& bud = {});

// indecomposable summands whose direct sum is isomorphic to m, found by splitting
// along Fitting decompositions; sorted by (length, dims, map bytes)
std::vector<rep> decompose(const rep& m, const budgets& bud = {});

struct measure_result {
  gr_measure mu;
  // ascending chain of indecomposable submodules whose lengths realize mu; every
  // step is measure-maximal, so this is also a Gabriel-Roiter filtration ending at
  // m itself when m is indecomposable
  std::vector<subspaces> chain;
  // proper indecomposable submodules of maximal measure, one per isomorphism class
  std::vector<rep> gr_subs;
};

// Gabriel-Roiter measure: maximum over chains of indecomposable submodules of the
// set of their lengths, with witnesses
measure_result gr_measure_of(const rep& m, const budgets& bud = {});

// the gr_subs part alone: for indecomposable m these are the Gabriel-Roiter
// submodules (mu(m) = extend(mu(T), length(m)) for each representative T)
std::vector<rep> gr_submodules(const rep& m, const budgets& bud = {});

// the witness chain materialized as modules; for indecomposable m a chain of
// Gabriel-Roiter inclusions from a simple up to m
std::vector<rep> gr_filtration(const rep& m, const budgets& bud = {});

}  // namespace grq
