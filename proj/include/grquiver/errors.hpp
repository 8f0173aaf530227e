#pragma once

#include <stdexcept>
#include <string>

namespace grq {

// bad user-supplied data (malformed files, non-tame quivers, invalid dims): CLI exit 2
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// a configured enumeration budget was hit before an exact answer: CLI exit 3
struct budget_exhausted : std::runtime_error {
  explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// indecomposability/isomorphism could not be decided within budget: CLI exit 3
struct undecided_error : budget_exhausted {
  explicit undecided_error(const std::string& what) : budget_exhausted(what) {}
};

// enumeration caps for the exact decision procedures
struct budgets {
  // max number of vectors scanned per vertex when enumerating submodule generators (p^dim)
  unsigned long long subspace = 1ull << 20;
  // max number of endomorphisms enumerated for exact splitting / isomorphism search (p^dim)
  unsigned long long endo = 1ull << 20;
};

}  // namespace grq
