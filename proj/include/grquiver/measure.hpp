#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grq {

// A finite strictly increasing sequence of positive integers, totally ordered by the
// divergence rule: I < J iff the smallest element of the symmetric difference lies
// in J.  Consequences used everywhere: a proper prefix is smaller ({1} < {1,2}),
// and at the first divergence the set owning the *smaller* element is *larger*
// ({1,3} < {1,2}, {1,2,4} < {1,2,3}).
class gr_measure {
 public:
  gr_measure() = default;  // the empty measure (measure of the zero module)
  explicit gr_measure(std::vector<std::uint32_t> elems);

  // append one element; m must exceed top() (or the measure be empty)
  gr_measure extend(std::uint32_t m) const;

  const std::vector<std::uint32_t>& elems() const { return e_; }
  bool empty() const { return e_.empty(); }
  std::size_t size() const { return e_.size(); }
  std::uint32_t top() const;  // largest element; requires nonempty

  // true iff the first prefix.size() elements of *this equal prefix
  bool starts_with(const gr_measure& prefix) const;

  std::string str() const;  // "{1,2,4}", "{}" for empty
  static std::optional<gr_measure> parse(std::string_view s);

  bool operator==(const gr_measure& o) const { return e_ == o.e_; }
  bool operator!=(const gr_measure& o) const { return e_ != o.e_; }

 private:
  std::vector<std::uint32_t> e_;
};

// three-way comparison under the divergence order: -1, 0, +1
int compare(const gr_measure& a, const gr_measure& b);

inline bool operator<(const gr_measure& a, const gr_measure& b) { return compare(a, b) < 0; }
inline bool operator>(const gr_measure& a, const gr_measure& b) { return compare(a, b) > 0; }
inline bool operator<=(const gr_measure& a, const gr_measure& b) { return compare(a, b) <= 0; }
inline bool operator>=(const gr_measure& a, const gr_measure& b) { return compare(a, b) >= 0; }

// maximum of a list under the order above; empty list yields the empty measure
gr_measure max_of(const std::vector<gr_measure>& ms);

}  // namespace grq
