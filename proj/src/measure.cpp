#include "grquiver/measure.hpp"

#include <algorithm>
#include <charconv>

#include "grquiver/errors.hpp"

namespace grq {

gr_measure::gr_measure(std::vector<std::uint32_t> elems) : e_(std::move(elems)) {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) throw invalid_input("gr_measure: elements must be positive");
    if (i > 0 && e_[i] <= e_[i - 1])
      throw invalid_input("gr_measure: elements must be strictly increasing");
  }
}

gr_measure gr_measure::extend(std::uint32_t m) const {
  if (!e_.empty() && m <= e_.back())
    throw invalid_input("gr_measure::extend: new element must exceed the top");
  if (m == 0) throw invalid_input("gr_measure::extend: elements must be positive");
  gr_measure out;
  out.e_ = e_;
  out.e_.push_back(m);
  return out;
}

std::uint32_t gr_measure::top() const {
  if (e_.empty()) throw invalid_input("gr_measure::top: empty measure");
  return e_.back();
}

bool gr_measure::starts_with(const gr_measure& prefix) const {
  if (prefix.e_.size() > e_.size()) return false;
  return std::equal(prefix.e_.begin(), prefix.e_.end(), e_.begin());
}

std::string gr_measure::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e_[i]);
  }
  s += '}';
  return s;
}

std::optional<gr_measure> gr_measure::parse(std::string_view s) {
  auto skip_ws = [&](std::size_t i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return i;
  };
  std::size_t i = skip_ws(0);
  if (i >= s.size() || s[i] != '{') return std::nullopt;
  i = skip_ws(i + 1);
  std::vector<std::uint32_t> elems;
  if (i < s.size() && s[i] == '}') {
    i = skip_ws(i + 1);
    if (i != s.size()) return std::nullopt;
    return gr_measure{};
  }
  while (true) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
    if (ec != std::errc{} || p == s.data() + i) return std::nullopt;
    i = skip_ws(static_cast<std::size_t>(p - s.data()));
    elems.push_back(v);
    if (i >= s.size()) return std::nullopt;
    if (s[i] == ',') {
      i = skip_ws(i + 1);
      continue;
    }
    if (s[i] == '}') {
      i = skip_ws(i + 1);
      if (i != s.size()) return std::nullopt;
      break;
    }
    return std::nullopt;
  }
  for (std::size_t k = 0; k < elems.size(); ++k) {
    if (elems[k] == 0) return std::nullopt;
    if (k > 0 && elems[k] <= elems[k - 1]) return std::nullopt;
  }
  return gr_measure{std::move(elems)};
}

int compare(const gr_measure& a, const gr_measure& b) {
  const auto& x = a.elems();
  const auto& y = b.elems();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] != y[i]) {
      // the smallest element of the symmetric difference is min(x[i], y[i]);
      // whoever owns it is the larger measure
      return x[i] > y[i] ? -1 : 1;
    }
  }
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;  // proper prefix is smaller
}

gr_measure max_of(const std::vector<gr_measure>& ms) {
  gr_measure best;  // empty = minimum
  for (const auto& m : ms)
    if (compare(best, m) < 0) best = m;
  return best;
}

}  // namespace grq
