#include "grquiver/quiver.hpp"

#include <algorithm>
#include <functional>

#include "grquiver/errors.hpp"

namespace grq {

void quiver::validate() const {
  if (n == 0) throw invalid_input("quiver: need at least one vertex");
  for (auto [s, t] : arrows)
    if (s >= n || t >= n) throw invalid_input("quiver: arrow endpoint out of range");
}

bool quiver::is_acyclic() const {
  // Kahn peeling
  std::vector<std::uint32_t> indeg(n, 0);
  for (auto [s, t] : arrows) {
    (void)s;
    ++indeg[t];
  }
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::uint32_t seen = 0;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    ++seen;
    for (auto [s, t] : arrows)
      if (s == v && --indeg[t] == 0) stack.push_back(t);
  }
  return seen == n;
}

bool quiver::is_connected() const {
  if (n == 0) return false;
  std::vector<bool> vis(n, false);
  std::vector<std::uint32_t> stack{0};
  vis[0] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto [s, t] : arrows) {
      if (s == v && !vis[t]) {
        vis[t] = true;
        stack.push_back(t);
      }
      if (t == v && !vis[s]) {
        vis[s] = true;
        stack.push_back(s);
      }
    }
  }
  return std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
}

bool quiver::has_loops() const {
  return std::any_of(arrows.begin(), arrows.end(), [](auto a) { return a.first == a.second; });
}

std::vector<std::uint32_t> quiver::in_arrows(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].second == v) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> quiver::out_arrows(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].first == v) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> quiver::sinks() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < n; ++v)
    if (is_sink(v)) out.push_back(v);
  return out;
}

std::vector<std::uint32_t> quiver::sources() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < n; ++v)
    if (is_source(v)) out.push_back(v);
  return out;
}

quiver quiver::reversed_at(std::uint32_t v) const {
  quiver q = *this;
  for (auto& [s, t] : q.arrows)
    if (s == v || t == v) std::swap(s, t);
  return q;
}

quiver quiver::opposite() const {
  quiver q = *this;
  for (auto& [s, t] : q.arrows) std::swap(s, t);
  return q;
}

std::vector<quiver::path> quiver::all_paths() const {
  if (!is_acyclic()) throw invalid_input("quiver::all_paths: quiver must be acyclic");
  std::vector<path> out;
  // breadth-first by path length keeps the ordering deterministic and short-first
  std::vector<path> frontier;
  for (std::uint32_t v = 0; v < n; ++v) frontier.push_back({v, v, {}});
  while (!frontier.empty()) {
    std::vector<path> next;
    for (const auto& p : frontier) {
      out.push_back(p);
      for (std::uint32_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].first == p.to) {
          path q = p;
          q.to = arrows[i].second;
          q.arrows.push_back(i);
          next.push_back(std::move(q));
        }
    }
    frontier = std::move(next);
  }
  return out;
}

std::optional<preset_info> preset(std::string_view name) {
  auto mk = [](std::string nm, std::uint32_t n,
               std::vector<std::pair<std::uint32_t, std::uint32_t>> arrows, std::uint32_t L,
               std::string desc) {
    preset_info p;
    p.name = std::move(nm);
    p.q.n = n;
    p.q.arrows = std::move(arrows);
    p.default_length_bound = L;
    p.description = std::move(desc);
    return p;
  };
  if (name == "kronecker")
    return mk("kronecker", 2, {{0, 1}, {0, 1}}, 10, "two vertices, double arrow (affine A1)");
  if (name == "a21")
    return mk("a21", 3, {{0, 1}, {1, 2}, {0, 2}}, 11,
              "affine A2 triangle: a length-2 path plus a shortcut arrow");
  if (name == "a22_sink_source")
    return mk("a22_sink_source", 4, {{0, 1}, {2, 1}, {2, 3}, {0, 3}}, 10,
              "affine A3 square with alternating sink/source orientation");
  if (name == "d4_tilde")
    return mk("d4_tilde", 5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}}, 8,
              "affine D4 star: four leaves into a central vertex");
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"kronecker", "a21", "a22_sink_source", "d4_tilde"};
}

}  // namespace grq
