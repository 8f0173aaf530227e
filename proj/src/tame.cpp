#include "grquiver/tame.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "grquiver/grcore.hpp"
#include "grquiver/linalg.hpp"

namespace grq {

namespace {

// ---- exact rational / integer linear algebra (matrices here are tiny) ----

struct frac {
  long long n = 0, d = 1;
  frac() = default;
  frac(long long num, long long den) : n(num), d(den) { norm(); }
  static frac of(long long v) { return frac(v, 1); }
  void norm() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
  }
  bool zero() const { return n == 0; }
  frac operator+(const frac& o) const { return frac(n * o.d + o.n * d, d * o.d); }
  frac operator-(const frac& o) const { return frac(n * o.d - o.n * d, d * o.d); }
  frac operator*(const frac& o) const { return frac(n * o.n, d * o.d); }
  frac operator/(const frac& o) const { return frac(n * o.d, d * o.n); }
};

using fmat = std::vector<std::vector<frac>>;

fmat to_fmat(const imat& a) {
  fmat w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto v : a[i]) w[i].push_back(frac::of(v));
  return w;
}

// reduced row echelon over Q; returns (pivot row, pivot col) pairs
std::vector<std::pair<std::size_t, std::size_t>> frref(fmat& m) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c].zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    frac inv = frac::of(1) / m[r][c];
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].zero()) continue;
      frac factor = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    pivots.push_back({r, c});
    ++r;
  }
  return pivots;
}

// primitive integer basis of {x : B x = 0}
std::vector<ivec> integer_kernel(const imat& B) {
  fmat w = to_fmat(B);
  auto pivots = frref(w);
  std::size_t cols = B.empty() ? 0 : B[0].size();
  std::vector<bool> is_pivot(cols, false);
  for (auto& [r, c] : pivots) is_pivot[c] = true;
  std::vector<ivec> out;
  for (std::size_t j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<frac> x(cols, frac::of(0));
    x[j] = frac::of(1);
    for (auto& [r, c] : pivots) x[c] = frac::of(0) - w[r][j];
    long long mult = 1;
    for (auto& f : x) mult = mult / std::gcd(mult, f.d) * f.d;
    ivec v(cols);
    long long g = 0;
    for (std::size_t i = 0; i < cols; ++i) {
      v[i] = x[i].n * (mult / x[i].d);
      g = std::gcd(g, v[i] < 0 ? -v[i] : v[i]);
    }
    if (g > 1)
      for (auto& e : v) e /= g;
    for (auto e : v) {
      if (e == 0) continue;
      if (e < 0)
        for (auto& t : v) t = -t;
      break;
    }
    out.push_back(std::move(v));
  }
  return out;
}

imat int_inverse(const imat& a) {
  std::size_t n = a.size();
  fmat w = to_fmat(a);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i].push_back(frac::of(i == j ? 1 : 0));
  }
  auto pivots = frref(w);
  if (pivots.size() != n) throw invalid_input("integer matrix is singular");
  imat inv(n, ivec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      frac x = w[i][n + j];
      if (x.d != 1) throw invalid_input("matrix inverse is not integral");
      inv[i][j] = x.n;
    }
  return inv;
}

imat imul(const imat& a, const imat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  imat c(n, ivec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

imat itrans(const imat& a) {
  std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  imat t(m, ivec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

imat ineg(imat a) {
  for (auto& r : a)
    for (auto& x : r) x = -x;
  return a;
}

ivec apply(const imat& a, const ivec& v) {
  ivec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

ivec to_ivec(const std::vector<std::uint32_t>& d) {
  ivec v;
  for (auto x : d) v.push_back(static_cast<long long>(x));
  return v;
}

long long det_of(imat a) {  // fraction-free Bareiss
  std::size_t n = a.size();
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n ? sign * a[n - 1][n - 1] : 1;
}

imat symmetrized_euler(const imat& e) {
  imat b = e;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) b[i][j] += e[j][i];
  return b;
}

imat euler_matrix_of(const quiver& q) {
  imat e(q.n, ivec(q.n, 0));
  for (std::uint32_t v = 0; v < q.n; ++v) e[v][v] = 1;
  for (auto& [s, t] : q.arrows) e[s][t] -= 1;
  return e;
}

ivec delta_row(const euler_data& e) {  // delta^T . E, the defect functional
  ivec u(e.q.n, 0);
  for (std::uint32_t j = 0; j < e.q.n; ++j)
    for (std::uint32_t i = 0; i < e.q.n; ++i) u[j] += e.delta[i] * e.euler[i][j];
  return u;
}

// ---- reflection helpers ----

std::vector<std::uint32_t> echelon_pivot_rows(const mat& e) {
  std::vector<std::uint32_t> rows;
  for (std::uint32_t j = 0; j < e.cols; ++j) {
    std::uint32_t r = 0;
    while (r < e.rows && e.at(r, j) == 0) ++r;
    rows.push_back(r);
  }
  return rows;
}

// projection k^n -> k^c with kernel exactly span(im); im must be column-echelon
mat cokernel_projection(const mat& im, std::uint32_t n) {
  field f = im.f;
  auto piv = echelon_pivot_rows(im);
  std::vector<bool> is_piv(n, false);
  for (auto r : piv) is_piv[r] = true;
  std::uint32_t c = n - im.cols;
  mat section(f, n, c);
  std::uint32_t j = 0;
  for (std::uint32_t r = 0; r < n; ++r)
    if (!is_piv[r]) section.at(r, j++) = 1;
  mat frame = mat::hstack(im, section);
  auto inv = inverse(frame);
  if (!inv) throw invalid_input("cokernel frame not invertible");
  return inv->rows_slice(im.cols, n);
}

// one Coxeter-functor application (all reflections, admissible order); the
// caller guarantees m is indecomposable or zero
rep coxeter_apply(const rep& m, const std::vector<std::uint32_t>& order, bool plus) {
  rep cur = m;
  if (plus) {
    for (auto v : order) cur = reflect(cur, v);
  } else {
    for (auto it = order.rbegin(); it != order.rend(); ++it) cur = reflect(cur, *it);
  }
  return cur;
}

std::string dims_label(const std::vector<std::uint32_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

}  // namespace

bool is_tame(const quiver& q) {
  try {
    euler_data_of(q);
    return true;
  } catch (const invalid_input&) {
    return false;
  }
}

euler_data euler_data_of(const quiver& q) {
  q.validate();
  if (!q.is_connected()) throw invalid_input("quiver must be connected");
  if (!q.is_acyclic()) throw invalid_input("quiver has an oriented cycle; only acyclic orientations are supported");
  euler_data e;
  e.q = q;
  e.euler = euler_matrix_of(q);
  imat b = symmetrized_euler(e.euler);
  auto ker = integer_kernel(b);
  if (ker.empty()) {
    // nondegenerate symmetrized form: finite type when positive definite, wild otherwise
    bool pd = true;
    for (std::size_t k = 1; k <= b.size() && pd; ++k) {
      imat lead(k, ivec(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead[i][j] = b[i][j];
      if (det_of(lead) <= 0) pd = false;
    }
    throw invalid_input(pd ? "quiver has finite representation type (Dynkin), not tame"
                           : "quiver is wild, not tame");
  }
  if (ker.size() > 1) throw invalid_input("quiver is wild, not tame (radical dimension > 1)");
  e.delta = ker[0];
  for (auto x : e.delta)
    if (x <= 0) throw invalid_input("quiver is wild, not tame (radical vector not positive)");
  imat einv = int_inverse(e.euler);
  e.coxeter = ineg(imul(einv, itrans(e.euler)));
  e.coxeter_inv = ineg(imul(itrans(einv), e.euler));
  // fix the defect sign so projectives come out negative
  ivec u(q.n, 0);
  for (std::uint32_t j = 0; j < q.n; ++j)
    for (std::uint32_t i = 0; i < q.n; ++i) u[j] += e.delta[i] * e.euler[i][j];
  field f(2);
  int sign = 0;
  for (std::uint32_t v = 0; v < q.n; ++v) {
    long long dv = 0;
    auto pd = rep::projective(q, f, v).dims;
    for (std::uint32_t i = 0; i < q.n; ++i) dv += u[i] * pd[i];
    int s = dv > 0 ? 1 : dv < 0 ? -1 : 0;
    if (s == 0 || (sign != 0 && s != sign))
      throw invalid_input("defect convention check failed (projective with nonnegative defect)");
    sign = s;
  }
  e.defect_sign = (sign < 0) ? 1 : -1;
  return e;
}

long long defect_of(const euler_data& e, const std::vector<std::uint32_t>& dimv) {
  if (dimv.size() != e.q.n) throw invalid_input("defect: dimension vector has wrong size");
  ivec u = delta_row(e);
  long long d = 0;
  for (std::uint32_t i = 0; i < e.q.n; ++i) d += u[i] * static_cast<long long>(dimv[i]);
  return e.defect_sign * d;
}

const char* position_name(position p) {
  switch (p) {
    case position::preprojective: return "preprojective";
    case position::regular: return "regular";
    default: return "preinjective";
  }
}

position classify(const euler_data& e, const rep& m) {
  long long d = defect_of(e, m.dims);
  if (d < 0) return position::preprojective;
  if (d > 0) return position::preinjective;
  return position::regular;
}

rep reflect(const rep& m, std::uint32_t v) {
  if (v >= m.q.n) throw invalid_input("reflect: vertex out of range");
  const bool sink = m.q.is_sink(v), source = m.q.is_source(v);
  if (!sink && !source) throw invalid_input("reflect: vertex is neither a sink nor a source");
  field f = m.f;
  rep out = rep::zero(m.q.reversed_at(v), f, m.dims);
  for (std::size_t a = 0; a < m.maps.size(); ++a) out.maps[a] = m.maps[a];

  if (sink) {
    auto inc = m.q.in_arrows(v);
    mat g(f, m.dims[v], 0);
    for (auto a : inc) g = mat::hstack(g, m.maps[a]);
    mat K = column_echelon(kernel_basis(g));
    out.dims[v] = K.cols;
    std::uint32_t off = 0;
    for (auto a : inc) {
      std::uint32_t ds = m.dims[m.q.arrows[a].first];
      out.maps[a] = K.rows_slice(off, off + ds);  // arrow now runs v -> old source
      off += ds;
    }
  } else {
    auto outgoing = m.q.out_arrows(v);
    mat g(f, 0, m.dims[v]);
    for (auto a : outgoing) g = mat::vstack(g, m.maps[a]);
    mat im = column_echelon(g);
    mat proj = cokernel_projection(im, g.rows);
    out.dims[v] = proj.rows;
    std::uint32_t off = 0;
    for (auto a : outgoing) {
      std::uint32_t dt = m.dims[m.q.arrows[a].second];
      mat block(f, proj.rows, dt);
      for (std::uint32_t i = 0; i < proj.rows; ++i)
        for (std::uint32_t j = 0; j < dt; ++j) block.at(i, j) = proj.at(i, off + j);
      out.maps[a] = block;  // arrow now runs old target -> v
      off += dt;
    }
  }
  // refresh map shapes at v for arrows not incident to v (none change), done
  out.validate();
  return out;
}

std::vector<std::uint32_t> admissible_sink_order(const quiver& q) {
  std::vector<bool> removed(q.n, false);
  std::vector<std::uint32_t> order;
  for (std::uint32_t step = 0; step < q.n; ++step) {
    bool found = false;
    for (std::uint32_t v = 0; v < q.n && !found; ++v) {
      if (removed[v]) continue;
      bool sink = true;
      for (auto& [s, t] : q.arrows)
        if (s == v && !removed[t]) {
          sink = false;
          break;
        }
      if (sink) {
        order.push_back(v);
        removed[v] = true;
        found = true;
      }
    }
    if (!found) throw invalid_input("admissible order requires an acyclic quiver");
  }
  return order;
}

namespace {

// Composing reflections along an admissible order realizes the translate only
// up to an algebra automorphism that rescales arrows. When the underlying
// graph has a cycle whose two branches pick up different signs, that rescaling
// moves modules between homogeneous tubes (invisible over F_2, where -1 = 1).
// The Auslander-Reiten pairing detects a displaced candidate: the genuine
// translate y of an indecomposable x has Ext^1(y, x) != 0 for tau^- (dual to
// End(x)), and Ext^1(x, y) != 0 for tau, while a module from a different tube
// has no extensions against x at all. Displacement only happens to modules
// the translate fixes, so on detection the correct answer is x itself.
rep translate_indec(const rep& x, const std::vector<std::uint32_t>& order, bool plus) {
  rep y = coxeter_apply(x, order, plus);
  if (y.is_zero()) return y;
  if ((plus ? ext_dim(x, y) : ext_dim(y, x)) == 0) {
    if (ext_dim(x, x) == 0)
      throw invalid_input("translate: reflection composite produced an inconsistent candidate");
    return x;
  }
  return y;
}

}  // namespace

std::optional<rep> ar_translate(const rep& m, translate_dir dir, const budgets& bud) {
  if (m.is_zero()) throw invalid_input("ar_translate: zero module");
  if (!is_indecomposable(m, bud)) throw invalid_input("ar_translate: decomposable input");
  auto order = admissible_sink_order(m.q);
  rep r = translate_indec(m, order, dir == translate_dir::tau);
  if (r.is_zero()) return std::nullopt;
  return r;
}

bool is_quasi_simple(const euler_data& e, const rep& m, const budgets& bud) {
  if (m.is_zero() || !is_indecomposable(m, bud)) return false;
  if (defect_of(e, m.dims) != 0) return false;
  for (const auto& u : all_submodules(m, bud)) {
    if (u.total_dim() == 0 || u.total_dim() == m.length()) continue;
    bool regular = true;
    for (const auto& part : decompose(sub_rep(m, u), bud))
      if (defect_of(e, part.dims) != 0) {
        regular = false;
        break;
      }
    if (regular) return false;  // found a proper nonzero regular submodule
  }
  return true;
}

std::uint32_t rank_of(const euler_data& e, const rep& x, const budgets& bud) {
  if (!is_quasi_simple(e, x, bud)) throw invalid_input("rank: module is not a regular quasi-simple");
  auto order = admissible_sink_order(x.q);
  rep y = x;
  for (std::uint32_t r = 1; r <= 2 * x.q.n + 2; ++r) {
    y = translate_indec(y, order, false);
    if (y.is_zero()) throw invalid_input("rank: regular module vanished under translation");
    if (is_isomorphic(y, x, bud)) return r;
  }
  throw invalid_input("rank: tau orbit failed to close");
}

namespace {

// one ray step: the module with the same quasi-socle and quasi-length + 1,
// realized as the middle of the unique nonsplit extension by the next shift
rep ray_step(const rep& top, const rep& cur, const budgets& bud) {
  if (ext_dim(top, cur) != 1)
    throw invalid_input("x-chain: extension space is not one-dimensional");
  auto mid = nonsplit_extension(top, cur);
  if (!mid) throw invalid_input("x-chain: no nonsplit extension found");
  if (!is_indecomposable(*mid, bud)) throw invalid_input("x-chain: middle term decomposed");
  return *mid;
}

}  // namespace

rep build_x_chain(const euler_data& e, const rep& x, std::uint32_t i, const budgets& bud) {
  if (i == 0) throw invalid_input("x-chain: quasi-length must be at least 1");
  if (!is_quasi_simple(e, x, bud)) throw invalid_input("x-chain: input is not a regular quasi-simple");
  auto order = admissible_sink_order(x.q);
  rep cur = x, shift = x;
  for (std::uint32_t j = 2; j <= i; ++j) {
    shift = translate_indec(shift, order, false);  // tau^-(j-1) x
    cur = ray_step(shift, cur, bud);
  }
  return cur;
}

catalog build_catalog(const quiver& q, std::uint32_t p, std::uint32_t L, const budgets& bud) {
  catalog cat;
  cat.q = q;
  cat.p = p;
  cat.L = L;
  cat.ed = euler_data_of(q);
  cat.completeness_note = "homogeneous tubes are sampled at F_p-rational points only";
  field f(p);
  const auto order = admissible_sink_order(q);

  struct raw_entry {
    rep m;
    position pos;
    std::optional<tube_info> tube;
    std::string label;
  };
  std::vector<raw_entry> raws;
  auto note_truncation = [&](const char* phase) {
    cat.complete = false;
    cat.completeness_note += std::string("; budget exhausted during ") + phase;
  };

  // preprojective and preinjective slices, one tau orbit per vertex
  try {
    for (std::uint32_t v = 0; v < q.n; ++v) {
      rep cur = rep::projective(q, f, v);
      std::uint32_t misses = 0;
      for (std::uint32_t i = 0;; ++i) {
        if (cur.length() <= L) {
          std::string label = i == 0 ? "P(" + std::to_string(v) + ")"
                                     : "tau^-" + std::to_string(i) + " P(" + std::to_string(v) + ")";
          raws.push_back({cur, position::preprojective, std::nullopt, label});
          misses = 0;
        } else if (++misses >= 16) {
          break;
        }
        cur = coxeter_apply(cur, order, false);
        if (cur.is_zero()) break;
      }
    }
    for (std::uint32_t v = 0; v < q.n; ++v) {
      rep cur = rep::injective(q, f, v);
      std::uint32_t misses = 0;
      for (std::uint32_t i = 0;; ++i) {
        if (cur.length() <= L) {
          std::string label = i == 0 ? "I(" + std::to_string(v) + ")"
                                     : "tau^" + std::to_string(i) + " I(" + std::to_string(v) + ")";
          raws.push_back({cur, position::preinjective, std::nullopt, label});
          misses = 0;
        } else if (++misses >= 16) {
          break;
        }
        cur = coxeter_apply(cur, order, true);
        if (cur.is_zero()) break;
      }
    }
  } catch (const budget_exhausted&) {
    note_truncation("preprojective/preinjective expansion");
  }

  // ---- tube detection: collect quasi-simple seeds ----
  std::vector<rep> qs;
  auto add_quasi_simple = [&](const rep& r) {
    for (const auto& known : qs)
      if (is_isomorphic(known, r, bud)) return;
    qs.push_back(r);
  };
  // descend a regular indecomposable to its quasi-socle
  auto descend = [&](const rep& r0) {
    rep r = r0;
    for (;;) {
      if (is_quasi_simple(cat.ed, r, bud)) {
        add_quasi_simple(r);
        return;
      }
      bool moved = false;
      for (const auto& u : all_submodules(r, bud)) {  // sorted by total dimension
        if (u.total_dim() == 0 || u.total_dim() == r.length()) continue;
        rep s = sub_rep(r, u);
        auto parts = decompose(s, bud);
        bool regular = true;
        for (const auto& part : parts)
          if (defect_of(cat.ed, part.dims) != 0) regular = false;
        if (!regular) continue;
        r = parts.front();
        moved = true;
        break;
      }
      if (!moved) throw invalid_input("tube seed descent failed");
    }
  };

  try {
    // defect-zero simples
    for (std::uint32_t v = 0; v < q.n; ++v) {
      rep s = rep::simple(q, f, v);
      if (defect_of(cat.ed, s.dims) == 0) add_quasi_simple(s);
    }
    // defect-zero indecomposable subs/quotients of projectives and injectives
    for (std::uint32_t v = 0; v < q.n; ++v) {
      for (int kind = 0; kind < 2; ++kind) {
        rep big = kind == 0 ? rep::projective(q, f, v) : rep::injective(q, f, v);
        for (const auto& u : all_submodules(big, bud)) {
          if (u.total_dim() == 0) continue;
          if (u.total_dim() < big.length())
            for (const auto& part : decompose(sub_rep(big, u), bud))
              if (defect_of(cat.ed, part.dims) == 0) descend(part);
          if (u.total_dim() > 0 && u.total_dim() < big.length())
            for (const auto& part : decompose(quotient_rep(big, u), bud))
              if (defect_of(cat.ed, part.dims) == 0) descend(part);
        }
      }
    }
    // homogeneous quasi-simples: every indecomposable of dimension vector delta
    {
      std::vector<std::uint32_t> ddim;
      for (auto x : cat.ed.delta) ddim.push_back(static_cast<std::uint32_t>(x));
      unsigned long long cells = 0;
      for (auto& [s, t] : q.arrows)
        cells += static_cast<unsigned long long>(ddim[s]) * ddim[t];
      unsigned long long total = 1;
      for (unsigned long long i = 0; i < cells; ++i) {
        total *= p;
        if (total > bud.subspace) throw budget_exhausted("homogeneous point enumeration too large");
      }
      rep probe = rep::zero(q, f, ddim);
      std::vector<std::uint8_t*> slots;
      for (auto& mp : probe.maps)
        for (auto& x : mp.a) slots.push_back(&x);
      for (unsigned long long code = 0;; ++code) {
        if (is_indecomposable(probe, bud) && is_quasi_simple(cat.ed, probe, bud))
          add_quasi_simple(probe);
        std::size_t i = 0;
        while (i < slots.size()) {
          if (++*slots[i] < p) break;
          *slots[i] = 0;
          ++i;
        }
        if (i == slots.size()) break;
      }
    }
  } catch (const budget_exhausted&) {
    note_truncation("tube seed detection");
  }

  // canonical ordering of the seeds before orbit grouping
  auto rep_bytes = [](const rep& r) {
    std::vector<std::uint8_t> b;
    for (const auto& mp : r.maps) {
      b.insert(b.end(), mp.a.begin(), mp.a.end());
      b.push_back(0xFF);
    }
    return b;
  };
  std::sort(qs.begin(), qs.end(), [&](const rep& a, const rep& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.dims != b.dims) return a.dims < b.dims;
    return rep_bytes(a) < rep_bytes(b);
  });

  // ---- group seeds into tau orbits and grow the rays ----
  try {
    std::vector<bool> used(qs.size(), false);
    std::uint32_t tube_id = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      std::vector<rep> orbit{qs[i]};
      rep y = qs[i];
      for (std::uint32_t step = 0; step < 2 * q.n + 2; ++step) {
        y = translate_indec(y, order, false);  // tau^-
        if (y.is_zero()) throw invalid_input("catalog: regular module vanished under tau^-");
        if (is_isomorphic(y, qs[i], bud)) break;
        for (std::size_t j = i + 1; j < qs.size(); ++j)
          if (!used[j] && is_isomorphic(qs[j], y, bud)) used[j] = true;
        orbit.push_back(y);
      }
      auto rank = static_cast<std::uint32_t>(orbit.size());
      for (std::uint32_t s = 0; s < rank; ++s) {
        rep cur = orbit[s];
        std::uint32_t socle_raw = 0;
        for (std::uint32_t ql = 1; cur.length() <= L; ++ql) {
          if (ql == 1) socle_raw = static_cast<std::uint32_t>(raws.size());
          tube_info ti{tube_id, socle_raw, ql, rank};
          std::string label = "T" + std::to_string(tube_id) + ".S" + std::to_string(s) + "[" +
                              std::to_string(ql) + "] " + dims_label(cur.dims);
          raws.push_back({cur, position::regular, ti, label});
          const rep& top = orbit[(s + ql) % rank];
          cur = ray_step(top, cur, bud);
        }
      }
      ++tube_id;
    }
  } catch (const budget_exhausted&) {
    note_truncation("tube ray expansion");
  }

  // ---- safety dedup (distinct constructions should never collide) ----
  {
    std::vector<raw_entry> unique;
    for (auto& r : raws) {
      bool dup = false;
      for (const auto& u : unique)
        if (is_isomorphic(u.m, r.m, bud)) {
          dup = true;
          break;
        }
      if (!dup) unique.push_back(std::move(r));
    }
    // dedup must not orphan a quasi-socle reference; constructions are disjoint
    // by position/tube coordinates, so indices shift only if true duplicates
    // existed, which we treat as a construction bug
    if (unique.size() != raws.size())
      throw invalid_input("catalog: duplicate isomorphism classes constructed");
    raws = std::move(unique);
  }

  // ---- measures, optionally in parallel (GRQ_THREADS) ----
  std::vector<gr_measure> mus(raws.size());
  {
    unsigned threads = 1;
    if (const char* env = std::getenv("GRQ_THREADS")) {
      long t = std::strtol(env, nullptr, 10);
      if (t > 1) threads = static_cast<unsigned>(t > 64 ? 64 : t);
    }
    if (threads <= 1) {
      for (std::size_t i = 0; i < raws.size(); ++i) mus[i] = gr_measure_of(raws[i].m, bud).mu;
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr first_error;
      std::mutex err_mutex;
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
          for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= raws.size()) return;
            try {
              mus[i] = gr_measure_of(raws[i].m, bud).mu;
            } catch (...) {
              std::lock_guard<std::mutex> lock(err_mutex);
              if (!first_error) first_error = std::current_exception();
              return;
            }
          }
        });
      for (auto& th : pool) th.join();
      if (first_error) std::rethrow_exception(first_error);
    }
  }

  // ---- canonical sort and index remap ----
  std::vector<std::size_t> perm(raws.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (raws[a].m.length() != raws[b].m.length()) return raws[a].m.length() < raws[b].m.length();
    if (raws[a].m.dims != raws[b].m.dims) return raws[a].m.dims < raws[b].m.dims;
    return rep_bytes(raws[a].m) < rep_bytes(raws[b].m);
  });
  std::vector<std::uint32_t> new_index(raws.size());
  for (std::size_t pos = 0; pos < perm.size(); ++pos) new_index[perm[pos]] = static_cast<std::uint32_t>(pos);
  for (std::size_t pos = 0; pos < perm.size(); ++pos) {
    auto& r = raws[perm[pos]];
    catalog_entry ce;
    ce.module = std::move(r.m);
    ce.dimv = ce.module.dims;
    ce.pos = r.pos;
    ce.tube = r.tube;
    if (ce.tube) ce.tube->quasi_socle = new_index[ce.tube->quasi_socle];
    ce.measure = mus[perm[pos]];
    ce.label = std::move(r.label);
    cat.entries.push_back(std::move(ce));
  }
  return cat;
}

}  // namespace grq
