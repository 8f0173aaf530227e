// Acceptance gate: nine end-to-end checks, one PASS/FAIL line each.
// Exit status is 0 exactly when every criterion passes.

#include <fcntl.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "grquiver/cli.hpp"
#include "grquiver/errors.hpp"
#include "grquiver/grcore.hpp"
#include "grquiver/io.hpp"
#include "grquiver/measure.hpp"
#include "grquiver/quiver.hpp"
#include "grquiver/rep.hpp"
#include "grquiver/segments.hpp"
#include "grquiver/tame.hpp"
#include "oracle.hpp"

namespace {

namespace fs = std::filesystem;
using grq::catalog;
using grq::gr_measure;
using grq::segment_analysis;

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("%s %d: %s%s%s\n", pass ? "PASS" : "FAIL", idx, name, detail.empty() ? "" : " | ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void guarded(int idx, const char* name, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    auto [pass, detail] = f();
    report(idx, name, pass, detail);
  } catch (const std::exception& ex) {
    report(idx, name, false, std::string("exception: ") + ex.what());
  }
}

// stock catalogs and analyses at each preset's default length bound
const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> n{"kronecker", "a21", "a22_sink_source", "d4_tilde"};
  return n;
}

const catalog& cat_of(const std::string& name) {
  static std::map<std::string, catalog> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    const auto info = grq::preset(name);
    it = cache.emplace(name, grq::build_catalog(info->q, 2, info->default_length_bound)).first;
  }
  return it->second;
}

const segment_analysis& an_of(const std::string& name) {
  static std::map<std::string, segment_analysis> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, grq::analyze_segments(cat_of(name))).first;
  return it->second;
}

gr_measure random_measure(std::mt19937& rng) {
  const std::uint32_t bits = std::uniform_int_distribution<std::uint32_t>(0, 4095)(rng);
  std::vector<std::uint32_t> e;
  for (std::uint32_t i = 0; i < 12; ++i)
    if (bits & (1u << i)) e.push_back(i + 1);
  return gr_measure(e);
}

// silence the CLI's informational stdout lines while keeping our own report
class stdout_mute {
 public:
  stdout_mute() {
    std::fflush(stdout);
    saved_ = dup(1);
    const int devnull = open("/dev/null", O_WRONLY);
    dup2(devnull, 1);
    close(devnull);
  }
  ~stdout_mute() {
    std::fflush(stdout);
    dup2(saved_, 1);
    close(saved_);
  }

 private:
  int saved_;
};

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"grquiver"};
  argv.insert(argv.end(), args.begin(), args.end());
  stdout_mute mute;
  return grq::cli::run(static_cast<int>(argv.size()), argv.data());
}

// ---------------------------------------------------------------- criterion 1
std::pair<bool, std::string> c1_order_laws() {
  std::mt19937 rng(12345);
  std::uint64_t law_violations = 0;
  for (int t = 0; t < 100000; ++t) {
    const auto x = random_measure(rng), y = random_measure(rng), z = random_measure(rng);
    const int xy = grq::compare(x, y), yx = grq::compare(y, x);
    if (xy < -1 || xy > 1) ++law_violations;                    // totality: a defined verdict
    if (xy != -yx) ++law_violations;                            // antisymmetry
    if ((xy == 0) != (x == y)) ++law_violations;                // equality agrees with identity
    if (xy <= 0 && grq::compare(y, z) <= 0 && grq::compare(x, z) > 0) ++law_violations;
    if (grq::compare(y, z) <= 0 && grq::compare(z, x) <= 0 && grq::compare(y, x) > 0)
      ++law_violations;                                         // transitivity, two rotations
  }
  // extension law 1: whatever sits strictly between a measure and a proper
  // extension of it must itself start with the smaller measure
  std::uint64_t ext1 = 0, ext1_bad = 0;
  std::uniform_int_distribution<std::uint32_t> d12(1, 12);
  while (ext1 < 10000) {
    gr_measure i = random_measure(rng);
    const std::uint32_t lo = i.empty() ? 0 : i.top();
    if (lo >= 12) continue;
    gr_measure j = i;
    for (std::uint32_t m = lo + 1; m <= 12; ++m)
      if (rng() & 1) j = j.extend(m);
    if (j == i) continue;
    const gr_measure ip = random_measure(rng);
    if (!(i < ip && ip < j)) continue;
    ++ext1;
    if (!ip.starts_with(i)) ++ext1_bad;
  }
  // extension law 2: between a measure and its one-point extension, every
  // measure tops out strictly above the extension point
  std::uint64_t ext2 = 0, ext2_bad = 0;
  while (ext2 < 10000) {
    gr_measure i = random_measure(rng);
    const std::uint32_t lo = i.empty() ? 0 : i.top();
    if (lo >= 12) continue;
    const std::uint32_t m = std::uniform_int_distribution<std::uint32_t>(lo + 1, 12)(rng);
    const gr_measure j = i.extend(m);
    const gr_measure ip = random_measure(rng);
    if (!(i < ip && ip < j)) continue;
    ++ext2;
    if (!(ip.top() > j.top())) ++ext2_bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "100000 triples, %llu order violations; %llu/%llu and %llu/%llu extension-law "
                "violations",
                (unsigned long long)law_violations, (unsigned long long)ext1_bad,
                (unsigned long long)ext1, (unsigned long long)ext2_bad, (unsigned long long)ext2);
  return {law_violations == 0 && ext1_bad == 0 && ext2_bad == 0, buf};
}

// ---------------------------------------------------------------- criterion 2
std::pair<bool, std::string> c2_oracle() {
  std::uint64_t checked = 0, mismatches = 0;
  for (const char* name : {"kronecker", "a21"}) {
    for (const auto& e : cat_of(name).entries) {
      if (e.module.length() > 6) continue;
      ++checked;
      if (!(grq::gr_measure_of(e.module).mu == oracle::mu_chains(e.module))) ++mismatches;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%llu modules, %llu mismatches vs exhaustive chain maximum",
                (unsigned long long)checked, (unsigned long long)mismatches);
  return {checked > 0 && mismatches == 0, buf};
}

// ---------------------------------------------------------------- criterion 3
std::pair<bool, std::string> c3_kronecker() {
  const auto& cat = cat_of("kronecker");
  const auto& an = an_of("kronecker");
  std::string why;
  bool ok = true;
  auto need = [&](bool cond, const char* msg) {
    if (!cond) {
      ok = false;
      if (!why.empty()) why += "; ";
      why += msg;
    }
  };
  need(cat.entries.size() == 25, "census is not 25");

  auto fiber = [&](const char* s) -> const grq::measure_record* {
    const auto m = gr_measure::parse(s);
    for (const auto& rec : an.universe)
      if (rec.measure == *m) return &rec;
    return nullptr;
  };
  for (const char* s : {"{1}", "{1,3}", "{1,3,5}"}) {
    const auto* rec = fiber(s);
    need(rec != nullptr, "take-off measure missing");
    if (rec) {
      need(rec->partition == grq::partition_label::take_off, "take-off label missing");
      need(rec->has_preprojective, "take-off fiber lacks a preprojective");
    }
  }

  // homogeneous base and its one-step-up neighbour, straight from the tubes
  gr_measure mu_h1, mu_h2;
  for (const auto& e : cat.entries)
    if (e.tube && e.tube->rank == 1) {
      if (e.tube->quasi_length == 1) mu_h1 = e.measure;
      if (e.tube->quasi_length == 2) mu_h2 = e.measure;
    }
  need(mu_h1 == *gr_measure::parse("{1,2}"), "homogeneous base measure wrong");
  need(mu_h2 == *gr_measure::parse("{1,2,4}"), "homogeneous level-2 measure wrong");
  bool successor_ok = false;
  for (std::size_t i = 0; i + 1 < an.universe.size(); ++i)
    if (an.universe[i].measure == mu_h1)
      successor_ok = an.universe[i + 1].measure == mu_h2 &&
                     an.edges[i].certificate == grq::certificate_kind::theory_homogeneous;
  need(successor_ok, "homogeneous successor lacks the theory certificate");

  std::uint32_t central_n = 0, z_count = 0;
  for (const auto& s : an.segments) {
    bool central = false;
    for (const auto m : s.members)
      if (an.universe[m].partition == grq::partition_label::central) central = true;
    if (central && s.type == grq::index_type::n_indexed) ++central_n;
    if (s.type == grq::index_type::z_indexed) ++z_count;
  }
  need(central_n == 1, "central N-indexed segment count is not 1");
  need(z_count == 0, "unexpected Z-indexed segment");
  need(an.b == 0, "b is not 0");
  return {ok, ok ? "25 entries, take-off chain, certified homogeneous successor, one central "
                   "N segment, b=0"
                 : why};
}

// ---------------------------------------------------------------- criterion 4
std::pair<bool, std::string> c4_triangle() {
  const auto& cat = cat_of("a21");
  const auto& an = an_of("a21");
  std::string why;
  bool ok = true;
  auto need = [&](bool cond, const char* msg) {
    if (!cond) {
      ok = false;
      if (!why.empty()) why += "; ";
      why += msg;
    }
  };

  // X: the unique regular quasi-simple of length 2; X_i climbs its ray
  std::map<std::uint32_t, gr_measure> mu_x;  // quasi-length -> measure
  std::uint32_t x_seeds = 0;
  for (const auto& e : cat.entries) {
    if (!e.tube) continue;
    if (e.tube->quasi_length == 1 && e.module.length() == 2) ++x_seeds;
    const auto& socle = cat.entries[e.tube->quasi_socle];
    if (socle.module.length() == 2) mu_x[e.tube->quasi_length] = e.measure;
  }
  need(x_seeds == 1, "length-2 quasi-simple is not unique");

  // homogeneous base measure (all rank-1 bases agree)
  gr_measure mu_h1;
  bool h_seen = false, h_equal = true;
  for (const auto& e : cat.entries)
    if (e.tube && e.tube->rank == 1 && e.tube->quasi_length == 1) {
      if (h_seen) h_equal = h_equal && e.measure == mu_h1;
      mu_h1 = e.measure;
      h_seen = true;
    }
  need(h_seen && h_equal, "homogeneous bases disagree");

  // M^i: the unique indecomposable preinjective of length 3i+2
  auto preinj_of_length = [&](std::uint32_t len) {
    std::vector<gr_measure> found;
    for (const auto& e : cat.entries)
      if (e.pos == grq::position::preinjective && e.module.length() == len)
        found.push_back(e.measure);
    return found;
  };
  const auto m1 = preinj_of_length(5), m2 = preinj_of_length(8);
  need(m1.size() == 1 && m2.size() == 1, "preinjectives of lengths 5 and 8 not unique");

  if (ok) {
    need(mu_x.count(2) && mu_x.at(2) == mu_h1, "mu(X_2) != mu(H_1)");
    need(mu_x.count(3) && m1[0] == mu_x.at(3), "mu(M^1) != mu(X_3)");
    need(mu_x.count(4) && m2[0] < m1[0] && m1[0] < mu_x.at(4),
         "mu(M^2) < mu(M^1) < mu(X_4) fails");
  }

  bool z_through_junction = false, central_homogeneous_n = false;
  for (const auto& s : an.segments) {
    if (s.type == grq::index_type::z_indexed && ok)
      for (const auto m : s.members)
        if (an.universe[m].measure == m1[0]) z_through_junction = true;
    if (s.type == grq::index_type::n_indexed && s.anchor == "homogeneous") {
      bool central = false;
      for (const auto m : s.members)
        if (an.universe[m].partition == grq::partition_label::central) central = true;
      central_homogeneous_n = central_homogeneous_n || central;
    }
  }
  need(z_through_junction, "no Z segment through mu(M^1)=mu(X_3)");
  need(central_homogeneous_n, "no central N-indexed homogeneous segment");
  return {ok, ok ? "mu(X_2)=mu(H_1), mu(M^1)=mu(X_3), mu(M^2)<mu(M^1)<mu(X_4), Z through the "
                   "junction, central homogeneous N segment"
                 : why};
}

// ---------------------------------------------------------------- criterion 5
std::pair<bool, std::string> c5_b_table() {
  const std::map<std::string, std::uint32_t> expected{
      {"kronecker", 0}, {"a21", 2}, {"a22_sink_source", 4}, {"d4_tilde", 6}};
  std::string detail;
  bool ok = true;
  for (const auto& name : preset_names()) {
    std::uint32_t b = 0;
    for (const auto& e : cat_of(name).entries)
      if (e.tube && e.tube->rank >= 2 && e.tube->quasi_length == 1) ++b;
    ok = ok && b == expected.at(name);
    if (!detail.empty()) detail += ", ";
    detail += name + "=" + std::to_string(b);
  }
  return {ok, detail + " (expected 0, 2, 4, 6)"};
}

// ---------------------------------------------------------------- criterion 6
std::pair<bool, std::string> c6_regular_gr_subs() {
  std::uint64_t instances = 0, violations = 0;
  for (const auto& name : preset_names()) {
    const auto& cat = cat_of(name);
    for (const auto& e : cat.entries) {
      if (!e.tube) continue;
      // the ray predecessor: same tube, same quasi-socle, one level down
      const grq::rep* pred = nullptr;
      for (const auto& f : cat.entries)
        if (f.tube && f.tube->tube_id == e.tube->tube_id &&
            f.tube->quasi_socle == e.tube->quasi_socle &&
            f.tube->quasi_length + 1 == e.tube->quasi_length)
          pred = &f.module;
      for (const auto& t : grq::gr_submodules(e.module)) {
        ++instances;
        const bool preproj = grq::defect_of(cat.ed, t.dims) < 0;
        const bool is_pred = pred && grq::is_isomorphic(t, *pred);
        if (!preproj && !is_pred) ++violations;
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%llu GR submodules of regulars, %llu violations",
                (unsigned long long)instances, (unsigned long long)violations);
  return {instances > 0 && violations == 0, buf};
}

// ---------------------------------------------------------------- criterion 7
std::pair<bool, std::string> c7_suites() {
  std::uint64_t instances = 0, violations = 0;
  bool found_both = true;
  for (const auto& name : preset_names()) {
    const auto checks = grq::run_property_suites(cat_of(name), an_of(name));
    bool purity = false, sync = false;
    for (const auto& c : checks) {
      if (c.name == "no preinjective shares a deep stable ray measure") {
        purity = true;
        instances += c.instances;
        violations += c.violations;
      }
      if (c.name == "equal-measure rays stay synchronized") {
        sync = true;
        instances += c.instances;
        violations += c.violations;
      }
    }
    found_both = found_both && purity && sync;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%llu hypothesis instances, %llu violations",
                (unsigned long long)instances, (unsigned long long)violations);
  return {found_both && instances > 0 && violations == 0, buf};
}

// ---------------------------------------------------------------- criterion 8
std::pair<bool, std::string> c8_bounds() {
  std::string why;
  bool ok = true;
  for (const auto& name : preset_names()) {
    const auto rep = grq::verify_main_theorem(cat_of(name), an_of(name));
    if (!rep.all_pass) {
      ok = false;
      why += name + " bounds fail; ";
    }
  }
  // orientation equivalence on the cycle-shaped presets: sink-source
  // orientation exactly when no Z-indexed segment exists
  const std::map<std::string, std::pair<bool, bool>> want{
      {"kronecker", {true, false}}, {"a22_sink_source", {true, false}}, {"a21", {false, true}}};
  for (const auto& [name, pat] : want) {
    const auto ss = grq::check_sink_source_prop(cat_of(name), an_of(name));
    if (ss.sink_source_orientation != pat.first || ss.z_segment_present != pat.second ||
        !ss.consistent) {
      ok = false;
      why += name + " orientation pattern fails; ";
    }
  }
  return {ok, ok ? "bounds hold on all four presets; orientation <-> no-Z pattern matches"
                 : why};
}

// ---------------------------------------------------------------- criterion 9
std::pair<bool, std::string> c9_determinism() {
  const fs::path base = fs::temp_directory_path() / "grq_acceptance_det";
  fs::remove_all(base);
  const fs::path d1 = base / "t1", d2 = base / "t4", d3 = base / "t4b";
  fs::create_directories(d1);
  fs::create_directories(d2);
  fs::create_directories(d3);
  const std::string s1 = d1.string(), s2 = d2.string(), s3 = d3.string();
  setenv("GRQ_THREADS", "1", 1);
  const int r1 = run_cli({"segments", "--preset", "a21", "--out", s1.c_str()});
  setenv("GRQ_THREADS", "4", 1);
  const int r2 = run_cli({"segments", "--preset", "a21", "--out", s2.c_str()});
  const int r3 = run_cli({"segments", "--preset", "a21", "--out", s3.c_str()});
  unsetenv("GRQ_THREADS");
  if (r1 != 0 || r2 != 0 || r3 != 0) return {false, "segment run exited nonzero"};
  std::uint32_t same = 0, total = 0;
  for (const char* leaf : {"measures.csv", "segments.json", "theorem_report.json", "hasse.dot"}) {
    ++total;
    const auto a = grq::io::read_file((d1 / leaf).string());
    const auto b = grq::io::read_file((d2 / leaf).string());
    const auto c = grq::io::read_file((d3 / leaf).string());
    if (a == b && b == c) ++same;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%u/%u output files byte-identical across 1- and 4-thread runs",
                same, total);
  return {same == total, buf};
}

}  // namespace

int main() {
  guarded(1, "order laws and extension laws", c1_order_laws);
  guarded(2, "measure equals exhaustive chain maximum (length <= 6)", c2_oracle);
  guarded(3, "double-arrow preset: census, take-off chain, homogeneous successor", c3_kronecker);
  guarded(4, "triangle preset: junction equalities and the Z segment", c4_triangle);
  guarded(5, "exceptional quasi-simple counts across presets", c5_b_table);
  guarded(6, "GR submodules of regulars: preprojective or ray predecessor", c6_regular_gr_subs);
  guarded(7, "deep ray purity and equal-measure ray synchronization", c7_suites);
  guarded(8, "segment-count bounds and cycle orientation equivalence", c8_bounds);
  guarded(9, "byte-identical reruns, independent of thread count", c9_determinism);
  return failures == 0 ? 0 : 1;
}
