#include "grquiver/segments.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace grq {

namespace {

struct measure_less {
  bool operator()(const gr_measure& a, const gr_measure& b) const { return compare(a, b) < 0; }
};

// ray = (tube id, quasi-socle entry id); a ray's map sends quasi-length to the
// catalog entry index realizing that level
using ray_key = std::pair<std::uint32_t, std::uint32_t>;

struct theory_ctx {
  std::map<ray_key, std::map<std::uint32_t, std::uint32_t>> rays;
  std::map<std::uint32_t, std::uint32_t> tube_rank;
  std::optional<gr_measure> mu_h1;  // measure of the homogeneous quasi-simples
  // rank >= 2 rays whose level-rank member exists and has measure >= mu(H_1)
  std::set<ray_key> qualifying;
  // quasi-lengths realized by some homogeneous (rank-1) entry
  std::set<std::uint32_t> homogeneous_levels;
};

theory_ctx build_theory(const catalog& cat, std::vector<std::string>* notes) {
  theory_ctx t;
  for (std::uint32_t i = 0; i < cat.entries.size(); ++i) {
    const auto& e = cat.entries[i];
    if (!e.tube) continue;
    t.rays[{e.tube->tube_id, e.tube->quasi_socle}][e.tube->quasi_length] = i;
    t.tube_rank[e.tube->tube_id] = e.tube->rank;
    if (e.tube->rank == 1) {
      t.homogeneous_levels.insert(e.tube->quasi_length);
      if (e.tube->quasi_length == 1 && !t.mu_h1) t.mu_h1 = e.measure;
    }
  }
  for (const auto& [key, levels] : t.rays) {
    const std::uint32_t r = t.tube_rank.at(key.first);
    if (r < 2) continue;
    const auto it = levels.find(r);
    if (it == levels.end()) {
      if (notes)
        notes->push_back("ray of quasi-simple entry #" + std::to_string(key.second) +
                         ": level-" + std::to_string(r) +
                         " member exceeds the length bound; the ray cannot qualify");
      continue;
    }
    if (t.mu_h1 && cat.entries[it->second].measure >= *t.mu_h1) t.qualifying.insert(key);
  }
  return t;
}

// does the fiber promise a next measure by theory: a homogeneous layer always
// steps to the next layer; a qualifying ray steps once its depth reaches twice
// the tube rank
bool fiber_has_prediction(const catalog& cat, const theory_ctx& t, const measure_record& rec) {
  for (const std::uint32_t id : rec.modules) {
    const auto& e = cat.entries[id];
    if (!e.tube) continue;
    if (e.tube->rank == 1) return true;
    const ray_key key{e.tube->tube_id, e.tube->quasi_socle};
    if (e.tube->quasi_length >= 2u * e.tube->rank && t.qualifying.count(key)) return true;
  }
  return false;
}

// is the promised next measure missing from the catalog (truncation horizon)?
bool fiber_prediction_unrealized(const catalog& cat, const theory_ctx& t,
                                 const measure_record& rec) {
  for (const std::uint32_t id : rec.modules) {
    const auto& e = cat.entries[id];
    if (!e.tube) continue;
    if (e.tube->rank == 1) {
      if (!t.homogeneous_levels.count(e.tube->quasi_length + 1)) return true;
      continue;
    }
    const ray_key key{e.tube->tube_id, e.tube->quasi_socle};
    if (e.tube->quasi_length >= 2u * e.tube->rank && t.qualifying.count(key)) {
      const auto& levels = t.rays.at(key);
      if (!levels.count(e.tube->quasi_length + 1)) return true;
    }
  }
  return false;
}

certificate_kind classify_edge(const catalog& cat, const theory_ctx& t, const measure_record& a,
                               const measure_record& b) {
  // homogeneous layer step
  for (const std::uint32_t ida : a.modules) {
    const auto& ea = cat.entries[ida];
    if (!ea.tube || ea.tube->rank != 1) continue;
    for (const std::uint32_t idb : b.modules) {
      const auto& eb = cat.entries[idb];
      if (eb.tube && eb.tube->rank == 1 && eb.tube->quasi_length == ea.tube->quasi_length + 1)
        return certificate_kind::theory_homogeneous;
    }
  }
  // stable exceptional ray step
  for (const std::uint32_t ida : a.modules) {
    const auto& ea = cat.entries[ida];
    if (!ea.tube || ea.tube->rank < 2) continue;
    const ray_key key{ea.tube->tube_id, ea.tube->quasi_socle};
    if (ea.tube->quasi_length < 2u * ea.tube->rank || !t.qualifying.count(key)) continue;
    const auto& levels = t.rays.at(key);
    const auto it = levels.find(ea.tube->quasi_length + 1);
    if (it == levels.end()) continue;
    for (const std::uint32_t idb : b.modules)
      if (idb == it->second) return certificate_kind::theory_stable;
  }
  return certificate_kind::catalog_relative;
}

std::vector<gr_measure> measures_of(const std::vector<measure_record>& u) {
  std::vector<gr_measure> out;
  out.reserve(u.size());
  for (const auto& r : u) out.push_back(r.measure);
  return out;
}

}  // namespace

const char* partition_name(partition_label l) {
  switch (l) {
    case partition_label::take_off: return "take-off";
    case partition_label::central: return "central";
    case partition_label::landing: return "landing";
    case partition_label::unstable: return "unstable";
  }
  return "?";
}

const char* certificate_name(certificate_kind c) {
  switch (c) {
    case certificate_kind::catalog_relative: return "catalog-relative";
    case certificate_kind::theory_homogeneous: return "theory-homogeneous";
    case certificate_kind::theory_stable: return "theory-stable";
  }
  return "?";
}

const char* index_type_name(index_type t) {
  switch (t) {
    case index_type::n_indexed: return "N";
    case index_type::neg_n_indexed: return "-N";
    case index_type::z_indexed: return "Z";
    case index_type::unknown: return "unknown";
  }
  return "?";
}

std::vector<measure_record> measure_universe(const catalog& cat) {
  std::map<gr_measure, measure_record, measure_less> grouped;
  for (std::uint32_t i = 0; i < cat.entries.size(); ++i) {
    const auto& e = cat.entries[i];
    auto& rec = grouped[e.measure];
    rec.measure = e.measure;
    rec.modules.push_back(i);
    switch (e.pos) {
      case position::preprojective: rec.has_preprojective = true; break;
      case position::regular: rec.has_regular = true; break;
      case position::preinjective: rec.has_preinjective = true; break;
    }
  }
  std::vector<measure_record> out;
  out.reserve(grouped.size());
  for (auto& [m, rec] : grouped) out.push_back(std::move(rec));
  return out;
}

std::optional<successor_edge> successor_in(const catalog& cat, const gr_measure& from) {
  const auto universe = measure_universe(cat);
  std::size_t at = universe.size();
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (universe[i].measure == from) {
      at = i;
      break;
    }
  if (at == universe.size())
    throw invalid_input("successor_in: " + from.str() + " is not a measure of this catalog");
  if (at + 1 == universe.size()) return std::nullopt;
  const theory_ctx t = build_theory(cat, nullptr);
  successor_edge e;
  e.from = from;
  e.to = universe[at + 1].measure;
  e.certificate = classify_edge(cat, t, universe[at], universe[at + 1]);
  return e;
}

std::vector<measure_record> partition_universe(const catalog& cat, const segment_options& opt,
                                               const budgets& bud) {
  if (opt.delta == 0) throw invalid_input("window gap delta must be at least 1");
  auto full = measure_universe(cat);
  const std::uint32_t small_l = cat.L > opt.delta ? cat.L - opt.delta : 0;
  const catalog small = build_catalog(cat.q, cat.p, small_l, bud);
  const auto small_measures = measures_of(measure_universe(small));

  const std::size_t n = full.size(), ns = small_measures.size();
  std::size_t pre = 0;
  while (pre < n && pre < ns && full[pre].measure == small_measures[pre]) ++pre;
  std::size_t suf = 0;
  while (suf < n - pre && suf < ns - pre &&
         full[n - 1 - suf].measure == small_measures[ns - 1 - suf])
    ++suf;

  std::set<gr_measure, measure_less> in_small(small_measures.begin(), small_measures.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < pre)
      full[i].partition = partition_label::take_off;
    else if (i >= n - suf)
      full[i].partition = partition_label::landing;
    else
      full[i].partition = in_small.count(full[i].measure) ? partition_label::central
                                                          : partition_label::unstable;
  }
  // fibers holding only preprojectives belong to the take-off part regardless
  // of what the window test could certify
  for (auto& rec : full)
    if (rec.has_preprojective && !rec.has_regular && !rec.has_preinjective)
      rec.partition = partition_label::take_off;
  return full;
}

segment_analysis analyze_segments(const catalog& cat, const segment_options& opt,
                                  const budgets& bud) {
  segment_analysis an;
  an.options = opt;
  an.universe = partition_universe(cat, opt, bud);
  const theory_ctx t = build_theory(cat, &an.notes);
  an.b = compute_b(cat);
  an.a = compute_a(cat);
  if (!an.a)
    an.notes.push_back(
        "a unavailable: no homogeneous quasi-simple within the length bound, so mu(H_1) "
        "cannot anchor the comparison");
  if (!cat.complete) an.notes.push_back("catalog truncated: " + cat.completeness_note);

  const std::size_t n = an.universe.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    successor_edge e;
    e.from = an.universe[i].measure;
    e.to = an.universe[i + 1].measure;
    e.certificate = classify_edge(cat, t, an.universe[i], an.universe[i + 1]);
    an.edges.push_back(std::move(e));
  }

  bool any_take_off = false, any_landing = false;
  for (const auto& rec : an.universe) {
    any_take_off |= rec.partition == partition_label::take_off;
    any_landing |= rec.partition == partition_label::landing;
  }
  if (n > 0 && !any_take_off && !any_landing)
    an.notes.push_back("no take-off or landing label stabilized between the two windows");

  // cut the ascending universe into maximal successor runs:
  //  (i)   after each maximal run of take-off measures
  //  (ii)  after a fiber whose theory-promised next measure is missing
  //  (iii) before the first homogeneous layer on cycle-shaped quivers (that
  //        measure has no direct predecessor there)
  std::vector<bool> cut_after(n == 0 ? 0 : n - 1, false);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool t0 = an.universe[i].partition == partition_label::take_off;
    const bool t1 = an.universe[i + 1].partition == partition_label::take_off;
    if (t0 && !t1) cut_after[i] = true;
    if (fiber_prediction_unrealized(cat, t, an.universe[i])) cut_after[i] = true;
    if (t.mu_h1 && is_cycle_shaped(cat.q) && an.universe[i + 1].measure == *t.mu_h1)
      cut_after[i] = true;
  }

  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && !cut_after[i]) continue;
    segment seg;
    for (std::size_t m = start; m <= i; ++m) seg.members.push_back(static_cast<std::uint32_t>(m));
    start = i + 1;

    bool has_t = false, has_l = false, has_c = false;
    for (const std::uint32_t m : seg.members) {
      has_t |= an.universe[m].partition == partition_label::take_off;
      has_l |= an.universe[m].partition == partition_label::landing;
      has_c |= an.universe[m].partition == partition_label::central;
    }
    if (has_t) {
      seg.type = index_type::n_indexed;
      seg.anchor = "take-off";
    } else if (has_l) {
      seg.type = index_type::neg_n_indexed;
      seg.anchor = "landing";
    } else {
      const measure_record& top = an.universe[seg.members.back()];
      bool z = false;
      if (t.mu_h1 && has_c && fiber_has_prediction(cat, t, top)) {
        std::uint32_t run = 0;
        for (const std::uint32_t m : seg.members) {
          if (!an.universe[m].has_preinjective) break;
          ++run;
        }
        bool above = true;
        for (const std::uint32_t m : seg.members)
          above = above && an.universe[m].measure > *t.mu_h1;
        z = run >= opt.z_min_preinj_run && above;
      }
      bool homogeneous_bearing = false;
      for (const std::uint32_t m : seg.members)
        for (const std::uint32_t id : an.universe[m].modules)
          if (cat.entries[id].tube && cat.entries[id].tube->rank == 1) homogeneous_bearing = true;
      if (z) {
        std::uint32_t tube = 0;
        for (const std::uint32_t id : top.modules)
          if (cat.entries[id].tube) {
            tube = cat.entries[id].tube->tube_id;
            break;
          }
        seg.type = index_type::z_indexed;
        seg.anchor = "tube " + std::to_string(tube);
      } else if (homogeneous_bearing) {
        seg.type = index_type::n_indexed;
        seg.anchor = "homogeneous";
      } else {
        seg.type = index_type::unknown;
        seg.anchor = "unlabeled";
        for (auto it = seg.members.rbegin(); it != seg.members.rend() && seg.anchor == "unlabeled";
             ++it)
          for (const std::uint32_t id : an.universe[*it].modules)
            if (cat.entries[id].tube) {
              seg.anchor = "tube " + std::to_string(cat.entries[id].tube->tube_id);
              break;
            }
      }
    }
    an.segments.push_back(std::move(seg));
  }
  return an;
}

std::vector<segment> assemble_segments(const catalog& cat, const segment_options& opt,
                                       const budgets& bud) {
  return analyze_segments(cat, opt, bud).segments;
}

std::uint32_t compute_b(const catalog& cat) {
  std::uint32_t b = 0;
  for (const auto& e : cat.entries)
    if (e.tube && e.tube->rank >= 2 && e.tube->quasi_length == 1) ++b;
  return b;
}

std::optional<std::uint32_t> compute_a(const catalog& cat) {
  const theory_ctx t = build_theory(cat, nullptr);
  if (!t.mu_h1) return std::nullopt;
  std::uint32_t a = 0;
  for (const auto& key : t.qualifying) {
    (void)key;
    ++a;
  }
  return a;
}

theorem_report verify_main_theorem(const catalog& cat, const segment_analysis& an) {
  theorem_report rep;
  std::uint32_t z = 0, central_nz = 0;
  for (const auto& seg : an.segments) {
    if (seg.type == index_type::z_indexed) ++z;
    if (seg.type == index_type::z_indexed || seg.type == index_type::n_indexed) {
      bool has_c = false;
      for (const std::uint32_t m : seg.members)
        has_c |= an.universe[m].partition == partition_label::central;
      if (has_c) ++central_nz;
    }
  }

  rep.z_count.name = "Z-typed segments vs a";
  rep.z_count.count = z;
  rep.z_count.bound = an.a;
  if (an.a) {
    rep.z_count.pass = z <= *an.a;
    rep.z_count.detail = std::to_string(z) + " <= " + std::to_string(*an.a);
  } else {
    rep.z_count.pass = z == 0;
    rep.z_count.detail = std::to_string(z) + " == 0 (a unavailable)";
    rep.notes.push_back(
        "a is unavailable; the Z-bound is checked as: no Z-typed segment may exist");
  }

  rep.central_count.name = "central N/Z segments vs b+1";
  rep.central_count.count = central_nz;
  rep.central_count.bound = an.b + 1;
  rep.central_count.pass = central_nz <= an.b + 1;
  rep.central_count.detail = std::to_string(central_nz) + " <= " + std::to_string(an.b + 1);

  rep.total_count.name = "all segments vs b+3";
  rep.total_count.count = static_cast<std::uint32_t>(an.segments.size());
  rep.total_count.bound = an.b + 3;
  rep.total_count.pass = an.segments.size() <= an.b + 3;
  rep.total_count.detail =
      std::to_string(an.segments.size()) + " <= " + std::to_string(an.b + 3);

  rep.all_pass = rep.z_count.pass && rep.central_count.pass && rep.total_count.pass;
  bool unstable = false;
  for (const auto& rec : an.universe) unstable |= rec.partition == partition_label::unstable;
  rep.catalog_caveat = unstable || !cat.complete;
  if (unstable)
    rep.notes.push_back("some fibers are window-unstable: counts are catalog-relative");
  if (!cat.complete) rep.notes.push_back("catalog truncated: " + cat.completeness_note);
  return rep;
}

theorem_report verify_main_theorem(const catalog& cat, const segment_options& opt,
                                   const budgets& bud) {
  return verify_main_theorem(cat, analyze_segments(cat, opt, bud));
}

bool is_cycle_shaped(const quiver& q) {
  if (q.n == 0 || q.arrows.size() != q.n) return false;
  std::vector<std::uint32_t> deg(q.n, 0);
  for (const auto& [s, tgt] : q.arrows) {
    deg[s]++;
    deg[tgt]++;
  }
  for (const auto d : deg)
    if (d != 2) return false;
  // connectivity of the underlying graph
  std::vector<char> seen(q.n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (const auto& [s, tgt] : q.arrows) {
      if (s == v && !seen[tgt]) {
        seen[tgt] = 1;
        stack.push_back(tgt);
      }
      if (tgt == v && !seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
  }
  for (const auto c : seen)
    if (!c) return false;
  return true;
}

bool has_sink_source_orientation(const quiver& q) {
  for (std::uint32_t v = 0; v < q.n; ++v)
    if (!q.in_arrows(v).empty() && !q.out_arrows(v).empty()) return false;
  return true;
}

sink_source_report check_sink_source_prop(const catalog& cat, const segment_analysis& an) {
  if (!is_cycle_shaped(cat.q))
    throw invalid_input("sink-source check requires a cycle-shaped quiver");
  sink_source_report rep;
  rep.sink_source_orientation = has_sink_source_orientation(cat.q);
  for (const auto& rec : an.universe)
    if (rec.partition == partition_label::central && rec.has_preinjective)
      rep.preinjective_central = true;
  for (const auto& seg : an.segments)
    if (seg.type == index_type::z_indexed) rep.z_segment_present = true;
  rep.consistent = (!rep.sink_source_orientation) == rep.preinjective_central &&
                   rep.preinjective_central == rep.z_segment_present;
  return rep;
}

sink_source_report check_sink_source_prop(const catalog& cat, const segment_options& opt,
                                          const budgets& bud) {
  return check_sink_source_prop(cat, analyze_segments(cat, opt, bud));
}

std::vector<property_check> run_property_suites(const catalog& cat, const segment_analysis& an) {
  const theory_ctx t = build_theory(cat, nullptr);
  const auto& uni = an.universe;
  std::map<gr_measure, std::size_t, measure_less> index_of;
  for (std::size_t i = 0; i < uni.size(); ++i) index_of[uni[i].measure] = i;

  property_check prefix_law{"measure-prefix within segments", 0, 0, {}};
  for (const auto& seg : an.segments) {
    const gr_measure& first = uni[seg.members.front()].measure;
    bool hyp = true;
    for (const std::uint32_t m : seg.members) hyp = hyp && first.size() <= uni[m].measure.size();
    if (!hyp) continue;
    ++prefix_law.instances;
    for (const std::uint32_t m : seg.members)
      if (!uni[m].measure.starts_with(first)) {
        ++prefix_law.violations;
        prefix_law.details.push_back(uni[m].measure.str() + " does not start with " + first.str());
      }
  }

  // the law quantifies over successor chains that stay above the take-off
  // part, so fibers holding a preprojective are outside its hypothesis: they
  // disqualify their own regulars and stop the downward scan
  property_check ray_pred{"nearest lower regular is the ray predecessor", 0, 0, {}};
  for (const auto& seg : an.segments) {
    for (std::size_t k = 0; k < seg.members.size(); ++k) {
      const auto& rec = uni[seg.members[k]];
      if (rec.has_preprojective) continue;
      for (const std::uint32_t id : rec.modules) {
        const auto& e = cat.entries[id];
        if (!e.tube) continue;
        std::ptrdiff_t j = static_cast<std::ptrdiff_t>(k) - 1;
        bool found = false;
        while (j >= 0) {
          const auto& below = uni[seg.members[static_cast<std::size_t>(j)]];
          if (below.has_preprojective) break;
          if (below.has_regular) {
            found = true;
            break;
          }
          --j;
        }
        if (e.tube->quasi_length == 1) {
          // a quasi-simple's measure admits no lower regular-bearing measure
          // in such a chain
          ++ray_pred.instances;
          if (found) {
            ++ray_pred.violations;
            ray_pred.details.push_back(
                "regular-bearing measure below the quasi-simple measure " + rec.measure.str());
          }
          continue;
        }
        if (!found) continue;
        const auto& levels = t.rays.at({e.tube->tube_id, e.tube->quasi_socle});
        const auto pit = levels.find(e.tube->quasi_length - 1);
        if (pit == levels.end()) continue;
        ++ray_pred.instances;
        const gr_measure& got = uni[seg.members[static_cast<std::size_t>(j)]].measure;
        const gr_measure& want = cat.entries[pit->second].measure;
        if (!(got == want)) {
          ++ray_pred.violations;
          ray_pred.details.push_back("below " + rec.measure.str() + ": nearest regular measure " +
                                     got.str() + ", ray predecessor has " + want.str());
        }
      }
    }
  }

  property_check sync{"equal-measure rays stay synchronized", 0, 0, {}};
  for (const auto& key : t.qualifying) {
    const std::uint32_t rank = t.tube_rank.at(key.first);
    for (const auto& [lvl, idx] : t.rays.at(key)) {
      if (lvl < 2u * rank) continue;
      const auto uit = index_of.find(cat.entries[idx].measure);
      if (uit == index_of.end()) continue;
      for (const std::uint32_t other : uni[uit->second].modules) {
        const auto& eo = cat.entries[other];
        if (!eo.tube) continue;
        const ray_key okey{eo.tube->tube_id, eo.tube->quasi_socle};
        if (okey == key) continue;
        ++sync.instances;
        if (eo.tube->rank != rank || eo.tube->quasi_length != lvl) {
          ++sync.violations;
          sync.details.push_back("rank/level mismatch at " + cat.entries[idx].measure.str());
          continue;
        }
        const auto& olevels = t.rays.at(okey);
        for (const auto& [tl, tidx] : t.rays.at(key)) {
          if (tl < rank) continue;
          const auto oit = olevels.find(tl);
          if (oit == olevels.end()) continue;
          if (!(cat.entries[tidx].measure == cat.entries[oit->second].measure)) {
            ++sync.violations;
            sync.details.push_back("level " + std::to_string(tl) + " measures differ: " +
                                   cat.entries[tidx].measure.str() + " vs " +
                                   cat.entries[oit->second].measure.str());
          }
        }
      }
    }
  }

  property_check purity{"no preinjective shares a deep stable ray measure", 0, 0, {}};
  for (const auto& key : t.qualifying) {
    const std::uint32_t rank = t.tube_rank.at(key.first);
    for (const auto& [lvl, idx] : t.rays.at(key)) {
      if (lvl < 2u * rank) continue;
      const auto uit = index_of.find(cat.entries[idx].measure);
      if (uit == index_of.end()) continue;
      ++purity.instances;
      if (uni[uit->second].has_preinjective) {
        ++purity.violations;
        purity.details.push_back("preinjective in the fiber of " +
                                 cat.entries[idx].measure.str());
      }
    }
  }

  property_check z_shape{"z segments: preinjective bottom, all above mu(H_1)", 0, 0, {}};
  for (const auto& seg : an.segments) {
    if (seg.type != index_type::z_indexed) continue;
    ++z_shape.instances;
    std::vector<bool> pi_only;
    for (const std::uint32_t m : seg.members)
      pi_only.push_back(uni[m].has_preinjective && !uni[m].has_regular &&
                        !uni[m].has_preprojective);
    std::size_t lead = 0;
    while (lead < pi_only.size() && pi_only[lead]) ++lead;
    if (lead == 0) {
      ++z_shape.violations;
      z_shape.details.push_back("bottom fiber " + uni[seg.members.front()].measure.str() +
                                " is not preinjective-only");
    }
    for (std::size_t k = lead; k < pi_only.size(); ++k)
      if (pi_only[k]) {
        ++z_shape.violations;
        z_shape.details.push_back("preinjective-only fiber above the bottom run: " +
                                  uni[seg.members[k]].measure.str());
      }
    if (t.mu_h1) {
      for (const std::uint32_t m : seg.members)
        if (!(uni[m].measure > *t.mu_h1)) {
          ++z_shape.violations;
          z_shape.details.push_back(uni[m].measure.str() + " does not exceed mu(H_1)");
        }
    } else {
      ++z_shape.violations;
      z_shape.details.push_back("Z segment without a homogeneous reference measure");
    }
  }

  property_check tail_law{"central n/z segments end on a single ray", 0, 0, {}};
  for (const auto& seg : an.segments) {
    if (seg.type != index_type::n_indexed && seg.type != index_type::z_indexed) continue;
    bool has_c = false;
    for (const std::uint32_t m : seg.members)
      has_c |= uni[m].partition == partition_label::central;
    if (!has_c) continue;
    ++tail_law.instances;
    std::size_t tail = 0;
    for (auto it = seg.members.rbegin(); it != seg.members.rend(); ++it) {
      const auto& rec = uni[*it];
      if (rec.has_regular && !rec.has_preprojective && !rec.has_preinjective)
        ++tail;
      else
        break;
    }
    if (tail == 0) {
      ++tail_law.violations;
      tail_law.details.push_back("segment ending at " + uni[seg.members.back()].measure.str() +
                                 " has no regular-only tail");
      continue;
    }
    const auto& top = uni[seg.members.back()];
    bool matched = false;
    for (const std::uint32_t id : top.modules) {
      const auto& e = cat.entries[id];
      if (!e.tube) continue;
      const auto& levels = t.rays.at({e.tube->tube_id, e.tube->quasi_socle});
      bool ok = true;
      for (std::size_t d = 0; d < tail && ok; ++d) {
        if (e.tube->quasi_length < d + 1) {
          ok = false;
          break;
        }
        const auto lit = levels.find(e.tube->quasi_length - static_cast<std::uint32_t>(d));
        const std::size_t member = seg.members[seg.members.size() - 1 - d];
        ok = lit != levels.end() &&
             cat.entries[lit->second].measure == uni[member].measure;
      }
      if (ok) {
        matched = true;
        break;
      }
    }
    if (!matched) {
      ++tail_law.violations;
      tail_law.details.push_back("tail ending at " + top.measure.str() +
                                 " matches no single ray level-by-level");
    }
  }

  return {prefix_law, ray_pred, sync, purity, z_shape, tail_law};
}

}  // namespace grq
