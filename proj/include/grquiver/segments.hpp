#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grquiver/errors.hpp"
#include "grquiver/measure.hpp"
#include "grquiver/quiver.hpp"
#include "grquiver/tame.hpp"

namespace grq {

// Measure-level analysis over a frozen catalog: fibers, direct successors with
// certificates, the take-off/central/landing partition, segment assembly and
// index typing, the a/b counts and the bound checks.

// ---------------------------------------------------------------------------
// universe records

enum class partition_label : std::uint8_t { take_off, central, landing, unstable };
const char* partition_name(partition_label l);

struct measure_record {
  gr_measure measure;
  // catalog entry ids sharing this measure, ascending (the fiber)
  std::vector<std::uint32_t> modules;
  partition_label partition = partition_label::unstable;
  bool has_preprojective = false;
  bool has_regular = false;
  bool has_preinjective = false;
};

// distinct measures of the catalog, ascending, each with its fiber; partition
// labels are left at the default (see partition_universe)
std::vector<measure_record> measure_universe(const catalog& cat);

// ---------------------------------------------------------------------------
// direct successors

enum class certificate_kind : std::uint8_t {
  // least larger measure in this catalog; says nothing beyond the window
  catalog_relative,
  // homogeneous layer step: the fiber holds a homogeneous layer H_i and the
  // successor fiber holds H_{i+1}
  theory_homogeneous,
  // stable exceptional ray step X_j -> X_{j+1} with j >= 2*rank and
  // mu(X_rank) >= mu(H_1)
  theory_stable,
};
const char* certificate_name(certificate_kind c);

struct successor_edge {
  gr_measure from;
  gr_measure to;
  certificate_kind certificate = certificate_kind::catalog_relative;
};

// least catalog measure strictly above `from`, or nothing at the maximum;
// throws invalid_input if `from` is not a catalog measure
std::optional<successor_edge> successor_in(const catalog& cat, const gr_measure& from);

// ---------------------------------------------------------------------------
// partition and segments

struct segment_options {
  // the second stability window sits at length bound L - delta
  std::uint32_t delta = 2;
  // a segment is typed Z only if, counting up from its bottom, at least this
  // many consecutive fibers contain a preinjective
  std::uint32_t z_min_preinj_run = 3;
};

// two-window partition: measures whose position in the ascending universe is
// stable between L and L-delta become TakeOff (initial run) or Landing (final
// run); measures present in both windows become Central; the rest Unstable.
// Fibers holding only preprojectives are always TakeOff.
std::vector<measure_record> partition_universe(const catalog& cat,
                                               const segment_options& opt = {},
                                               const budgets& bud = {});

enum class index_type : std::uint8_t { n_indexed, neg_n_indexed, z_indexed, unknown };
const char* index_type_name(index_type t);

struct segment {
  // indices into the ascending universe; consecutive, ascending
  std::vector<std::uint32_t> members;
  index_type type = index_type::unknown;
  // "take-off", "landing", "homogeneous", "tube <id>", or "unlabeled"
  std::string anchor;
};

struct segment_analysis {
  std::vector<measure_record> universe;  // ascending, partition-labeled
  std::vector<successor_edge> edges;     // edges[i]: universe[i] -> universe[i+1]
  std::vector<segment> segments;         // consecutive runs covering the universe
  std::uint32_t b = 0;                   // exceptional quasi-simples
  std::optional<std::uint32_t> a;        // empty when no homogeneous layer exists
  segment_options options;
  std::vector<std::string> notes;        // truncation / availability caveats
};

segment_analysis analyze_segments(const catalog& cat, const segment_options& opt = {},
                                  const budgets& bud = {});

// the segments of analyze_segments, for callers that need nothing else
std::vector<segment> assemble_segments(const catalog& cat, const segment_options& opt = {},
                                       const budgets& bud = {});

// ---------------------------------------------------------------------------
// counts and bound checks

// number of quasi-simple modules living in tubes of rank >= 2
std::uint32_t compute_b(const catalog& cat);

// among those, the count whose ray satisfies mu(X_rank) >= mu(H_1); empty when
// the catalog holds no homogeneous quasi-simple (no mu(H_1) to compare against)
std::optional<std::uint32_t> compute_a(const catalog& cat);

struct bound_check {
  std::string name;
  std::uint32_t count = 0;
  std::optional<std::uint32_t> bound;  // empty: bound unavailable
  bool pass = false;
  std::string detail;
};

struct theorem_report {
  bound_check z_count;        // #Z-typed segments <= a
  bound_check central_count;  // #(N or Z)-typed segments holding a central measure <= b+1
  bound_check total_count;    // #segments <= b+3
  bool all_pass = false;
  bool catalog_caveat = false;  // unstable fibers or an incomplete catalog
  std::vector<std::string> notes;
};

theorem_report verify_main_theorem(const catalog& cat, const segment_analysis& an);
theorem_report verify_main_theorem(const catalog& cat, const segment_options& opt = {},
                                   const budgets& bud = {});

// ---------------------------------------------------------------------------
// sink-source orientation test (cycle-shaped quivers only)

// underlying graph is a single cycle (every vertex has total degree 2)
bool is_cycle_shaped(const quiver& q);
// every vertex is a sink or a source
bool has_sink_source_orientation(const quiver& q);

struct sink_source_report {
  bool sink_source_orientation = false;  // (1)
  bool preinjective_central = false;     // (2) some central fiber holds a preinjective
  bool z_segment_present = false;        // (3) some segment is typed Z
  // NOT(1) == (2) == (3): the three tests agree
  bool consistent = false;
};

// throws invalid_input unless cat.q is cycle-shaped
sink_source_report check_sink_source_prop(const catalog& cat, const segment_analysis& an);
sink_source_report check_sink_source_prop(const catalog& cat, const segment_options& opt = {},
                                          const budgets& bud = {});

// ---------------------------------------------------------------------------
// structural law sweeps

struct property_check {
  std::string name;
  std::uint32_t instances = 0;   // hypothesis hits
  std::uint32_t violations = 0;  // conclusion failures among those
  std::vector<std::string> details;
};

// runs every structural law over a finished analysis:
//  - measure-prefix law: in a segment whose first measure is shortest, every
//    member starts with the first
//  - ray-predecessor law: the nearest lower regular-bearing measure inside a
//    segment is the measure of the ray one step down
//  - ray-synchrony law: two rays sharing a measure at depth >= 2*rank (on a
//    qualifying ray) have equal ranks and share all deeper measures
//  - stable-ray purity: no preinjective shares a measure with a qualifying ray
//    member of depth >= 2*rank
//  - z-shape law: a Z segment has a preinjective-bearing prefix, a
//    preinjective-only run at the very bottom, and all members above mu(H_1)
//  - single-ray tail law: an N- or Z-typed segment holding a central measure
//    ends in a run of regular-only fibers matching one ray level-by-level
std::vector<property_check> run_property_suites(const catalog& cat, const segment_analysis& an);

}  // namespace grq
