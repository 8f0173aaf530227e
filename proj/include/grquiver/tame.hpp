#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grquiver/errors.hpp"
#include "grquiver/measure.hpp"
#include "grquiver/quiver.hpp"
#include "grquiver/rep.hpp"

namespace grq {

using ivec = std::vector<long long>;
using imat = std::vector<ivec>;

// Euler/Coxeter data of an acyclic connected quiver of extended Dynkin type.
// euler[i][j] = delta_ij - #arrows i->j, so <d,e> = d^T . euler . e = hom - ext.
// coxeter acts on column dimension vectors: dims(tau M) = coxeter * dims(M) for
// indecomposable non-projective M; its inverse drives tau^-.
// delta is the primitive positive generator of the radical of euler + euler^T.
// defect_sign is fixed so that every projective has negative defect.
struct euler_data {
  quiver q;
  imat euler;
  imat coxeter;
  imat coxeter_inv;
  ivec delta;
  int defect_sign = 1;
};

// throws invalid_input when the quiver is not connected acyclic extended Dynkin
// (finite representation type and wild quivers are both rejected, with distinct
// messages)
euler_data euler_data_of(const quiver& q);
bool is_tame(const quiver& q);

long long defect_of(const euler_data& e, const std::vector<std::uint32_t>& dimv);

enum class position : std::uint8_t { preprojective, regular, preinjective };
const char* position_name(position p);

// classification by defect sign; meaningful for indecomposable modules
position classify(const euler_data& e, const rep& m);

// BGP reflection at a sink (kernel construction) or source (cokernel
// construction) of m.q; the result lives over m.q reversed at v
rep reflect(const rep& m, std::uint32_t v);

// admissible vertex ordering: repeatedly remove the smallest-id sink
std::vector<std::uint32_t> admissible_sink_order(const quiver& q);

enum class translate_dir : std::uint8_t { tau, tau_minus };

// Auslander-Reiten translate via composed reflections along the admissible
// order; nullopt for projectives (tau) / injectives (tau_minus); throws
// invalid_input on decomposable input
std::optional<rep> ar_translate(const rep& m, translate_dir dir, const budgets& bud = {});

// true when m is regular (defect 0) with no proper nonzero regular submodule
bool is_quasi_simple(const euler_data& e, const rep& m, const budgets& bud = {});

// orbit length of a regular quasi-simple under the AR translate
std::uint32_t rank_of(const euler_data& e, const rep& x, const budgets& bud = {});

// the indecomposable regular module with quasi-socle x and quasi-length i,
// built by iterated nonsplit extensions of tau^- shifts of x
rep build_x_chain(const euler_data& e, const rep& x, std::uint32_t i, const budgets& bud = {});

struct tube_info {
  std::uint32_t tube_id = 0;      // index among detected tubes
  std::uint32_t quasi_socle = 0;  // catalog entry id of the quasi-socle
  std::uint32_t quasi_length = 1;
  std::uint32_t rank = 1;
};

struct catalog_entry {
  rep module;
  std::vector<std::uint32_t> dimv;
  position pos = position::regular;
  std::optional<tube_info> tube;
  gr_measure measure;
  std::string label;
};

struct catalog {
  quiver q;
  std::uint32_t p = 2;
  std::uint32_t L = 10;
  euler_data ed;
  std::vector<catalog_entry> entries;
  bool complete = true;
  // homogeneous tubes are sampled at F_p-rational points only; this note (and
  // the flag above) records that proxy and any budget truncation
  std::string completeness_note;
};

// every preprojective tau^-i P(v), preinjective tau^i I(v) and regular tube
// member of length <= L over F_p, deduplicated by isomorphism, annotated with
// GR measures, sorted by (length, dim vector, serialized maps).
// honors the GRQ_THREADS environment variable for the measure annotations.
catalog build_catalog(const quiver& q, std::uint32_t p, std::uint32_t L, const budgets& bud = {});

}  // namespace grq
