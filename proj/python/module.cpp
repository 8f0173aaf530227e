#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grquiver/errors.hpp"
#include "grquiver/grcore.hpp"
#include "grquiver/io.hpp"
#include "grquiver/measure.hpp"
#include "grquiver/quiver.hpp"
#include "grquiver/rep.hpp"
#include "grquiver/segments.hpp"
#include "grquiver/tame.hpp"

namespace py = pybind11;

namespace {

using arrow_list = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
using matrix = std::vector<std::vector<std::uint32_t>>;

grq::quiver make_quiver(std::uint32_t vertices, const arrow_list& arrows) {
  grq::quiver q;
  q.n = vertices;
  q.arrows = arrows;
  for (const auto& [s, t] : arrows)
    if (s >= vertices || t >= vertices)
      throw grq::invalid_input("arrow endpoint out of range");
  return q;
}

grq::rep make_rep(const grq::quiver& q, std::uint32_t p, const std::vector<std::uint32_t>& dims,
                  const std::vector<matrix>& maps) {
  if (dims.size() != q.n) throw grq::invalid_input("dims must list one dimension per vertex");
  grq::rep m = grq::rep::zero(q, grq::field(p), dims);
  if (maps.empty()) return m;
  if (maps.size() != q.arrows.size())
    throw grq::invalid_input("maps must list one matrix per arrow");
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const auto& mx = maps[a];
    if (mx.empty()) continue;  // zero map
    const auto [s, t] = q.arrows[a];
    if (mx.size() != dims[t]) throw grq::invalid_input("matrix row count mismatch");
    for (std::uint32_t r = 0; r < dims[t]; ++r) {
      if (mx[r].size() != dims[s]) throw grq::invalid_input("matrix column count mismatch");
      for (std::uint32_t c = 0; c < dims[s]; ++c) {
        if (mx[r][c] >= p) throw grq::invalid_input("matrix entry not reduced mod p");
        m.maps[a].at(r, c) = static_cast<std::uint8_t>(mx[r][c]);
      }
    }
  }
  return m;
}

py::list presets() {
  py::list out;
  for (const char* name : {"kronecker", "a21", "a22_sink_source", "d4_tilde"}) {
    const auto info = grq::preset(name);
    py::dict d;
    d["name"] = info->name;
    d["vertices"] = info->q.n;
    d["arrows"] = info->q.arrows;
    d["default_length_bound"] = info->default_length_bound;
    d["description"] = info->description;
    out.append(std::move(d));
  }
  return out;
}

py::dict measure(std::uint32_t vertices, const arrow_list& arrows, std::uint32_t p,
                 const std::vector<std::uint32_t>& dims, const std::vector<matrix>& maps) {
  const grq::quiver q = make_quiver(vertices, arrows);
  const grq::rep m = make_rep(q, p, dims, maps);
  if (m.length() == 0) throw grq::invalid_input("the zero module has no measure");
  const auto res = grq::gr_measure_of(m);
  py::dict out;
  out["measure"] = res.mu.elems();
  out["measure_str"] = res.mu.str();
  py::list filt;
  for (const auto& step : res.chain) {
    std::vector<std::uint32_t> d;
    for (std::uint32_t v = 0; v < q.n; ++v) d.push_back(step.basis[v].cols);
    filt.append(std::move(d));
  }
  out["filtration_dims"] = std::move(filt);
  py::list subs;
  for (const auto& t : grq::gr_submodules(m)) subs.append(t.dims);
  out["gr_submodule_dims"] = std::move(subs);
  out["indecomposable"] = grq::is_indecomposable(m);
  return out;
}

int compare_measures(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return grq::compare(grq::gr_measure(a), grq::gr_measure(b));
}

grq::catalog build(std::uint32_t vertices, const arrow_list& arrows, std::uint32_t p,
                   std::uint32_t L) {
  return grq::build_catalog(make_quiver(vertices, arrows), p, L);
}

py::list catalog_entries(std::uint32_t vertices, const arrow_list& arrows, std::uint32_t p,
                         std::uint32_t L) {
  const auto cat = build(vertices, arrows, p, L);
  py::list out;
  for (const auto& e : cat.entries) {
    py::dict d;
    d["label"] = e.label;
    d["dim"] = e.dimv;
    d["length"] = e.module.length();
    d["position"] = e.pos == grq::position::preprojective   ? "preprojective"
                    : e.pos == grq::position::preinjective ? "preinjective"
                                                           : "regular";
    if (e.tube) {
      d["tube"] = e.tube->tube_id;
      d["rank"] = e.tube->rank;
      d["quasi_length"] = e.tube->quasi_length;
    } else {
      d["tube"] = py::none();
    }
    d["measure"] = e.measure.elems();
    out.append(std::move(d));
  }
  return out;
}

std::string catalog_json(std::uint32_t vertices, const arrow_list& arrows, std::uint32_t p,
                         std::uint32_t L) {
  return grq::io::catalog_to_json(build(vertices, arrows, p, L));
}

py::dict segments(std::uint32_t vertices, const arrow_list& arrows, std::uint32_t p,
                  std::uint32_t L, std::uint32_t delta, std::uint32_t z_min_preinj_run) {
  const auto cat = build(vertices, arrows, p, L);
  grq::segment_options opt;
  opt.delta = delta;
  opt.z_min_preinj_run = z_min_preinj_run;
  const auto an = grq::analyze_segments(cat, opt);
  py::dict out;
  py::list universe;
  for (const auto& rec : an.universe) {
    py::dict u;
    u["measure"] = rec.measure.elems();
    u["partition"] = grq::partition_name(rec.partition);
    u["fiber_size"] = rec.modules.size();
    universe.append(std::move(u));
  }
  out["universe"] = std::move(universe);
  py::list segs;
  for (const auto& s : an.segments) {
    py::dict d;
    d["type"] = grq::index_type_name(s.type);
    d["anchor"] = s.anchor;
    d["members"] = s.members;
    segs.append(std::move(d));
  }
  out["segments"] = std::move(segs);
  out["b"] = an.b;
  out["a"] = an.a ? py::cast(*an.a) : py::none();
  const auto rep = grq::verify_main_theorem(cat, an);
  py::list checks;
  for (const auto* bc : {&rep.z_count, &rep.central_count, &rep.total_count}) {
    py::dict c;
    c["name"] = bc->name;
    c["count"] = bc->count;
    c["bound"] = bc->bound ? py::cast(*bc->bound) : py::none();
    c["pass"] = bc->pass;
    checks.append(std::move(c));
  }
  out["bound_checks"] = std::move(checks);
  out["all_bounds_pass"] = rep.all_pass;
  out["notes"] = an.notes;
  return out;
}

py::dict verify(std::uint32_t vertices, const arrow_list& arrows, std::uint32_t p,
                std::uint32_t L) {
  const auto cat = build(vertices, arrows, p, L);
  const auto an = grq::analyze_segments(cat);
  py::dict out;
  py::list checks;
  bool all = true;
  for (const auto& c : grq::run_property_suites(cat, an)) {
    py::dict d;
    d["name"] = c.name;
    d["instances"] = c.instances;
    d["violations"] = c.violations;
    d["details"] = c.details;
    checks.append(std::move(d));
    all = all && c.violations == 0;
  }
  const auto rep = grq::verify_main_theorem(cat, an);
  all = all && rep.all_pass;
  out["checks"] = std::move(checks);
  out["bounds_pass"] = rep.all_pass;
  out["all_pass"] = all;
  return out;
}

}  // namespace

PYBIND11_MODULE(_grquiver, m) {
  m.doc() = "Gabriel-Roiter measures of quiver representations over small prime fields";
  m.attr("__version__") = "1.0.0";

  m.def("presets", &presets,
        "Built-in tame quivers: name, vertices, arrows, default length bound, description.");
  m.def("compare_measures", &compare_measures, py::arg("a"), py::arg("b"),
        "Three-way comparison of two measures (strictly increasing integer lists): "
        "-1, 0, or 1.");
  m.def("measure", &measure, py::arg("vertices"), py::arg("arrows"), py::arg("p"),
        py::arg("dims"), py::arg("maps") = std::vector<matrix>{},
        "Gabriel-Roiter measure of one module. maps is one row-major matrix per arrow "
        "(entries mod p, [] for the zero map); returns the measure, a realizing "
        "filtration's dimension vectors, and the GR submodule dimension vectors.");
  m.def("catalog", &catalog_entries, py::arg("vertices"), py::arg("arrows"), py::arg("p"),
        py::arg("length_bound"),
        "All indecomposables up to the length bound (homogeneous tubes at rational "
        "points only): label, dim, length, position, tube data, measure.");
  m.def("catalog_json", &catalog_json, py::arg("vertices"), py::arg("arrows"), py::arg("p"),
        py::arg("length_bound"),
        "The same catalog in the lossless JSON format used by the command-line tool.");
  m.def("segments", &segments, py::arg("vertices"), py::arg("arrows"), py::arg("p"),
        py::arg("length_bound"), py::arg("delta") = 2, py::arg("z_min_preinj_run") = 3,
        "Measure universe, take-off/central/landing partition, segment decomposition "
        "with N/-N/Z types, and the segment-count bound checks.");
  m.def("verify", &verify, py::arg("vertices"), py::arg("arrows"), py::arg("p"),
        py::arg("length_bound"),
        "Run the structural property suites and bound checks; all_pass is True when "
        "no violation was found.");
}
