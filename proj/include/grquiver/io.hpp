#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grquiver/errors.hpp"
#include "grquiver/quiver.hpp"
#include "grquiver/rep.hpp"
#include "grquiver/segments.hpp"
#include "grquiver/tame.hpp"

namespace grq::io {

// All serializers are deterministic: identical inputs give identical bytes,
// independent of thread count. All parsers throw invalid_input on malformed
// text.

// -----------------------------------------------------------------------
// run spec file: {"name"?: str, "vertices": n, "arrows": [[s,t],...],
//                 "p"?: prime, "L"?: length bound}
struct run_spec {
  quiver q;
  std::string name = "custom";
  std::optional<std::uint32_t> p;
  std::optional<std::uint32_t> L;
};
run_spec parse_run_spec(const std::string& text);
run_spec load_run_spec(const std::string& path);  // reads the file, then parses

// inline module: {"dims": [d_0..d_{n-1}], "maps"?: [matrix per arrow]} where
// matrix is a dims[target] x dims[source] array of residues mod p (missing or
// empty means the zero map); rejects the zero module
rep parse_module(const std::string& text, const quiver& q, std::uint32_t p);

// -----------------------------------------------------------------------
// catalog serialization (lossless round trip: modules, tube data, measures)
std::string catalog_to_json(const catalog& cat);
catalog catalog_from_json(const std::string& text);
std::string catalog_to_csv(const catalog& cat);

// -----------------------------------------------------------------------
// analysis reports
// columns: measure, length (= max element), elements, fiber_size, positions
// (subset of "PRI"), partition
std::string measures_to_csv(const catalog& cat, const segment_analysis& an);
// full analysis: universe, certificate-tagged edges, segments, a/b, notes,
// and the sink-source report when the quiver is cycle-shaped
std::string segments_to_json(const catalog& cat, const segment_analysis& an);
// successor chain as a DOT digraph, edges colored by certificate
std::string hasse_to_dot(const catalog& cat, const segment_analysis& an);
std::string theorem_to_json(const theorem_report& rep);
std::string properties_to_json(const std::vector<property_check>& checks);

// -----------------------------------------------------------------------
// RFC-4180-style CSV (quotes doubled, fields with , " or newline quoted)
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace grq::io
