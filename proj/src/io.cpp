#include "grquiver/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace grq::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw invalid_input(std::string(what) + ": malformed JSON");
  return j;
}

std::uint32_t get_u32(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw invalid_input(std::string(what) + ": missing or non-integer \"" + key + "\"");
  return j[key].get<std::uint32_t>();
}

quiver quiver_from_json(const json& j, const char* what) {
  quiver q;
  q.n = get_u32(j, "vertices", what);
  if (q.n == 0) throw invalid_input(std::string(what) + ": quiver needs at least one vertex");
  if (!j.contains("arrows") || !j["arrows"].is_array())
    throw invalid_input(std::string(what) + ": missing \"arrows\" array");
  for (const auto& a : j["arrows"]) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_unsigned() ||
        !a[1].is_number_unsigned())
      throw invalid_input(std::string(what) + ": each arrow must be [source, target]");
    const auto s = a[0].get<std::uint32_t>(), t = a[1].get<std::uint32_t>();
    if (s >= q.n || t >= q.n)
      throw invalid_input(std::string(what) + ": arrow endpoint out of range");
    q.arrows.emplace_back(s, t);
  }
  return q;
}

json quiver_to_json(const quiver& q) {
  json j;
  j["vertices"] = q.n;
  auto& arr = j["arrows"] = json::array();
  for (const auto& [s, t] : q.arrows) arr.push_back(json::array({s, t}));
  return j;
}

json mat_to_json(const mat& m) {
  json rows = json::array();
  for (std::uint32_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::uint32_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void mat_from_json(const json& j, mat& out, const char* what) {
  if (!j.is_array()) throw invalid_input(std::string(what) + ": matrix must be an array");
  if (j.empty()) return;  // zero map of any shape
  if (j.size() != out.rows)
    throw invalid_input(std::string(what) + ": matrix row count mismatch");
  for (std::uint32_t r = 0; r < out.rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != out.cols)
      throw invalid_input(std::string(what) + ": matrix column count mismatch");
    for (std::uint32_t c = 0; c < out.cols; ++c) {
      if (!row[c].is_number_unsigned())
        throw invalid_input(std::string(what) + ": matrix entries must be nonnegative integers");
      const auto v = row[c].get<std::uint32_t>();
      if (v >= out.f.p())
        throw invalid_input(std::string(what) + ": matrix entry not reduced mod p");
      out.at(r, c) = static_cast<std::uint8_t>(v);
    }
  }
}

position position_from_name(const std::string& s, const char* what) {
  if (s == "preprojective") return position::preprojective;
  if (s == "regular") return position::regular;
  if (s == "preinjective") return position::preinjective;
  throw invalid_input(std::string(what) + ": unknown position \"" + s + "\"");
}

std::string positions_string(const measure_record& rec) {
  std::string s;
  if (rec.has_preprojective) s += 'P';
  if (rec.has_regular) s += 'R';
  if (rec.has_preinjective) s += 'I';
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_dims(const std::vector<std::uint32_t>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(dims[i]);
  }
  return s;
}

}  // namespace

run_spec parse_run_spec(const std::string& text) {
  const json j = parse_json(text, "run spec");
  run_spec rs;
  rs.q = quiver_from_json(j, "run spec");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw invalid_input("run spec: \"name\" must be a string");
    rs.name = j["name"].get<std::string>();
  }
  if (j.contains("p")) rs.p = get_u32(j, "p", "run spec");
  if (j.contains("L")) rs.L = get_u32(j, "L", "run spec");
  return rs;
}

run_spec load_run_spec(const std::string& path) { return parse_run_spec(read_file(path)); }

rep parse_module(const std::string& text, const quiver& q, std::uint32_t p) {
  const json j = parse_json(text, "module");
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != q.n)
    throw invalid_input("module: \"dims\" must list one dimension per vertex");
  std::vector<std::uint32_t> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_unsigned()) throw invalid_input("module: dimensions must be nonnegative");
    dims.push_back(d.get<std::uint32_t>());
  }
  rep m = rep::zero(q, field(p), dims);
  if (m.length() == 0) throw invalid_input("module: the zero module has no measure");
  if (j.contains("maps")) {
    const auto& maps = j["maps"];
    if (!maps.is_array() || maps.size() != q.arrows.size())
      throw invalid_input("module: \"maps\" must list one matrix per arrow");
    for (std::size_t i = 0; i < q.arrows.size(); ++i)
      mat_from_json(maps[i], m.maps[i], "module");
  }
  return m;
}

std::string catalog_to_json(const catalog& cat) {
  json j;
  j["format"] = "grquiver-catalog";
  j["version"] = 1;
  j["quiver"] = quiver_to_json(cat.q);
  j["p"] = cat.p;
  j["L"] = cat.L;
  j["complete"] = cat.complete;
  j["completeness_note"] = cat.completeness_note;
  auto& entries = j["entries"] = json::array();
  for (const auto& e : cat.entries) {
    json je;
    je["label"] = e.label;
    je["dim"] = e.dimv;
    je["position"] = position_name(e.pos);
    if (e.tube) {
      json jt;
      jt["id"] = e.tube->tube_id;
      jt["rank"] = e.tube->rank;
      jt["quasi_socle"] = e.tube->quasi_socle;
      jt["quasi_length"] = e.tube->quasi_length;
      je["tube"] = std::move(jt);
    } else {
      je["tube"] = nullptr;
    }
    je["measure"] = e.measure.str();
    auto& maps = je["maps"] = json::array();
    for (const auto& m : e.module.maps) maps.push_back(mat_to_json(m));
    entries.push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

catalog catalog_from_json(const std::string& text) {
  const json j = parse_json(text, "catalog");
  if (!j.contains("format") || j["format"] != "grquiver-catalog")
    throw invalid_input("catalog: not a grquiver-catalog file");
  catalog cat;
  cat.q = quiver_from_json(j.at("quiver"), "catalog");
  cat.p = get_u32(j, "p", "catalog");
  cat.L = get_u32(j, "L", "catalog");
  if (!j.contains("complete") || !j["complete"].is_boolean())
    throw invalid_input("catalog: missing \"complete\" flag");
  cat.complete = j["complete"].get<bool>();
  cat.completeness_note = j.value("completeness_note", std::string());
  cat.ed = euler_data_of(cat.q);
  if (!j.contains("entries") || !j["entries"].is_array())
    throw invalid_input("catalog: missing \"entries\"");
  for (const auto& je : j["entries"]) {
    catalog_entry e;
    if (!je.contains("dim") || !je["dim"].is_array() || je["dim"].size() != cat.q.n)
      throw invalid_input("catalog: entry \"dim\" must list one dimension per vertex");
    for (const auto& d : je["dim"]) e.dimv.push_back(d.get<std::uint32_t>());
    e.module = rep::zero(cat.q, field(cat.p), e.dimv);
    if (!je.contains("maps") || !je["maps"].is_array() ||
        je["maps"].size() != cat.q.arrows.size())
      throw invalid_input("catalog: entry \"maps\" must list one matrix per arrow");
    for (std::size_t i = 0; i < cat.q.arrows.size(); ++i)
      mat_from_json(je["maps"][i], e.module.maps[i], "catalog");
    if (!je.contains("position") || !je["position"].is_string())
      throw invalid_input("catalog: entry missing \"position\"");
    e.pos = position_from_name(je["position"].get<std::string>(), "catalog");
    if (je.contains("tube") && !je["tube"].is_null()) {
      tube_info t;
      t.tube_id = get_u32(je["tube"], "id", "catalog tube");
      t.rank = get_u32(je["tube"], "rank", "catalog tube");
      t.quasi_socle = get_u32(je["tube"], "quasi_socle", "catalog tube");
      t.quasi_length = get_u32(je["tube"], "quasi_length", "catalog tube");
      e.tube = t;
    }
    if (!je.contains("measure") || !je["measure"].is_string())
      throw invalid_input("catalog: entry missing \"measure\"");
    const auto mu = gr_measure::parse(je["measure"].get<std::string>());
    if (!mu) throw invalid_input("catalog: unparsable measure string");
    e.measure = *mu;
    e.label = je.value("label", std::string());
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

std::string catalog_to_csv(const catalog& cat) {
  std::string out =
      "id,label,dim,length,position,tube,rank,quasi_socle,quasi_length,measure\n";
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    const auto& e = cat.entries[i];
    out += std::to_string(i);
    out += ',' + csv_field(e.label);
    out += ',' + csv_field(join_dims(e.dimv));
    out += ',' + std::to_string(e.module.length());
    out += ',';
    out += position_name(e.pos);
    if (e.tube) {
      out += ',' + std::to_string(e.tube->tube_id);
      out += ',' + std::to_string(e.tube->rank);
      out += ',' + std::to_string(e.tube->quasi_socle);
      out += ',' + std::to_string(e.tube->quasi_length);
    } else {
      out += ",,,,";
    }
    out += ',' + csv_field(e.measure.str());
    out += '\n';
  }
  return out;
}

std::string measures_to_csv(const catalog& cat, const segment_analysis& an) {
  (void)cat;
  std::string out = "measure,length,elements,fiber_size,positions,partition\n";
  for (const auto& rec : an.universe) {
    out += csv_field(rec.measure.str());
    out += ',' + std::to_string(rec.measure.top());
    out += ',' + std::to_string(rec.measure.size());
    out += ',' + std::to_string(rec.modules.size());
    out += ',' + positions_string(rec);
    out += ',';
    out += partition_name(rec.partition);
    out += '\n';
  }
  return out;
}

std::string segments_to_json(const catalog& cat, const segment_analysis& an) {
  json j;
  j["format"] = "grquiver-segments";
  j["version"] = 1;
  j["quiver"] = quiver_to_json(cat.q);
  j["p"] = cat.p;
  j["L"] = cat.L;
  j["delta"] = an.options.delta;
  j["z_min_preinj_run"] = an.options.z_min_preinj_run;
  j["b"] = an.b;
  if (an.a)
    j["a"] = *an.a;
  else
    j["a"] = nullptr;
  auto& uni = j["universe"] = json::array();
  for (const auto& rec : an.universe) {
    json ju;
    ju["measure"] = rec.measure.str();
    ju["length"] = rec.measure.top();
    ju["partition"] = partition_name(rec.partition);
    ju["fiber"] = rec.modules;
    ju["positions"] = positions_string(rec);
    uni.push_back(std::move(ju));
  }
  auto& edges = j["edges"] = json::array();
  for (const auto& e : an.edges) {
    json je;
    je["from"] = e.from.str();
    je["to"] = e.to.str();
    je["certificate"] = certificate_name(e.certificate);
    edges.push_back(std::move(je));
  }
  auto& segs = j["segments"] = json::array();
  for (const auto& s : an.segments) {
    json js;
    js["type"] = index_type_name(s.type);
    js["anchor"] = s.anchor;
    js["members"] = s.members;
    auto& ms = js["measures"] = json::array();
    for (const auto m : s.members) ms.push_back(an.universe[m].measure.str());
    segs.push_back(std::move(js));
  }
  if (is_cycle_shaped(cat.q)) {
    const auto ss = check_sink_source_prop(cat, an);
    json js;
    js["sink_source_orientation"] = ss.sink_source_orientation;
    js["preinjective_central"] = ss.preinjective_central;
    js["z_segment_present"] = ss.z_segment_present;
    js["consistent"] = ss.consistent;
    j["sink_source"] = std::move(js);
  } else {
    j["sink_source"] = nullptr;
  }
  j["notes"] = an.notes;
  return j.dump(2) + "\n";
}

std::string hasse_to_dot(const catalog& cat, const segment_analysis& an) {
  (void)cat;
  std::string out = "digraph gr_successors {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=box, fontname=\"monospace\"];\n";
  out += "  // edge colors: gray = catalog-relative, blue = theory-homogeneous,";
  out += " red = theory-stable\n";
  for (std::size_t i = 0; i < an.universe.size(); ++i) {
    const auto& rec = an.universe[i];
    out += "  m" + std::to_string(i) + " [label=\"" + rec.measure.str() + "\\n" +
           partition_name(rec.partition) + "\"];\n";
  }
  for (std::size_t i = 0; i < an.edges.size(); ++i) {
    const char* color = "gray50";
    const char* extra = "";
    if (an.edges[i].certificate == certificate_kind::theory_homogeneous) {
      color = "blue";
      extra = ", penwidth=2.0";
    } else if (an.edges[i].certificate == certificate_kind::theory_stable) {
      color = "red";
      extra = ", penwidth=2.0";
    }
    out += "  m" + std::to_string(i) + " -> m" + std::to_string(i + 1) + " [color=" + color +
           extra + "];\n";
  }
  out += "}\n";
  return out;
}

std::string theorem_to_json(const theorem_report& rep) {
  json j;
  j["format"] = "grquiver-theorem";
  j["version"] = 1;
  auto& checks = j["checks"] = json::array();
  for (const auto* bc : {&rep.z_count, &rep.central_count, &rep.total_count}) {
    json jc;
    jc["name"] = bc->name;
    jc["count"] = bc->count;
    if (bc->bound)
      jc["bound"] = *bc->bound;
    else
      jc["bound"] = nullptr;
    jc["pass"] = bc->pass;
    jc["detail"] = bc->detail;
    checks.push_back(std::move(jc));
  }
  j["all_pass"] = rep.all_pass;
  j["catalog_caveat"] = rep.catalog_caveat;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

std::string properties_to_json(const std::vector<property_check>& checks) {
  json j;
  j["format"] = "grquiver-properties";
  j["version"] = 1;
  bool all = true;
  auto& arr = j["checks"] = json::array();
  for (const auto& pc : checks) {
    json jc;
    jc["name"] = pc.name;
    jc["instances"] = pc.instances;
    jc["violations"] = pc.violations;
    jc["details"] = pc.details;
    arr.push_back(std::move(jc));
    all = all && pc.violations == 0;
  }
  j["all_pass"] = all;
  return j.dump(2) + "\n";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      if (any || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
      }
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw invalid_input("csv: unterminated quoted field");
  if (any || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw invalid_input("cannot write file: " + path);
  out << content;
  if (!out) throw invalid_input("write failed: " + path);
}

}  // namespace grq::io
