#include "leastres/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace leastres::io {

namespace {

void dump_into(const Json& j, int depth, std::string& out) {
  auto pad = [&](int d) { out.append(2 * d, ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t n = 0;
      for (auto it = j.begin(); it != j.end(); ++it) {
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        dump_into(it.value(), depth + 1, out);
        out += ++n < j.size() ? ",\n" : "\n";
      }
      pad(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          dump_into(j[k], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        pad(depth + 1);
        dump_into(j[k], depth + 1, out);
        out += k + 1 < j.size() ? ",\n" : "\n";
      }
      pad(depth);
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw IoError(std::string("bad field '") + key + "'");
  }
}

Vec2 vec2(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) throw IoError("expected [x, y]");
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

Json pair(const Vec2& v) { return Json::array({v.x(), v.y()}); }

Json check_json(const Check& c) { return Json{{"value", c.value}, {"tol", c.tol}, {"pass", c.pass}}; }

}  // namespace

std::string number(double v) {
  if (!std::isfinite(v)) throw IoError("non-finite number in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep a marker so the value parses back as floating point
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  out += "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

Json domain_to_json(const Domain& d) {
  Json j;
  if (d.kind == Domain::Kind::disk) {
    j["kind"] = "disk";
    j["center"] = pair(d.center);
    j["radius"] = d.radius;
  } else {
    j["kind"] = "polygon";
    Json v = Json::array();
    for (const Vec2& p : d.vertices) v.push_back(pair(p));
    j["vertices"] = v;
  }
  j["h"] = d.h;
  return j;
}

Domain domain_from_json(const Json& j) {
  std::string kind = field<std::string>(j, "kind");
  double h = field<double>(j, "h");
  try {
    if (kind == "disk") return Domain::disk(vec2(j.at("center")), field<double>(j, "radius"), h);
    if (kind == "polygon") {
      std::vector<Vec2> v;
      for (const auto& p : j.at("vertices")) v.push_back(vec2(p));
      return Domain::polygon(std::move(v), h);
    }
  } catch (const PreconditionError& e) {
    throw IoError(std::string("invalid domain: ") + e.what());
  }
  throw IoError("unknown domain kind '" + kind + "'");
}

Json mesh_to_json(const GridFn& u) {
  Json j;
  j["format"] = "leastres-mesh";
  j["version"] = 1;
  j["domain"] = domain_to_json(u.grid().domain());
  j["M"] = u.height_cap();
  Json nodes = Json::array();
  for (const Vec2& p : u.grid().nodes()) nodes.push_back(pair(p));
  j["nodes"] = nodes;
  j["values"] = u.values();
  return j;
}

GridFn mesh_from_json(const Json& j) {
  if (field<std::string>(j, "format") != "leastres-mesh") throw IoError("not a mesh document");
  if (field<int>(j, "version") != 1) throw IoError("unsupported mesh version");
  Domain d = domain_from_json(j.at("domain"));
  double M = field<double>(j, "M");
  auto values = field<std::vector<double>>(j, "values");
  GridPtr grid;
  try {
    grid = make_grid(d);
  } catch (const PreconditionError& e) {
    throw IoError(std::string("invalid grid: ") + e.what());
  }
  if (static_cast<int>(values.size()) != grid->size()) throw IoError("value count does not match the grid");
  if (j.contains("nodes")) {
    const Json& nodes = j.at("nodes");
    if (!nodes.is_array() || static_cast<int>(nodes.size()) != grid->size()) throw IoError("node count mismatch");
    for (int k = 0; k < grid->size(); ++k) {
      if ((vec2(nodes[k]) - grid->node(k)).norm() > 1e-12 * std::max(1.0, d.diameter())) {
        throw IoError("node coordinates do not match the domain grid");
      }
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw IoError("non-finite value");
  }
  return GridFn(grid, std::move(values), M);
}

void save_mesh(const std::string& path, const GridFn& u) { write_file(path, dump(mesh_to_json(u))); }

GridFn load_mesh(const std::string& path) { return mesh_from_json(parse(read_file(path))); }

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ",";
      // integral columns such as iteration counts print without a fraction
      double v = row[k];
      if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        out += std::to_string(static_cast<long long>(v));
      } else {
        out += number(v);
      }
    }
    out += "\n";
  }
  return out;
}

std::string obj(const GridFn& u) {
  std::string out = "# lower surface, z up\n";
  for (int k = 0; k < u.size(); ++k) {
    const Vec2& p = u.grid().node(k);
    out += "v " + number(p.x()) + " " + number(p.y()) + " " + number(u[k]) + "\n";
  }
  for (const auto& t : u.surface().triangles()) {
    out += "f " + std::to_string(t.v[0] + 1) + " " + std::to_string(t.v[1] + 1) + " " + std::to_string(t.v[2] + 1) +
           "\n";
  }
  return out;
}

std::string obj(const PolyBody& c) {
  std::string out;
  for (const Vec3& p : c.vertices()) out += "v " + number(p.x()) + " " + number(p.y()) + " " + number(p.z()) + "\n";
  for (const auto& t : c.triangles()) {
    out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " + std::to_string(t[2] + 1) + "\n";
  }
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["h"] = r.h;
  j["boundary_check"] = check_json(r.boundary_check);
  const GradientGap& g = r.gradient_gap;
  j["gradient_gap"] = check_json(g.check);
  j["gradient_gap"]["interval"] = Json::array({g.lo, g.hi});
  j["gradient_gap"]["mass_in_gap"] = g.mass_in_gap;
  j["gradient_gap"]["regular_cells"] = g.regular_cells;
  j["gradient_gap"]["histogram"] = g.histogram;
  j["extreme_vs_singular"] = check_json(r.extreme_vs_singular);
  j["extreme_vs_singular"]["extreme_vertices"] = r.extreme_count;
  j["extreme_vs_singular"]["shallow_vertices"] = r.extreme_shallow;
  j["extreme_vs_singular"]["singular_nodes"] = r.singular_count;
  j["developability"] = check_json(r.developability);
  const Reconstruction& rec = r.reconstruction;
  Json rj;
  rj["possible"] = rec.possible;
  rj["singular_interior"] = rec.singular_interior;
  if (rec.possible) {
    rj["hausdorff"] = rec.hausdorff;
    rj["hausdorff_over_h"] = rec.check.value;
  }
  rj["tol_over_h"] = rec.check.tol;
  rj["pass"] = rec.check.pass;
  j["reconstruction"] = rj;
  j["partition"] = Json{{"plus", r.partition.plus},
                        {"minus", r.partition.minus},
                        {"zero", r.partition.zero},
                        {"singular_area_fraction", r.partition.singular_area_fraction}};
  j["all_pass"] = r.all_pass();
  j["notes"] = r.notes;
  return j;
}

}  // namespace leastres::io
