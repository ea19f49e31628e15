#include "fairtile/document.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fairtile/error.hpp"

namespace fairtile {

namespace {

using nlohmann::json;

std::optional<Corner> parse_corner(const std::string& s) {
  if (s == "A") return Corner::A;
  if (s == "B") return Corner::B;
  if (s == "C") return Corner::C;
  throw Error(ErrorKind::ParseError, "unknown corner label '" + s + "'");
}

json tile_json(const Tile& t) {
  json id = {{"strip", t.key.id.strip}, {"col", t.key.id.col}, {"slot", t.key.id.slot}};
  if (t.key.corner) id["corner"] = std::string(1, corner_letter(*t.key.corner));
  json verts = json::array();
  for (const Point& p : t.vertices) verts.push_back({format_real(p.x), format_real(p.y)});
  return {{"id", id}, {"vertices", verts}};
}

Tile tile_from(const json& j) {
  Tile t;
  const json& id = j.at("id");
  t.key.id = {id.at("strip").get<int>(), id.at("col").get<int>(), id.at("slot").get<int>()};
  if (id.contains("corner")) t.key.corner = parse_corner(id.at("corner").get<std::string>());
  for (const json& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 2) throw Error(ErrorKind::ParseError, "vertex must be [x, y]");
    t.vertices.push_back({parse_real(v[0].get<std::string>()), parse_real(v[1].get<std::string>())});
  }
  if (t.vertices.size() < 3) throw Error(ErrorKind::ParseError, "tile with fewer than 3 vertices");
  return t;
}

}  // namespace

std::string_view kind_name(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::Strip: return "strip";
    case DocumentKind::Plane: return "plane";
    case DocumentKind::Quad: return "quad";
  }
  return "unknown";
}

DocumentKind parse_kind(std::string_view name) {
  if (name == "strip") return DocumentKind::Strip;
  if (name == "plane") return DocumentKind::Plane;
  if (name == "quad") return DocumentKind::Quad;
  throw Error(ErrorKind::ParseError, "unknown document kind '" + std::string(name) + "'");
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ParseError, "not a finite real: '" + s + "'");
  }
  return v;
}

double real_parameter(const TilingDocument& doc, const std::string& key) {
  if (!doc.parameters.contains(key)) {
    throw Error(ErrorKind::ParseError, "missing parameter '" + key + "'");
  }
  const json& v = doc.parameters.at(key);
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw Error(ErrorKind::ParseError, "parameter '" + key + "' is not a real");
}

std::vector<double> real_list_parameter(const TilingDocument& doc, const std::string& key) {
  std::vector<double> out;
  if (!doc.parameters.contains(key)) {
    throw Error(ErrorKind::ParseError, "missing parameter '" + key + "'");
  }
  for (const json& v : doc.parameters.at(key)) out.push_back(parse_real(v.get<std::string>()));
  return out;
}

std::string serialize(const TilingDocument& doc) {
  std::string out;
  const json header = {{"format_version", doc.format_version},
                       {"kind", std::string(kind_name(doc.kind))},
                       {"parameters", doc.parameters}};
  out += header.dump();
  out += '\n';
  for (const Tile& t : doc.tiles) {
    out += tile_json(t).dump();
    out += '\n';
  }
  return out;
}

TilingDocument parse_document(std::string_view text) {
  TilingDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const json j = json::parse(line);
      if (!have_header) {
        doc.format_version = j.at("format_version").get<std::string>();
        if (doc.format_version != "1") {
          throw Error(ErrorKind::ParseError, "unsupported format_version " + doc.format_version);
        }
        doc.kind = parse_kind(j.at("kind").get<std::string>());
        doc.parameters = j.value("parameters", json::object());
        have_header = true;
      } else {
        doc.tiles.push_back(tile_from(j));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
  }
  if (!have_header) throw Error(ErrorKind::ParseError, "missing header line");
  return doc;
}

TilingDocument read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::vector<Triangle> triangles_of(const TilingDocument& doc) {
  std::vector<Triangle> out;
  out.reserve(doc.tiles.size());
  for (const Tile& t : doc.tiles) {
    if (t.vertices.size() != 3) {
      throw Error(ErrorKind::ParseError, "tile " + to_string(t.key) + " is not a triangle");
    }
    Triangle tri;
    tri.id = t.key.id;
    std::copy(t.vertices.begin(), t.vertices.end(), tri.v.begin());
    out.push_back(tri);
  }
  return out;
}

}  // namespace fairtile
