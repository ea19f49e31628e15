#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fairtile/geometry.hpp"
#include "fairtile/verify.hpp"

namespace fairtile {

enum class DocumentKind { Strip, Plane, Quad };

std::string_view kind_name(DocumentKind kind);
DocumentKind parse_kind(std::string_view name);

// JSON Lines: one header object, then one object per tile. Reals are written
// as 17-significant-digit decimal strings so binary64 values round-trip.
struct TilingDocument {
  std::string format_version = "1";
  DocumentKind kind = DocumentKind::Plane;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Tile> tiles;
};

std::string format_real(double v);
double parse_real(const std::string& s);

// Helpers for reals stored in the parameters object.
double real_parameter(const TilingDocument& doc, const std::string& key);
std::vector<double> real_list_parameter(const TilingDocument& doc, const std::string& key);

std::string serialize(const TilingDocument& doc);
TilingDocument parse_document(std::string_view text);

TilingDocument read_document(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

std::vector<Triangle> triangles_of(const TilingDocument& doc);

}  // namespace fairtile
