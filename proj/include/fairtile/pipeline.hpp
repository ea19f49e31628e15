#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairtile/assembly.hpp"
#include "fairtile/document.hpp"
#include "fairtile/verify.hpp"

namespace fairtile {

struct StripRequest {
  std::optional<double> y0;  // empty: sample as for the plane
  std::uint64_t seed = 0;
  int cols = 6;
  double epsilon = 0.005;
};

struct StripRun {
  TilingDocument document;
  StripTiling strip;
  int attempts = 0;
};

StripRun generate_strip(const StripRequest& req);

struct PlaneRequest {
  double epsilon = 0.005;
  std::uint64_t seed = 0;
  int rows = 6;
  int cols = 20;
};

struct PlaneRun {
  TilingDocument document;
  PlaneTiling plane;
  BaseSelection base;
  std::vector<VerificationReport> reports;
  bool passed = false;
};

// Samples y0, scales, selects shears, stacks rows and runs every plane check.
PlaneRun generate_plane(const PlaneRequest& req);

struct QuadRun {
  TilingDocument document;
  std::vector<VerificationReport> reports;
  bool passed = false;
};

// Splits every triangle of a plane document. Throws InvalidParameter when the
// input contains an equilateral triangle.
QuadRun quadify_document(const TilingDocument& plane);

std::vector<std::string> default_checks(DocumentKind kind);
std::vector<std::string> known_checks();

// Runs the named checks against a document. Unknown names throw InvalidParameter.
std::vector<VerificationReport> verify_document(const TilingDocument& doc,
                                                const std::vector<std::string>& checks);

nlohmann::json report_json(const VerificationReport& r);
std::string report_line(const VerificationReport& r);

}  // namespace fairtile
