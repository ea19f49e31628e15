#include "fairtile/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fairtile/error.hpp"
#include "fairtile/quadsplit.hpp"

namespace fairtile {

namespace {

using nlohmann::json;

constexpr double kAreaTol = 1e-10;
constexpr double kQuadTol = 1e-9;
constexpr double kVertexTol = 1e-9;
constexpr double kQuantum = 1e-9;
constexpr double kQuadScale = 0.5;
constexpr int kDeviationTerms = 100'000;

json real_list(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(format_real(x));
  return out;
}

double area_target(const TilingDocument& doc) {
  if (doc.parameters.contains("target_area")) return real_parameter(doc, "target_area");
  switch (doc.kind) {
    case DocumentKind::Strip: return 1.0;
    case DocumentKind::Plane: return std::sqrt(3.0);
    case DocumentKind::Quad: return std::sqrt(3.0) / 3.0;
  }
  return 1.0;
}

double area_tol(const TilingDocument& doc) {
  return doc.kind == DocumentKind::Quad ? kQuadTol : kAreaTol;
}

}  // namespace

StripRun generate_strip(const StripRequest& req) {
  StripRun run;
  json params = {{"cols", req.cols}};
  if (req.y0) {
    run.strip = strip_tiling(*req.y0, req.cols);
    params["y0_mode"] = "fixed";
  } else {
    const BaseSelection sel = select_base_strip(req.epsilon, req.seed, req.cols);
    run.strip = sel.strip;
    run.attempts = sel.attempts;
    params["y0_mode"] = "auto";
    params["seed"] = req.seed;
    params["epsilon"] = format_real(req.epsilon);
    params["y0_attempts"] = sel.attempts;
  }
  params["y0"] = format_real(run.strip.y0());
  run.document.kind = DocumentKind::Strip;
  run.document.parameters = params;
  run.document.tiles = to_tiles(strip_window(run.strip, req.cols));
  return run;
}

PlaneRun generate_plane(const PlaneRequest& req) {
  if (!(req.epsilon > 0.0) || req.rows < 1 || req.cols < 1) {
    throw Error(ErrorKind::InvalidParameter, "epsilon, rows and cols must be positive");
  }
  PlaneRun run;
  run.base = select_base_strip(req.epsilon, req.seed, req.cols);
  const StripTiling scaled = scale_to_equilateral(run.base.strip);
  const RowRange rows = centered_rows(req.rows);
  const auto shears = select_shears(scaled, req.rows, req.epsilon, req.seed, req.cols);
  run.plane = stack_plane(scaled, shears, rows, req.cols, req.epsilon);
  const auto tris = window_cols(run.plane, req.cols);

  run.document.kind = DocumentKind::Plane;
  run.document.parameters = {
      {"epsilon", format_real(req.epsilon)},
      {"seed", req.seed},
      {"rows", {rows.lo, rows.hi}},
      {"cols", req.cols},
      {"y0", format_real(run.base.y0)},
      {"y0_attempts", run.base.attempts},
      {"shears", real_list(shears)},
      {"delta_q", format_real(0.02)},
  };
  run.document.tiles = to_tiles(tris);

  run.reports = verify_document(run.document, default_checks(DocumentKind::Plane));
  // Same numbers as the document-level closeness, plus the drift decomposition.
  const ClosenessReport close = check_closeness(run.plane, tris, req.epsilon);
  for (auto& r : run.reports) {
    if (r.check_name == "closeness") r = close.as_report();
  }
  run.passed = std::all_of(run.reports.begin(), run.reports.end(),
                           [](const VerificationReport& r) { return r.passed; });
  return run;
}

QuadRun quadify_document(const TilingDocument& plane) {
  if (plane.kind != DocumentKind::Plane) {
    throw Error(ErrorKind::InvalidParameter, "quadify expects a plane document");
  }
  const auto equi = check_non_equilateral(plane.tiles, kQuantum);
  if (!equi.passed) {
    throw Error(ErrorKind::InvalidParameter,
                "input contains an equilateral triangle " + to_string(equi.offenders[0].first),
                equi.offenders[0].first.id);
  }
  const auto tris = triangles_of(plane);
  const auto quads = quadify_plane(tris, kQuadScale);

  QuadRun run;
  run.document.kind = DocumentKind::Quad;
  run.document.parameters = plane.parameters;
  run.document.parameters["scale"] = format_real(kQuadScale);
  run.document.parameters["target_area"] = format_real(area_target(plane) / 3.0);
  run.document.parameters["target_perimeter"] = format_real(FairConstants::p0() / kQuadScale);
  run.document.tiles = to_tiles(quads);
  run.reports = verify_document(run.document, default_checks(DocumentKind::Quad));
  run.passed = std::all_of(run.reports.begin(), run.reports.end(),
                           [](const VerificationReport& r) { return r.passed; });
  return run;
}

std::vector<std::string> default_checks(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::Strip: return {"area", "vertex_to_vertex"};
    case DocumentKind::Plane:
      return {"area", "vertex_to_vertex", "incongruent", "equilateral", "closeness", "shear_budget"};
    case DocumentKind::Quad: return {"area", "perimeter", "convex", "incongruent"};
  }
  return {};
}

std::vector<std::string> known_checks() {
  return {"area",       "perimeter", "vertex_to_vertex", "incongruent", "equilateral",
          "closeness",  "shear_budget", "convex",        "lemma4",      "vertical_width"};
}

std::vector<VerificationReport> verify_document(const TilingDocument& doc,
                                                const std::vector<std::string>& checks) {
  std::vector<VerificationReport> out;
  for (const std::string& name : checks) {
    if (name == "area") {
      out.push_back(check_equal_area(doc.tiles, area_target(doc), area_tol(doc)));
    } else if (name == "perimeter") {
      const double target = doc.parameters.contains("target_perimeter")
                                ? real_parameter(doc, "target_perimeter")
                                : FairConstants::p0();
      out.push_back(check_equal_perimeter(doc.tiles, target, kQuadTol));
    } else if (name == "vertex_to_vertex") {
      out.push_back(check_vertex_to_vertex(doc.tiles, kVertexTol));
    } else if (name == "incongruent") {
      out.push_back(check_pairwise_incongruent(doc.tiles, kQuantum));
    } else if (name == "equilateral") {
      out.push_back(check_non_equilateral(doc.tiles, kQuantum));
    } else if (name == "closeness") {
      out.push_back(check_closeness(doc.tiles, real_parameter(doc, "epsilon")).as_report());
    } else if (name == "shear_budget") {
      out.push_back(
          check_shear_budget(real_list_parameter(doc, "shears"), real_parameter(doc, "epsilon")));
    } else if (name == "convex") {
      out.push_back(check_convexity(doc.tiles));
    } else if (name == "lemma4") {
      const auto rep = check_lemma4(deviations(strip_tiling(real_parameter(doc, "y0"), kDeviationTerms)));
      out.insert(out.end(), rep.parts.begin(), rep.parts.end());
    } else if (name == "vertical_width") {
      const int cols = doc.parameters.value("cols", 1);
      out.push_back(check_vertical_widths(strip_tiling(real_parameter(doc, "y0"), cols), cols));
    } else {
      throw Error(ErrorKind::InvalidParameter, "unknown check '" + name + "'");
    }
  }
  return out;
}

json report_json(const VerificationReport& r) {
  json offenders = json::array();
  for (const Offender& o : r.offenders) {
    json entry = {{"first", to_string(o.first)}};
    if (o.second) entry["second"] = to_string(*o.second);
    offenders.push_back(entry);
  }
  const auto real = [](double v) { return std::isfinite(v) ? json(v) : json(format_real(v)); };
  return {{"check_name", r.check_name},
          {"passed", r.passed},
          {"worst_residual", real(r.worst_residual)},
          {"margin", real(r.margin)},
          {"offenders", offenders},
          {"offender_count", r.offender_count},
          {"tiles_checked", r.tiles_checked},
          {"tolerance_used", real(r.tolerance_used)},
          {"detail", r.detail}};
}

std::string report_line(const VerificationReport& r) {
  std::ostringstream s;
  s.precision(6);
  s << (r.passed ? "PASS " : "FAIL ") << r.check_name << ": tiles=" << r.tiles_checked
    << " worst=" << r.worst_residual << " margin=" << r.margin << " tol=" << r.tolerance_used;
  if (!r.detail.empty()) s << " (" << r.detail << ")";
  if (r.offender_count > 0) {
    s << " offenders=" << r.offender_count << ":";
    for (const Offender& o : r.offenders) {
      s << " " << to_string(o.first);
      if (o.second) s << "~" << to_string(*o.second);
    }
  }
  return s.str();
}

}  // namespace fairtile
