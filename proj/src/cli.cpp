#include "fairtile/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "fairtile/error.hpp"
#include "fairtile/pipeline.hpp"
#include "fairtile/render.hpp"

namespace fairtile::cli {

namespace {

// Raised for bad flag values that CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

void print_reports(const std::vector<VerificationReport>& reports, std::ostream& os) {
  for (const auto& r : reports) os << report_line(r) << '\n';
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

ViewBox parse_viewbox(const std::string& s) {
  ViewBox vb;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(s);
  if (!(in >> vb.x >> c1 >> vb.y >> c2 >> vb.width >> c3 >> vb.height) || c1 != ',' ||
      c2 != ',' || c3 != ',' || !(vb.width > 0.0 && vb.height > 0.0)) {
    throw UsageError("--viewbox expects x,y,width,height with positive extent");
  }
  return vb;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incongruent fair tilings: generation, quadrangulation, verification, rendering",
               "fairtile"};
  app.require_subcommand(1);

  std::string y0_text = "auto";
  std::uint64_t seed = 0;
  int cols = 6;
  double epsilon = 0.005;
  std::string out_path;
  auto* gen_strip = app.add_subcommand("gen-strip", "Distorted strip tiling");
  gen_strip->add_option("--y0", y0_text, "Apex height in (0,1), or 'auto'");
  gen_strip->add_option("--seed", seed, "Seed for --y0 auto");
  gen_strip->add_option("--cols", cols, "Columns |i| <= cols")->check(CLI::Range(1, 1'000'000));
  gen_strip->add_option("--epsilon", epsilon, "Closeness target for --y0 auto");
  gen_strip->add_option("--out", out_path, "Output document (default stdout)");

  int rows = 6;
  int plane_cols = 20;
  double plane_eps = 0.005;
  std::uint64_t plane_seed = 0;
  std::string plane_out;
  auto* gen_plane = app.add_subcommand("gen-plane", "Plane tiling by pairwise incongruent triangles");
  gen_plane->add_option("--epsilon", plane_eps, "Closeness target in (0, 0.05]")->required();
  gen_plane->add_option("--seed", plane_seed, "Random seed");
  gen_plane->add_option("--rows", rows, "Number of strip rows")->check(CLI::Range(1, 64));
  gen_plane->add_option("--cols", plane_cols, "Columns |i| <= cols")->check(CLI::Range(1, 2000));
  gen_plane->add_option("--out", plane_out, "Output document (default stdout)");

  std::string quad_in, quad_out;
  auto* quadify = app.add_subcommand("quadify", "Split every triangle into three quadrangles");
  quadify->add_option("--in", quad_in, "Plane document")->required();
  quadify->add_option("--out", quad_out, "Output document (default stdout)");

  std::string verify_in, verify_report;
  std::vector<std::string> verify_checks;
  auto* verify = app.add_subcommand("verify", "Run verification checks on a document");
  verify->add_option("--in", verify_in, "Document")->required();
  verify->add_option("--check", verify_checks, "Check name (repeatable)")
      ->check(CLI::IsMember(known_checks()));
  verify->add_option("--report", verify_report, "Write a JSON report here");

  std::string render_in, render_out, render_viewbox;
  RenderOptions ropts;
  auto* render = app.add_subcommand("render", "Render a document as SVG");
  render->add_option("--in", render_in, "Document")->required();
  render->add_option("--out", render_out, "SVG output (default stdout)");
  render->add_option("--stroke-width", ropts.stroke_width, "Stroke width in document units")
      ->check(CLI::PositiveNumber);
  render->add_option("--scale", ropts.scale, "Pixels per document unit")->check(CLI::PositiveNumber);
  render->add_flag("--labels", ropts.label_tiles, "Label tiles with their ids");
  render->add_option("--viewbox", render_viewbox, "x,y,width,height in document units");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen_strip) {
      StripRequest req;
      req.seed = seed;
      req.cols = cols;
      req.epsilon = epsilon;
      if (y0_text != "auto") {
        double y0 = 0.0;
        try {
          y0 = parse_real(y0_text);
        } catch (const Error&) {
          throw UsageError("--y0 must be a real number or 'auto'");
        }
        if (!(y0 > 0.0 && y0 < 1.0)) throw UsageError("--y0 must lie in (0,1)");
        req.y0 = y0;
      } else if (!(epsilon > 0.0)) {
        throw UsageError("--epsilon must be positive");
      }
      StripRun run;
      try {
        run = generate_strip(req);
      } catch (const Error& e) {
        err << "generation failed: " << e.what() << '\n';
        return kGenerationFailed;
      }
      emit(serialize(run.document), out_path, out);
      return kOk;
    }

    if (*gen_plane) {
      if (!(plane_eps > 0.0 && plane_eps <= 0.05)) throw UsageError("--epsilon must lie in (0, 0.05]");
      PlaneRun run;
      try {
        run = generate_plane({plane_eps, plane_seed, rows, plane_cols});
      } catch (const Error& e) {
        err << "generation failed: " << e.what() << '\n';
        return kGenerationFailed;
      }
      if (!run.passed) {
        print_reports(run.reports, err);
        return kGenerationFailed;
      }
      emit(serialize(run.document), plane_out, out);
      if (!plane_out.empty() && plane_out != "-") print_reports(run.reports, out);
      return kOk;
    }

    if (*quadify) {
      const TilingDocument in = read_document(quad_in);
      QuadRun run;
      try {
        run = quadify_document(in);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::IoError || e.kind() == ErrorKind::ParseError) throw;
        err << "quadify failed: " << e.what() << '\n';
        return kGenerationFailed;
      }
      if (!run.passed) {
        print_reports(run.reports, err);
        return kGenerationFailed;
      }
      emit(serialize(run.document), quad_out, out);
      if (!quad_out.empty() && quad_out != "-") print_reports(run.reports, out);
      return kOk;
    }

    if (*verify) {
      const TilingDocument doc = read_document(verify_in);
      const auto checks = verify_checks.empty() ? default_checks(doc.kind) : verify_checks;
      std::vector<VerificationReport> reports;
      try {
        reports = verify_document(doc, checks);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::IoError || e.kind() == ErrorKind::ParseError) throw;
        err << "verification could not run: " << e.what() << '\n';
        return kVerifyFailed;
      }
      print_reports(reports, out);
      if (!verify_report.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) j.push_back(report_json(r));
        write_text(verify_report, j.dump(2) + "\n");
      }
      return all_passed(reports) ? kOk : kVerifyFailed;
    }

    if (*render) {
      if (!render_viewbox.empty()) ropts.viewbox = parse_viewbox(render_viewbox);
      const TilingDocument doc = read_document(render_in);
      emit(render_svg(doc, ropts), render_out, out);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fairtile::cli
