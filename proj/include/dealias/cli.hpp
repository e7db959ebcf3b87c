#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 I/O error (missing, unreadable, malformed or unwritable files).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dealias/pipeline.hpp"
#include "dealias/synthetic.hpp"

namespace dealias {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

namespace detail {

inline void add_edge_flags(CLI::App* app, PipelineConfig& cfg) {
  app->add_option("--n-angles", cfg.peakiness.angles, "N, scan angles per quadrant")
      ->capture_default_str();
  app->add_option("--p-max", cfg.peakiness.passes, "number of peakiness passes")->capture_default_str();
  app->add_option("--e-min", cfg.peakiness.e_min, "peakiness threshold")->capture_default_str();
  app->add_option("--d-base", cfg.peakiness.d_base, "d_p = d_base + d_step * p")->capture_default_str();
  app->add_option("--d-step", cfg.peakiness.d_step)->capture_default_str();
  app->add_option("--r-offset", cfg.peakiness.r_offset, "r_p = p + r_offset")->capture_default_str();
  app->add_flag("--mirror-angles", cfg.peakiness.mirror_angles,
                "also scan angles in (-pi/2, 0)");
  app->add_option("--gradient-norm", cfg.gradient_norm, "Sobel magnitude divisor")
      ->capture_default_str();
  app->add_option("--l-min", cfg.cleaning.l_min, "shortest kept edge segment")->capture_default_str();
  app->add_option("--l1", cfg.cleaning.l1)->capture_default_str();
  app->add_option("--l2", cfg.cleaning.l2)->capture_default_str();
  app->add_option("--n-w", cfg.cleaning.n_w, "maximum waving sweeps")->capture_default_str();
}

inline void add_filter_flags(CLI::App* app, PipelineConfig& cfg) {
  add_edge_flags(app, cfg);
  app->add_option("--s-d", cfg.s_d, "fragment straightness, in units of U")->capture_default_str();
  app->add_option("--s-l", cfg.filter.s_l)->capture_default_str();
  app->add_option("--s-u", cfg.filter.s_u)->capture_default_str();
  app->add_option("--w-s", cfg.filter.w_s)->capture_default_str();
  app->add_option("--m-s", cfg.filter.m_s)->capture_default_str();
}

inline const std::map<std::string, Upsampler> kUpsamplers = {
    {"catmull-rom", Upsampler::kCatmullRom}, {"bilinear", Upsampler::kBilinear}};

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Edge-directed frequency filter for aliasing in upsampled images", "dealias"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string in_path, out_path, compare_path, report_json_path, method = "catmull-rom";
  std::string dump_dir;
  std::optional<int> scale, assume_scale;
  bool raw_edges = false;
  SyntheticSpec synth;
  std::string upsampled_out;

  auto* up = app.add_subcommand("upsample", "upsample an image by an integer factor");
  up->add_option("input", in_path)->required();
  up->add_option("output", out_path)->required();
  up->add_option("--scale", scale, "U")->required();
  up->add_option("--method", method)->transform(CLI::IsMember(detail::kUpsamplers))->capture_default_str();

  auto* edges = app.add_subcommand("edges", "write the edge map of an already upsampled image");
  edges->add_option("input", in_path)->required();
  edges->add_option("output", out_path, "PGM edge map (255 = edge)")->required();
  edges->add_flag("--raw", raw_edges, "stop after thinning (no cleanup or waving reduction)");
  detail::add_edge_flags(edges, cfg);

  auto* filter = app.add_subcommand("filter", "filter an image upsampled elsewhere");
  filter->add_option("input", in_path)->required();
  filter->add_option("output", out_path)->required();
  filter->add_option("--assume-scale", assume_scale, "U of the upsampled input")->required();

  auto* pipeline = app.add_subcommand("pipeline", "upsample (optionally) and filter");
  pipeline->add_option("input", in_path)->required();
  pipeline->add_option("output", out_path)->required();
  auto* scale_opt = pipeline->add_option("--scale", scale, "upsample by U before filtering");
  auto* assume_opt =
      pipeline->add_option("--assume-scale", assume_scale, "input is already upsampled by U");
  scale_opt->excludes(assume_opt);
  pipeline->add_option("--upsampler", method)->transform(CLI::IsMember(detail::kUpsamplers))->capture_default_str();

  for (CLI::App* sub : {filter, pipeline}) {
    detail::add_filter_flags(sub, cfg);
    sub->add_option("--dump-dir", dump_dir, "write stage artifacts here");
    sub->add_option("--report-json", report_json_path, "also write the report as JSON");
  }

  auto* syn = app.add_subcommand("synth", "render a synthetic aliased edge");
  syn->add_option("output", out_path)->required();
  syn->add_option("--width", synth.width)->capture_default_str();
  syn->add_option("--height", synth.height)->capture_default_str();
  syn->add_option("--slope-dx", synth.slope_dx)->capture_default_str();
  syn->add_option("--slope-dy", synth.slope_dy)->capture_default_str();
  syn->add_option("--gamma", synth.gamma)->capture_default_str();
  syn->add_option("--unsharp", synth.unsharp)->capture_default_str();
  syn->add_option("--softness", synth.softness)->capture_default_str();
  syn->add_option("--scale", scale, "also upsample with Catmull-Rom by U");
  syn->add_option("--upsampled-out", upsampled_out, "path for the upsampled image");

  auto* measure = app.add_subcommand("measure", "aliasing energy per filterable fragment");
  measure->add_option("input", in_path, "unfiltered upsampled image (defines fragments)")->required();
  measure->add_option("--compare", compare_path, "filtered image measured on the same fragments");
  measure->add_option("--assume-scale", assume_scale)->required();
  detail::add_filter_flags(measure, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.upsampler = detail::kUpsamplers.at(method);
    if (!dump_dir.empty()) cfg.dump_dir = dump_dir;

    if (up->parsed()) {
      save_image(upsample(load_image(in_path), cfg.upsampler, *scale), out_path);
      return kExitOk;
    }

    if (edges->parsed()) {
      cfg.validate();
      const Image image = load_image(in_path);
      const EdgeStages s = detect_edges(image, cfg);
      save_mask(raw_edges ? s.thinned : s.edges(), out_path);
      out << "edge_pixels=" << count_edges(raw_edges ? s.thinned : s.edges()) << "\n";
      return kExitOk;
    }

    if (filter->parsed() || pipeline->parsed()) {
      if (assume_scale) {
        cfg.scale = *assume_scale;
        cfg.upsampler = Upsampler::kNone;
      } else if (scale) {
        cfg.scale = *scale;
      } else {
        err << "error: pipeline needs --scale or --assume-scale\n";
        return kExitUsage;
      }
      const PipelineResult r = run_pipeline(load_image(in_path), cfg);
      save_image(r.output, out_path);
      const std::string report = report_text(r, cfg);
      out << report;
      if (cfg.dump_dir) detail::write_text_file(*cfg.dump_dir / "report.txt", report);
      if (!report_json_path.empty())
        detail::write_text_file(report_json_path, report_json(r, cfg).dump(2) + "\n");
      return kExitOk;
    }

    if (syn->parsed()) {
      const SyntheticImage s = generate_synthetic(synth);
      save_image(s.image, out_path);
      if (scale) {
        if (upsampled_out.empty()) {
          err << "error: --scale needs --upsampled-out\n";
          return kExitUsage;
        }
        save_image(upsample_catmull_rom(s.image, ScaleFactor(*scale)), upsampled_out);
      }
      return kExitOk;
    }

    if (measure->parsed()) {
      cfg.scale = *assume_scale;
      cfg.validate();
      const Image reference = load_image(in_path);
      std::optional<Image> compared;
      if (!compare_path.empty()) {
        compared = load_image(compare_path);
        if (compared->width() != reference.width() || compared->height() != reference.height() ||
            compared->bands() != reference.bands())
          throw Error(ErrorKind::kInvalidArgument, "compared image has a different shape");
      }
      const EdgeStages s = detect_edges(reference, cfg);
      char buf[256];
      std::size_t id = 0, measured = 0;
      double sum_before = 0.0, sum_after = 0.0;
      for (const Fragment& f : extract_fragments(trace_chains(s.edges()), cfg.fragment_config())) {
        const std::size_t this_id = id++;
        const std::optional<double> l0 =
            f.first() != f.last() ? estimate_period(f, cfg.scale) : std::nullopt;
        if (skip_reason(f, l0, cfg.filter) != SkipReason::kNone) continue;
        const double before = aliasing_energy(reference, f, *l0);
        sum_before += before;
        if (compared) {
          const double after = aliasing_energy(*compared, f, *l0);
          sum_after += after;
          std::snprintf(buf, sizeof buf, "fragment id=%zu n_b=%d l0=%.6f energy=%.6f compare=%.6f\n",
                        this_id, f.size(), *l0, before, after);
        } else {
          std::snprintf(buf, sizeof buf, "fragment id=%zu n_b=%d l0=%.6f energy=%.6f\n", this_id,
                        f.size(), *l0, before);
        }
        out << buf;
        ++measured;
      }
      out << "measured_fragments=" << measured << "\n";
      if (measured > 0) {
        out << "mean_energy=" << sum_before / measured << "\n";
        if (compared) out << "mean_compare=" << sum_after / measured << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kInvalidArgument ? kExitUsage : kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace dealias
