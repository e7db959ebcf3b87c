#pragma once

// End-to-end composition: optional upsampling, edge detection and
// refinement, fragment extraction and per-fragment spectral filtering,
// with a stable text report and optional stage dumps.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dealias/edge_refiner.hpp"
#include "dealias/fragmenter.hpp"
#include "dealias/image_io.hpp"
#include "dealias/metrics.hpp"
#include "dealias/spectral_filter.hpp"
#include "dealias/upsample.hpp"

namespace dealias {

enum class Upsampler { kCatmullRom, kBilinear, kNone };

inline const char* to_string(Upsampler u) {
  switch (u) {
    case Upsampler::kCatmullRom: return "catmull-rom";
    case Upsampler::kBilinear: return "bilinear";
    case Upsampler::kNone: return "none";
  }
  return "unknown";
}

struct PipelineConfig {
  int scale = 4;  // U
  // kNone means the input is already upsampled by `scale`.
  Upsampler upsampler = Upsampler::kCatmullRom;
  double gradient_norm = kSobelNorm;
  PeakinessConfig peakiness;
  CleaningConfig cleaning;
  double s_d = 0.4;
  FilterParams filter;
  std::optional<std::filesystem::path> dump_dir;

  FragmentConfig fragment_config() const { return {s_d, scale}; }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw Error(ErrorKind::kInvalidArgument, std::string(name) + " must be positive");
    };
    if (scale < 2) throw Error(ErrorKind::kInvalidArgument, "scale must be >= 2");
    positive(gradient_norm, "gradient norm");
    positive(peakiness.angles, "N");
    positive(peakiness.passes, "p_max");
    positive(peakiness.e_min, "e_min");
    positive(peakiness.d_base, "d base");
    positive(peakiness.d_step, "d step");
    if (cleaning.l_min < 2) throw Error(ErrorKind::kInvalidArgument, "L_min must be >= 2");
    positive(cleaning.l1, "l1");
    positive(cleaning.l2, "l2");
    positive(cleaning.n_w, "N_w");
    positive(s_d, "s_d");
    positive(filter.s_l, "s_l");
    positive(filter.s_u, "s_u");
    positive(filter.w_s, "w_s");
    positive(filter.m_s, "m_s");
  }
};

struct EdgeStages {
  GradientMap gradient;
  PeakinessMap peakiness;
  EdgeMask detected;   // thresholded
  EdgeMask thinned;
  EdgeMask cleaned;    // short branches and protruding pixels removed
  WavingResult waving;  // waving.mask is the final edge map

  const EdgeMask& edges() const { return waving.mask; }
};

inline EdgeStages detect_edges(const Image& upsampled, const PipelineConfig& cfg) {
  EdgeStages s;
  s.gradient = sobel_gradient(upsampled, cfg.gradient_norm);
  s.peakiness = accumulate_peakiness(s.gradient, cfg.peakiness);
  s.detected = threshold_edges(s.peakiness, cfg.peakiness.e_min);
  s.thinned = thin(s.detected);
  s.cleaned = remove_protruding_pixels(clean_short_branches(s.thinned, cfg.cleaning.l_min));
  s.waving = reduce_waving_detailed(s.cleaned, cfg.cleaning);
  return s;
}

struct FragmentRecord {
  Fragment fragment;
  std::optional<double> l0;
  FragmentFilterResult filter;
};

struct PipelineResult {
  Image upsampled;
  Image output;
  EdgeStages edges;
  std::vector<Chain> chains;
  std::vector<FragmentRecord> fragments;
};

inline Image upsample(const Image& input, Upsampler method, int scale) {
  switch (method) {
    case Upsampler::kCatmullRom: return upsample_catmull_rom(input, ScaleFactor(scale));
    case Upsampler::kBilinear: return upsample_bilinear(input, ScaleFactor(scale));
    case Upsampler::kNone: return input;
  }
  return input;
}

inline PipelineResult run_pipeline(const Image& input, const PipelineConfig& cfg) {
  cfg.validate();
  PipelineResult r;
  r.upsampled = upsample(input, cfg.upsampler, cfg.scale);
  r.edges = detect_edges(r.upsampled, cfg);
  r.chains = trace_chains(r.edges.edges());

  std::ofstream spectra;
  if (cfg.dump_dir) {
    std::filesystem::create_directories(*cfg.dump_dir);
    spectra.open(*cfg.dump_dir / "spectra.txt");
    if (!spectra) throw Error(ErrorKind::kIo, "cannot write stage dumps to " + cfg.dump_dir->string());
  }

  r.output = r.upsampled;
  const FragmentConfig fcfg = cfg.fragment_config();
  for (const Fragment& f : extract_fragments(r.chains, fcfg)) {
    FragmentRecord rec;
    rec.fragment = f;
    if (f.first() != f.last()) rec.l0 = estimate_period(f, cfg.scale);
    rec.filter = filter_fragment(r.output, f, rec.l0, cfg.filter,
                                 cfg.dump_dir ? &spectra : nullptr, r.fragments.size());
    r.fragments.push_back(std::move(rec));
  }

  if (cfg.dump_dir) {
    const auto& dir = *cfg.dump_dir;
    save_mask(r.edges.detected, dir / "edges_detected.pgm");
    save_mask(r.edges.thinned, dir / "edges_thinned.pgm");
    save_mask(r.edges.edges(), dir / "edges.pgm");
    std::ofstream frag(dir / "fragments.txt");
    for (std::size_t i = 0; i < r.fragments.size(); ++i)
      write_fragment_record(frag, i, r.fragments[i].fragment, r.fragments[i].l0);
    std::ofstream junctions(dir / "junctions.txt");
    write_junction_dump(junctions, r.edges.waving.junctions);
    save_image(r.upsampled, dir / (r.upsampled.bands() == 1 ? "upsampled.pgm" : "upsampled.ppm"));
    if (!frag || !junctions) throw Error(ErrorKind::kIo, "failed writing stage dumps");
  }
  return r;
}

// key=value lines; one `fragment` line per fragment.
inline void write_report(std::ostream& out, const PipelineResult& r, const PipelineConfig& cfg) {
  std::size_t filtered = 0;
  for (const auto& f : r.fragments) filtered += f.filter.status == SkipReason::kNone;
  out << "width=" << r.output.width() << "\n"
      << "height=" << r.output.height() << "\n"
      << "bands=" << r.output.bands() << "\n"
      << "scale=" << cfg.scale << "\n"
      << "upsampler=" << to_string(cfg.upsampler) << "\n"
      << "edge_pixels=" << count_edges(r.edges.edges()) << "\n"
      << "junctions=" << r.edges.waving.junctions.size() << "\n"
      << "waving_sweeps=" << r.edges.waving.sweeps << "\n"
      << "chains=" << r.chains.size() << "\n"
      << "fragments=" << r.fragments.size() << "\n"
      << "filtered_fragments=" << filtered << "\n"
      << "skipped_fragments=" << r.fragments.size() - filtered << "\n";
  char buf[320];
  for (std::size_t i = 0; i < r.fragments.size(); ++i) {
    const FragmentRecord& rec = r.fragments[i];
    char period[32] = "undefined";
    if (rec.l0) std::snprintf(period, sizeof period, "%.6f", *rec.l0);
    std::snprintf(buf, sizeof buf,
                  "fragment id=%zu orientation=%s x0=%d y0=%d x1=%d y1=%d n_b=%d l0=%s s_f=%d "
                  "offsets=%zu status=%s\n",
                  i, to_string(rec.fragment.orientation), rec.fragment.first().x,
                  rec.fragment.first().y, rec.fragment.last().x, rec.fragment.last().y,
                  rec.fragment.size(), period, rec.filter.strength, rec.filter.offsets.size(),
                  to_string(rec.filter.status));
    out << buf;
  }
}

inline nlohmann::json report_json(const PipelineResult& r, const PipelineConfig& cfg) {
  nlohmann::json j;
  j["width"] = r.output.width();
  j["height"] = r.output.height();
  j["bands"] = r.output.bands();
  j["scale"] = cfg.scale;
  j["upsampler"] = to_string(cfg.upsampler);
  j["edge_pixels"] = count_edges(r.edges.edges());
  j["waving_sweeps"] = r.edges.waving.sweeps;
  j["chains"] = r.chains.size();
  auto& frags = j["fragments"] = nlohmann::json::array();
  for (const auto& rec : r.fragments) {
    nlohmann::json f;
    f["orientation"] = to_string(rec.fragment.orientation);
    f["first"] = {rec.fragment.first().x, rec.fragment.first().y};
    f["last"] = {rec.fragment.last().x, rec.fragment.last().y};
    f["n_b"] = rec.fragment.size();
    f["l0"] = rec.l0 ? nlohmann::json(*rec.l0) : nlohmann::json(nullptr);
    f["s_f"] = rec.filter.strength;
    f["offsets"] = rec.filter.offsets;
    f["status"] = to_string(rec.filter.status);
    frags.push_back(std::move(f));
  }
  return j;
}

inline std::string report_text(const PipelineResult& r, const PipelineConfig& cfg) {
  std::ostringstream os;
  write_report(os, r, cfg);
  return os.str();
}

}  // namespace dealias
