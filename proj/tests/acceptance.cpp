// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dealias/dealias.hpp"
#include "staircase.hpp"
#include "test_util.hpp"

using namespace dealias;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// First failure wins; later checks only add context when everything passed.
void check(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome padding_geometry() {
  Outcome o;
  std::vector<double> b(27);
  for (int i = 0; i < 27; ++i) b[i] = std::fmod(0.37 * i * i, 1.0);
  const PaddedSignal s = pad_signal(b);
  check(o, s.n_c == 64 && s.m_c == 18 && s.e_c == 44, "N_C/m_C/e_C mismatch");
  for (int i = 0; i < 27; ++i) check(o, s.values[18 + i] == b[i], "C[18..44] != B");
  if (o.pass) o.detail = "N_C=64 m_C=18 e_C=44, C[18..44]==B";
  return o;
}

Outcome schedule() {
  Outcome o;
  const PeakinessConfig cfg;
  const int r[] = {3, 4, 5};
  const double d[] = {0.020, 0.025, 0.030};
  for (int p = 1; p <= 3; ++p) {
    const PeakinessPass pass = cfg.pass(p);
    check(o, pass.radius == r[p - 1], "radius mismatch");
    check(o, std::abs(pass.min_rise - d[p - 1]) <= 1e-12, "rise mismatch");
  }
  if (o.pass) o.detail = "(3,0.020) (4,0.025) (5,0.030)";
  return o;
}

Outcome junction_oracle() {
  Outcome o;
  for (int s1 = 1; s1 <= 50; ++s1)
    for (int s2 = 1; s2 <= 50; ++s2) {
      const int direct = std::min(std::max(s1, s2), 3 * std::min(s1, s2) + 1);
      check(o, junction_move_limit(s1, s2, 3, 1) == direct, "l_max mismatch");
    }

  std::mt19937_64 rng(3);
  const CleaningConfig cfg;  // N_w = 50
  std::size_t checked = 0, stairs = 0;
  int max_sweeps = 0;
  for (int trial = 0; trial < 40 && o.pass; ++trial) {
    const bool vertical = trial % 2;
    const int max_pixels = trial < 4 ? 10'000 : 200 + 97 * trial;
    // Long staircases use longer runs to keep the mask (pixels x runs) small.
    const int max_run = trial < 4 ? 8 + trial : 1 + trial % 12;
    const auto st = testing::random_staircase(rng, max_pixels, max_run, vertical);
    const int minor = static_cast<int>(st.runs.size()) + 3;
    const int major = static_cast<int>(st.pixels.size()) + 3;
    const EdgeMask m = testing::mask_from_pixels(vertical ? minor : major, vertical ? major : minor,
                                                 st.pixels);
    const WavingResult r = reduce_waving_detailed(m, cfg);
    ++stairs;
    max_sweeps = std::max(max_sweeps, r.sweeps);
    check(o, r.sweeps <= cfg.n_w, "sweep budget exceeded");
    check(o, count_edges(r.mask) == st.pixels.size(), "pixel count changed");
    const auto chains = trace_chains(r.mask);
    check(o, chains.size() == 1, "staircase split");
    if (chains.size() != 1) break;
    const std::set<PixelCoord> ends = {chains[0].pixels.front(), chains[0].pixels.back()};
    check(o, ends == std::set<PixelCoord>{st.pixels.front(), st.pixels.back()}, "endpoints moved");
    const bool budget_out = r.sweeps == cfg.n_w;
    for (const Junction& j : r.junctions) {
      if (!j.movable()) continue;
      ++checked;
      check(o, std::abs(j.s1 - j.s2) <= 1 || j.moved == j.l_max || budget_out,
            "unbalanced movable junction s1=" + std::to_string(j.s1) + " s2=" +
                std::to_string(j.s2) + " moved=" + std::to_string(j.moved) +
                " l_max=" + std::to_string(j.l_max));
    }
  }
  if (o.pass)
    o.detail = "2500 limits, " + std::to_string(stairs) + " staircases, " + std::to_string(checked) +
               " movable junctions, max sweeps " + std::to_string(max_sweeps);
  return o;
}

std::vector<Complex> direct_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t f = 0; f < n; ++f) {
    Complex acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((f * k) % n) / n;
      acc += x[k] * Complex(std::cos(ang), std::sin(ang));
    }
    out[f] = acc;
  }
  return out;
}

Outcome fft_correctness() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> log_len(3, 10);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0, worst_rt = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(std::size_t{1} << log_len(rng));
    for (double& v : x) v = u(rng);
    const Spectrum s = fft(x);
    const auto ref = direct_dft(x);
    for (std::size_t f = 0; f < x.size(); ++f) worst = std::max(worst, std::abs(s[f] - ref[f]));
    const auto back = ifft(s);
    for (std::size_t i = 0; i < x.size(); ++i) worst_rt = std::max(worst_rt, std::abs(back[i] - x[i]));
  }
  check(o, worst <= 1e-9, fmt("forward error %.3g", worst));
  check(o, worst_rt <= 1e-9, fmt("round-trip error %.3g", worst_rt));
  if (o.pass) o.detail = fmt("max forward err %.2g, round trip %.2g", worst, worst_rt);
  return o;
}

Outcome flattening_contract() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> log_len(3, 9);
  std::uniform_real_distribution<double> u(0, 1), period(2.0, 40.0);
  double worst_imag = 0, worst_mask = 0;
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    const int n = 1 << log_len(rng);
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    const Spectrum s = fft(x);
    // Half the trials use an l0 that puts f0 exactly on a bin.
    const double l0 = trial % 2 ? period(rng) : static_cast<double>(n) / (1 + trial % (n / 2));
    const double f0 = n / l0;
    const auto mask = spectral_mask(n, l0, 0.03);
    const double m = weighted_mean(s, f0, 3.0);
    const Spectrum out = flatten_peak(s, m, mask);
    for (int f = 0; f < n; ++f) {
      const double a = std::abs(s[f]), b = std::abs(out[f]);
      if (a > m) {
        check(o, std::min(a, m) - 1e-12 <= b && b <= a + 1e-12, "magnitude outside [m, |F|]");
        check(o, std::abs(std::arg(out[f] * std::conj(s[f]))) <= 1e-9, "phase changed");
      } else {
        check(o, out[f] == s[f], "bin at or below m changed");
      }
    }
    for (const Complex& c : ifft_complex(out)) worst_imag = std::max(worst_imag, std::abs(c.imag()));
    if (trial % 2 == 0) worst_mask = std::max(worst_mask, std::abs(mask_function(f0, l0, n, 0.03)));
  }
  check(o, worst_imag <= 1e-9, fmt("inverse not real: %.3g", worst_imag));
  check(o, worst_mask <= 1e-15, fmt("M(f0) = %.3g", worst_mask));
  if (o.pass) o.detail = fmt("max |imag| %.2g, max |M(f0)| %.2g", worst_imag, worst_mask);
  return o;
}

Outcome period_and_strength() {
  Outcome o;
  std::size_t n = 0;
  for (int U : {2, 3, 4, 8})
    for (int dx = -20; dx <= 20; ++dx)
      for (int dy = -20; dy <= 20; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const PixelCoord a{5, 7}, b{5 + dx, 7 + dy};
        std::optional<double> direct;
        const double ax = std::abs(dx), ay = std::abs(dy);
        if (ax >= ay && ay > 0) direct = U * ax / ay;
        else if (ay > ax && ax > 0) direct = U * ay / ax;
        const auto got = estimate_period(a, b, U);
        check(o, got.has_value() == direct.has_value(), "definedness mismatch");
        if (got && direct) check(o, std::abs(*got - *direct) <= 1e-12 * *direct, "l0 mismatch");
        ++n;
      }
  const FilterParams p;
  for (int n_b = 1; n_b <= 200; ++n_b)
    for (double l0 : {2.0, 3.5, 4.0, 8.0, 15.75, 16.0, 33.0, 50.0, 100.0}) {
      const int direct = n_b < 2.0 * l0 ? 0 : static_cast<int>(std::floor(0.25 * n_b));
      check(o, filter_strength(n_b, l0, p) == direct, "S_f mismatch");
      ++n;
    }
  if (o.pass) o.detail = std::to_string(n) + " cases";
  return o;
}

SyntheticSpec ac_fixture() {
  SyntheticSpec spec;
  spec.width = spec.height = 64;
  spec.slope_dx = 4;
  spec.slope_dy = 1;
  spec.gamma = 2.2;
  return spec;
}

PipelineResult run_fixture(const SyntheticSpec& spec) {
  PipelineConfig cfg;
  cfg.scale = 4;
  cfg.upsampler = Upsampler::kCatmullRom;
  return run_pipeline(generate_synthetic(spec).image, cfg);
}

Outcome end_to_end() {
  Outcome o;
  const PipelineResult r = run_fixture(ac_fixture());
  const FragmentRecord* best = nullptr;
  double best_reduction = -1, before = 0, after = 0;
  for (const auto& rec : r.fragments) {
    if (!rec.l0 || *rec.l0 < 14.0 || *rec.l0 > 18.0) continue;
    if (rec.filter.status != SkipReason::kNone) continue;
    const double b = aliasing_energy(r.upsampled, rec.fragment, rec.l0);
    const double a = aliasing_energy(r.output, rec.fragment, rec.l0);
    const double red = b > 0 ? 1.0 - a / b : 0.0;
    if (red > best_reduction) {
      best_reduction = red;
      best = &rec;
      before = b;
      after = a;
    }
  }
  check(o, best != nullptr, "no filtered fragment with l0 in [14, 18]");
  if (!best) return o;
  check(o, best_reduction >= 0.5, fmt("reduction %.1f%% < 50%%", 100 * best_reduction));
  o.detail = fmt("l0=%.3f energy %.4f -> %.4f", *best->l0, before, after) +
             fmt(" (%.1f%% reduction)", 100 * best_reduction);
  return o;
}

Outcome locality() {
  Outcome o;
  const PipelineResult r = run_fixture(ac_fixture());
  std::set<PixelCoord> region;
  for (const auto& rec : r.fragments)
    for (int i : rec.filter.offsets) {
      const auto pixels = offset_pixels(r.upsampled, rec.fragment, i);
      region.insert(pixels->begin(), pixels->end());
    }
  std::size_t outside = 0;
  for (int b = 0; b < r.output.bands(); ++b)
    for (int y = 0; y < r.output.height(); ++y)
      for (int x = 0; x < r.output.width(); ++x) {
        if (region.count({x, y})) continue;
        ++outside;
        check(o, r.output.at(b, x, y) == r.upsampled.at(b, x, y), "pixel outside regions changed");
      }

  SyntheticSpec smooth = ac_fixture();
  smooth.gamma = 1.0;
  smooth.softness = 1.0;
  const PipelineResult s = run_fixture(smooth);
  const double mad = mean_abs_difference(s.output, s.upsampled);
  check(o, mad <= 1.0 / 255.0, fmt("smooth fixture mean abs change %.5f > 1/255", mad));
  if (o.pass)
    o.detail = std::to_string(outside) + " outside pixels identical; smooth-edge change " +
               fmt("%.2e", mad);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "dealias_acceptance_determinism";
  fs::remove_all(root);
  const SyntheticSpec spec = ac_fixture();
  std::string reports[2];
  for (int run = 0; run < 2; ++run) {
    PipelineConfig cfg;
    cfg.dump_dir = root / ("run" + std::to_string(run));
    const PipelineResult r = run_pipeline(generate_synthetic(spec).image, cfg);
    save_image(r.output, *cfg.dump_dir / "output.pgm");
    save_image(r.output, *cfg.dump_dir / "output.png");
    reports[run] = report_text(r, cfg);
    std::ofstream(*cfg.dump_dir / "report.txt") << reports[run];
  }
  check(o, reports[0] == reports[1], "reports differ");
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(root / "run0")) {
    const fs::path other = root / "run1" / entry.path().filename();
    check(o, fs::exists(other) && slurp(entry.path()) == slurp(other),
          "file differs: " + entry.path().filename().string());
    ++files;
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(files) + " files byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> fn;
    double budget_s;
  };
  const Criterion criteria[] = {
      {"AC1 padding geometry", padding_geometry, 0.001},
      {"AC2 peakiness schedule", schedule, 0.01},
      {"AC3 junction limit and waving", junction_oracle, 5},
      {"AC4 fft vs direct dft", fft_correctness, 10},
      {"AC5 flattening contract", flattening_contract, 5},
      {"AC6 period and strength", period_and_strength, 1},
      {"AC7 end-to-end aliasing reduction", end_to_end, 10},
      {"AC8 locality and no-op", locality, 10},
      {"AC9 determinism", determinism, 20},
  };
  int failed = 0;
  for (const auto& [name, fn, budget] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > budget) o = {false, o.detail + fmt("; over the %.3gs budget", budget)};
    std::printf("[%s] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
