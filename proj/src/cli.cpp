#include "qpzoom/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpzoom/io.hpp"
#include "qpzoom/pipeline.hpp"

namespace qpzoom::cli {

namespace {

/// Internal failure that maps to a specific exit code.
struct CommandError {
  std::string message;
  int code;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string box_json(const Boxd& b) {
  return "[" + fixed6(b.cx) + "," + fixed6(b.cy) + "," + fixed6(b.w) + "," + fixed6(b.h) + "]";
}

Boxd parse_box(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("box '" + text + "' must be four comma-separated numbers cx,cy,w,h");
    }
  }
  if (v.size() != 4) throw InvalidArgument("box '" + text + "' must be four comma-separated numbers cx,cy,w,h");
  return {v[0], v[1], v[2], v[3]};
}

ResizeMode parse_mode(const std::string& s) { return s == "uniform" ? ResizeMode::Uniform : ResizeMode::Zoom; }

const char* mode_name(ResizeMode m) { return m == ResizeMode::Uniform ? "uniform" : "zoom"; }

void add_hyper_flags(CLI::App* cmd, HyperParams& hp, std::string& context_mode) {
  cmd->add_option("--size", hp.search_size, "output patch side in pixels")->capture_default_str();
  cmd->add_option("--context-factor", hp.context_factor, "crop context factor")->capture_default_str();
  cmd->add_option("--context-mode", context_mode, "unit context: peraxis or mean")
      ->check(CLI::IsMember({"peraxis", "mean"}))
      ->capture_default_str();
  cmd->add_option("--gamma", hp.gamma, "zoom factor")->capture_default_str();
  cmd->add_option("--beta", hp.beta, "importance bandwidth")->capture_default_str();
  cmd->add_option("--lambda", hp.lambda, "rigid energy weight")->capture_default_str();
  cmd->add_option("--epsilon", hp.epsilon, "importance floor")->capture_default_str();
  cmd->add_option("--grid", hp.grid, "patches per axis (m = n)")->capture_default_str();
}

void finish_hyper(HyperParams& hp, const std::string& context_mode) {
  hp.context_mode = context_mode == "mean" ? ContextMode::Mean : ContextMode::PerAxis;
  hp.validate();
}

int cmd_resize(const std::string& input, const std::string& output, const std::string& prev_box,
               const HyperParams& hp, ResizeMode mode, const std::string& grid_out, std::ostream& out) {
  const Imaged frame = read_pnm(input);
  const Boxd box = parse_box(prev_box);
  const ResizeResult res = make_search_patch(frame, box, hp, mode);
  write_pnm(output, res.patch);
  if (!grid_out.empty()) write_grid(grid_out, res.axis_map);
  out << "{\"mode\":\"" << mode_name(mode) << "\",\"W\":" << fixed6(res.crop_extent.first)
      << ",\"H\":" << fixed6(res.crop_extent.second) << ",\"crop_origin\":[" << res.crop_origin.first << ","
      << res.crop_origin.second << "],\"prior_on_crop\":" << box_json(res.prior_on_crop)
      << ",\"fallback\":" << (res.fell_back_to_uniform ? "true" : "false") << "}\n";
  return kOk;
}

int cmd_map_box(const std::string& grid_path, const std::string& box_text, const std::string& direction,
                std::ostream& out) {
  const auto am = read_grid(grid_path);
  const Boxd b = parse_box(box_text);
  const Boxd mapped = direction == "reverse" ? map_box_reverse(b, am) : map_box_forward(b, am);
  out << box_json(mapped) << "\n";
  return kOk;
}

int cmd_stats(const std::string& input, const HyperParams& hp, const std::string& mode, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw IoError("cannot open '" + input + "' for reading");
  std::vector<TargetRecord> records;
  try {
    records = read_records(in);
  } catch (const InvalidArgument& e) {
    throw CommandError{e.what(), kIoError};
  }
  if (records.empty()) throw CommandError{"empty sequence", kIoError};
  std::vector<ResizeMode> modes;
  if (mode == "uniform" || mode == "both") modes.push_back(ResizeMode::Uniform);
  if (mode == "zoom" || mode == "both") modes.push_back(ResizeMode::Zoom);
  for (ResizeMode m : modes) {
    const auto s = target_size_stats(records, hp, m);
    out << "{\"mode\":\"" << mode_name(m) << "\",\"avg\":" << fixed6(s.avg) << ",\"std\":" << fixed6(s.std)
        << ",\"n\":" << s.count << "}\n";
  }
  return kOk;
}

struct Timing {
  double median;
  double p95;
};

Timing summarize(std::vector<double> ms) {
  std::sort(ms.begin(), ms.end());
  const std::size_t n = ms.size();
  const double median = n % 2 ? ms[n / 2] : 0.5 * (ms[n / 2 - 1] + ms[n / 2]);
  const std::size_t i95 = std::min(n - 1, static_cast<std::size_t>(std::ceil(0.95 * n)) - 1);
  return {median, ms[i95]};
}

int cmd_bench(int iters, int frame_side, const HyperParams& hp, unsigned seed, std::ostream& out) {
  if (iters < 1) throw InvalidArgument("--iters must be >= 1");
  if (frame_side < 2) throw InvalidArgument("--frame must be >= 2");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Imaged frame(frame_side, frame_side, 3);
  for (auto& v : frame.data()) v = unit(rng);
  // Square box sized so the crop covers the whole frame.
  const double side = frame_side / hp.context_factor;
  const Boxd prev{frame_side / 2.0, frame_side / 2.0, side, side};
  const auto [W, H] = crop_size(prev, hp.context_factor, hp.context_mode);
  const auto cropped = crop_image(frame, prev, W, H, hp.pad_value);

  using clock = std::chrono::steady_clock;
  std::vector<double> solve_ms, resize_ms, total_ms;
  std::size_t checksum = 0;
  for (int i = 0; i < iters; ++i) {
    const auto t0 = clock::now();
    const auto built = build_axis_map(cropped.r, W, H, hp, ResizeMode::Zoom);
    const auto t1 = clock::now();
    const auto patch = warp(cropped.crop, built.axis_map);
    const auto t2 = clock::now();
    checksum += patch.size();
    solve_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    resize_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
    total_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t0).count());
  }
  if (checksum == 0) throw CommandError{"bench produced empty patches", kInternalError};
  const std::pair<const char*, const std::vector<double>*> stages[] = {
      {"solve_qp", &solve_ms}, {"resize", &resize_ms}, {"total", &total_ms}};
  for (const auto& [name, samples] : stages) {
    const Timing t = summarize(*samples);
    out << "{\"stage\":\"" << name << "\",\"iters\":" << iters << ",\"median_ms\":" << fixed6(t.median)
        << ",\"p95_ms\":" << fixed6(t.p95) << "}\n";
  }
  return kOk;
}

void report(std::ostream& err, const std::string& message, int code) {
  nlohmann::json j;
  j["error"] = message;
  j["code"] = code;
  err << j.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"QP-controlled non-uniform resizing for tracking search regions", "qpzoom"};
  app.require_subcommand(1);

  HyperParams hp;
  std::string context_mode = "peraxis";
  std::string mode = "zoom";

  auto* resize = app.add_subcommand("resize", "crop and resize a frame around a previous-frame box");
  std::string input, output, prev_box, grid_out;
  unsigned seed = 0;
  resize->add_option("--input", input, "input PGM/PPM frame")->required();
  resize->add_option("--output", output, "output PGM/PPM patch")->required();
  resize->add_option("--prev-box", prev_box, "previous box cx,cy,w,h")->required();
  add_hyper_flags(resize, hp, context_mode);
  resize->add_option("--mode", mode, "zoom or uniform")
      ->check(CLI::IsMember({"zoom", "uniform"}))
      ->capture_default_str();
  resize->add_option("--grid-out", grid_out, "write the axis map as JSON");
  resize->add_option("--seed", seed, "random seed (unused by the deterministic resize path)");

  auto* map_box = app.add_subcommand("map-box", "map a box through a grid JSON");
  std::string grid_path, box_text, direction = "forward";
  map_box->add_option("--grid", grid_path, "grid JSON written by resize --grid-out")->required();
  map_box->add_option("--box", box_text, "box cx,cy,w,h")->required();
  map_box->add_option("--direction", direction, "forward (crop -> patch) or reverse")
      ->check(CLI::IsMember({"forward", "reverse"}))
      ->capture_default_str();

  auto* stats = app.add_subcommand("stats", "mapped target size statistics over a JSONL sequence");
  std::string stats_input, stats_mode = "both";
  stats->add_option("--input", stats_input, "JSONL sequence file")->required();
  stats->add_option("--mode", stats_mode, "uniform, zoom or both")
      ->check(CLI::IsMember({"uniform", "zoom", "both"}))
      ->capture_default_str();
  add_hyper_flags(stats, hp, context_mode);

  auto* bench = app.add_subcommand("bench", "time the grid solve and the warp");
  int iters = 100;
  int frame_side = 640;
  unsigned bench_seed = 0;
  bench->add_option("--iters", iters, "timed iterations")->capture_default_str();
  bench->add_option("--frame", frame_side, "synthetic frame side")->capture_default_str();
  bench->add_option("--seed", bench_seed, "synthetic frame seed")->capture_default_str();
  add_hyper_flags(bench, hp, context_mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    report(err, e.what(), kInvalidArgument);
    return kInvalidArgument;
  }

  try {
    finish_hyper(hp, context_mode);
    if (resize->parsed()) return cmd_resize(input, output, prev_box, hp, parse_mode(mode), grid_out, out);
    if (map_box->parsed()) return cmd_map_box(grid_path, box_text, direction, out);
    if (stats->parsed()) return cmd_stats(stats_input, hp, stats_mode, out);
    if (bench->parsed()) return cmd_bench(iters, frame_side, hp, bench_seed, out);
  } catch (const CommandError& e) {
    report(err, e.message, e.code);
    return e.code;
  } catch (const IoError& e) {
    report(err, e.what(), kIoError);
    return kIoError;
  } catch (const InvalidArgument& e) {
    report(err, e.what(), kInvalidArgument);
    return kInvalidArgument;
  } catch (const OutOfDomain& e) {
    report(err, e.what(), kInvalidArgument);
    return kInvalidArgument;
  } catch (const std::exception& e) {
    report(err, e.what(), kInternalError);
    return kInternalError;
  }
  report(err, "no subcommand", kInvalidArgument);
  return kInvalidArgument;
}

}  // namespace qpzoom::cli
