#include "qpzoom/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qpzoom {

using nlohmann::json;

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_header_int(std::istream& in, const char* field) {
  const std::string tok = next_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string("pnm: bad ") + field + " field '" + tok + "'");
  }
}

}  // namespace

std::uint8_t quantize(double v) {
  const double q = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(q);
}

Imaged read_pnm(std::istream& in) {
  const std::string magic = next_token(in);
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw IoError("pnm: unsupported format '" + magic + "' (expected P5 or P6)");
  }
  const int width = parse_header_int(in, "width");
  const int height = parse_header_int(in, "height");
  const int maxval = parse_header_int(in, "maxval");
  if (width <= 0 || height <= 0) throw IoError("pnm: non-positive image extent");
  if (maxval != 255) throw IoError("pnm: only 8-bit images (maxval 255) are supported");
  // next_token consumed exactly one whitespace byte after maxval.
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<unsigned char> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(in.gcount()) != count) throw IoError("pnm: truncated pixel data");
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) data[i] = raw[i] / 255.0;
  return Imaged(width, height, channels, std::move(data));
}

Imaged read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_pnm(in);
}

void write_pnm(std::ostream& out, const Imaged& img) {
  if (img.empty()) throw InvalidArgument("write_pnm: empty image");
  out << (img.channels() == 1 ? "P5" : "P6") << '\n'
      << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  const auto& data = img.data();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = quantize(data[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void write_pnm(const std::string& path, const Imaged& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_pnm(out, img);
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string grid_to_json(const AxisMap<double>& am) {
  json j;
  j["W"] = am.W();
  j["H"] = am.H();
  j["w"] = am.w();
  j["h"] = am.h();
  j["xs"] = am.x_map.values();
  j["ys"] = am.y_map.values();
  return j.dump();
}

AxisMap<double> grid_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("grid json: ") + e.what());
  }
  try {
    ControlGrid<double> g{j.at("xs").get<std::vector<double>>(), j.at("ys").get<std::vector<double>>()};
    const double W = j.at("W").get<double>();
    const double H = j.at("H").get<double>();
    if (g.xs.size() < 2 || g.ys.size() < 2 || g.xs.front() != 0 || g.ys.front() != 0 || g.W() != W ||
        g.H() != H) {
      throw InvalidArgument("grid json: xs/ys must run from 0 to W/H");
    }
    return axis_maps(g, j.at("w").get<double>(), j.at("h").get<double>());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("grid json: ") + e.what());
  }
}

AxisMap<double> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return grid_from_json(ss.str());
}

void write_grid(const std::string& path, const AxisMap<double>& am) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << grid_to_json(am) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

Boxd box_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 4) throw InvalidArgument("box must have 4 entries [cx,cy,w,h]");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

std::vector<TargetRecord> read_records(std::istream& in) {
  std::vector<TargetRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      TargetRecord rec;
      rec.frame_w = j.at("frame_w").get<int>();
      rec.frame_h = j.at("frame_h").get<int>();
      rec.gt = box_from_json(j.at("gt"));
      rec.prior = box_from_json(j.at("prior"));
      if (!rec.prior.valid()) throw InvalidArgument("prior box must have positive extent");
      if (!(rec.gt.w >= 0 && rec.gt.h >= 0)) throw InvalidArgument("gt box must have non-negative extent");
      out.push_back(rec);
    } catch (const std::exception& e) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string record_to_json(const TargetRecord& rec) {
  json j;
  j["frame_w"] = rec.frame_w;
  j["frame_h"] = rec.frame_h;
  j["gt"] = {rec.gt.cx, rec.gt.cy, rec.gt.w, rec.gt.h};
  j["prior"] = {rec.prior.cx, rec.prior.cy, rec.prior.w, rec.prior.h};
  return j.dump();
}

}  // namespace qpzoom
