#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpzoom/geometry.hpp"
#include "qpzoom/pipeline.hpp"
#include "qpzoom/warp_grid.hpp"

namespace qpzoom {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary PGM (P5, 1 channel) and PPM (P6, 3 channels), 8-bit only.
// Samples are read as v / 255 and written as floor(v * 255 + 0.5).

Imaged read_pnm(std::istream& in);
Imaged read_pnm(const std::string& path);
void write_pnm(std::ostream& out, const Imaged& img);
void write_pnm(const std::string& path, const Imaged& img);

std::uint8_t quantize(double v);

/// {"W","H","w","h","xs","ys"}; doubles are written in shortest round-trip form.
std::string grid_to_json(const AxisMap<double>& am);
AxisMap<double> grid_from_json(const std::string& text);
AxisMap<double> read_grid(const std::string& path);
void write_grid(const std::string& path, const AxisMap<double>& am);

/// One record per line: {"frame_w":..,"frame_h":..,"gt":[cx,cy,w,h],"prior":[cx,cy,w,h]}.
/// Blank lines are ignored; a malformed line raises InvalidArgument naming its line number.
std::vector<TargetRecord> read_records(std::istream& in);
std::string record_to_json(const TargetRecord& rec);

}  // namespace qpzoom
