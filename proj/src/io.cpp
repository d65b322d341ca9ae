#include "hjhom/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hjhom {

std::string render_pgm(const Environment::GridField& field, double lo,
                       double hi) {
  if (hi <= lo) throw std::invalid_argument("render_pgm: empty value range");
  std::ostringstream out;
  out << "P5\n" << field.nx << " " << field.ny << "\n255\n";
  // top row first, as images are conventionally stored
  for (int j = field.ny - 1; j >= 0; --j) {
    for (int i = 0; i < field.nx; ++i) {
      const double v = field.values[size_t(j) * field.nx + i];
      const double s = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
      out.put(static_cast<char>(static_cast<unsigned char>(
          std::lround(s * 255.0))));
    }
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(contents.data(), std::streamsize(contents.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hjhom
