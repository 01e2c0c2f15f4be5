#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gsqg/grid.hpp"

namespace gsqg {

// Binary field container: magic "GFLD", version u32 = 1, nx u32, ny u32,
// ncomp u32 (1 scalar / 2 vector), length f64, time f64, then the payload as
// little-endian f64, row-major, component-major.
struct FieldFileInfo {
  std::uint32_t version = 1;
  std::uint32_t nx = 0, ny = 0, ncomp = 0;
  double length = 0.0;
  double time = 0.0;
};

void write_field(const std::string& path, const ScalarField2D& f, double time = 0.0);
void write_field(const std::string& path, const VectorField2D& v, double time = 0.0);

struct LoadedField {
  FieldFileInfo info;
  std::optional<ScalarField2D> scalar;
  std::optional<VectorField2D> vector;
};

// Throws IoError / BadMagic / BadLength.
LoadedField read_field(const std::string& path);

}  // namespace gsqg
