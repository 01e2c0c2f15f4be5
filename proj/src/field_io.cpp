#include "gsqg/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace gsqg {

namespace {

static_assert(std::endian::native == std::endian::little,
              "gfld payloads are little-endian; byte swapping is not implemented");

constexpr char kMagic[4] = {'G', 'F', 'L', 'D'};

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ostream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_header(std::ostream& out, std::uint32_t nx, std::uint32_t ny, std::uint32_t ncomp,
                  double length, double time) {
  out.write(kMagic, 4);
  write_u32(out, 1);
  write_u32(out, nx);
  write_u32(out, ny);
  write_u32(out, ncomp);
  write_f64(out, length);
  write_f64(out, time);
}

void write_payload(std::ostream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

void write_field(const std::string& path, const ScalarField2D& f, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  write_header(out, f.grid.n, f.grid.n, 1, f.grid.length, time);
  write_payload(out, f.values);
  if (!out) fail(Errc::IoError, "short write to " + path);
}

void write_field(const std::string& path, const VectorField2D& v, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
  write_header(out, v.grid.n, v.grid.n, 2, v.grid.length, time);
  write_payload(out, v.u1);
  write_payload(out, v.u2);
  if (!out) fail(Errc::IoError, "short write to " + path);
}

LoadedField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);

  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    fail(Errc::BadMagic, path + " is not a gfld file");

  FieldFileInfo info;
  auto read_u32 = [&](std::uint32_t& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
  };
  auto read_f64 = [&](double& v) { in.read(reinterpret_cast<char*>(&v), sizeof v); };
  read_u32(info.version);
  read_u32(info.nx);
  read_u32(info.ny);
  read_u32(info.ncomp);
  read_f64(info.length);
  read_f64(info.time);
  if (!in) fail(Errc::BadLength, path + ": truncated header");
  if (info.version != 1) fail(Errc::IoError, path + ": unknown gfld version");
  if (info.nx != info.ny) fail(Errc::IoError, path + ": non-square grids are not supported");
  if (info.ncomp != 1 && info.ncomp != 2) fail(Errc::IoError, path + ": bad component count");

  const std::size_t npts = static_cast<std::size_t>(info.nx) * info.ny;
  std::vector<double> payload(npts * info.ncomp);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size() * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != payload.size() * sizeof(double))
    fail(Errc::BadLength, path + ": truncated payload");
  // Trailing bytes also violate the declared length.
  char extra;
  in.read(&extra, 1);
  if (in.gcount() != 0) fail(Errc::BadLength, path + ": trailing bytes after payload");

  LoadedField out;
  out.info = info;
  const Grid2D g = Grid2D::make(static_cast<int>(info.nx), info.length);
  if (info.ncomp == 1) {
    ScalarField2D f(g);
    f.values.assign(payload.begin(), payload.end());
    out.scalar = std::move(f);
  } else {
    VectorField2D v(g);
    v.u1.assign(payload.begin(), payload.begin() + npts);
    v.u2.assign(payload.begin() + npts, payload.end());
    out.vector = std::move(v);
  }
  return out;
}

}  // namespace gsqg
