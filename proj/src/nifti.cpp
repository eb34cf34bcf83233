#include "scargeo/nifti.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "scargeo/version.hpp"

namespace scargeo {
namespace {

constexpr std::size_t kHeaderSize = 348;
constexpr std::size_t kDataOffset = 352;
constexpr const char* kRawMagic = "SCARGEO-RAW";

std::vector<char> slurp(const std::filesystem::path& path) {
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (f == nullptr) throw FormatError("cannot open " + path.string());
  std::vector<char> buf;
  char chunk[1 << 16];
  int got = 0;
  while ((got = gzread(f, chunk, sizeof(chunk))) > 0) buf.insert(buf.end(), chunk, chunk + got);
  const bool failed = got < 0;
  gzclose(f);
  if (failed) throw FormatError("corrupt compressed stream in " + path.string());
  return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit(const std::filesystem::path& path, const std::vector<char>& bytes) {
  const std::string name = path.string();
  if (ends_with(name, ".gz")) {
    gzFile f = gzopen(name.c_str(), "wb6");
    if (f == nullptr) throw FormatError("cannot write " + name);
    const int wrote = gzwrite(f, bytes.data(), static_cast<unsigned>(bytes.size()));
    if (gzclose(f) != Z_OK || wrote != static_cast<int>(bytes.size())) throw FormatError("write failed: " + name);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + name);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + name);
}

// Little helper over a header buffer that optionally byte-swaps fields.
class Fields {
 public:
  Fields(const char* base, bool swap) : base_(base), swap_(swap) {}

  template <typename T>
  T get(std::size_t offset) const {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, base_ + offset, sizeof(T));
    if (swap_) std::reverse(bytes, bytes + sizeof(T));
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
  }

 private:
  const char* base_;
  bool swap_;
};

template <typename T>
void put(std::vector<char>& buf, std::size_t offset, T v) {
  std::memcpy(buf.data() + offset, &v, sizeof(T));
}

std::size_t type_size(std::int16_t datatype) {
  switch (datatype) {
    case nifti_type::uint8:
    case nifti_type::int8:
      return 1;
    case nifti_type::int16:
    case nifti_type::uint16:
      return 2;
    case nifti_type::int32:
    case nifti_type::uint32:
    case nifti_type::float32:
      return 4;
    case nifti_type::float64:
      return 8;
    default:
      throw FormatError("unsupported NIfTI datatype " + std::to_string(datatype));
  }
}

template <typename T>
double load(const char* p, bool swap) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if (swap) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return static_cast<double>(v);
}

double decode(const char* p, std::int16_t datatype, bool swap) {
  switch (datatype) {
    case nifti_type::uint8:
      return load<std::uint8_t>(p, false);
    case nifti_type::int8:
      return load<std::int8_t>(p, false);
    case nifti_type::int16:
      return load<std::int16_t>(p, swap);
    case nifti_type::uint16:
      return load<std::uint16_t>(p, swap);
    case nifti_type::int32:
      return load<std::int32_t>(p, swap);
    case nifti_type::uint32:
      return load<std::uint32_t>(p, swap);
    case nifti_type::float32:
      return load<float>(p, swap);
    case nifti_type::float64:
      return load<double>(p, swap);
    default:
      throw FormatError("unsupported NIfTI datatype " + std::to_string(datatype));
  }
}

VolumeFile parse_nifti(const std::vector<char>& buf, const std::string& name) {
  if (buf.size() < kHeaderSize) throw FormatError(name + ": truncated NIfTI header");
  std::int32_t sizeof_hdr = 0;
  std::memcpy(&sizeof_hdr, buf.data(), 4);
  bool swap = false;
  if (sizeof_hdr != static_cast<std::int32_t>(kHeaderSize)) {
    swap = true;
    if (Fields(buf.data(), true).get<std::int32_t>(0) != static_cast<std::int32_t>(kHeaderSize)) {
      throw FormatError(name + ": not a NIfTI-1 file");
    }
  }
  if (std::memcmp(buf.data() + 344, "n+1", 4) != 0) throw FormatError(name + ": only single-file NIfTI-1 is supported");
  const Fields h(buf.data(), swap);

  const auto ndim = h.get<std::int16_t>(40);
  if (ndim < 1 || ndim > 7) throw FormatError(name + ": invalid dim[0]");
  std::int64_t extent[3] = {1, 1, 1};
  for (int a = 0; a < ndim; ++a) {
    const auto e = h.get<std::int16_t>(42 + 2 * a);
    if (e < 1) throw FormatError(name + ": non-positive dimension");
    if (a < 3) {
      extent[a] = e;
    } else if (e != 1) {
      throw FormatError(name + ": only 3-D volumes are supported");
    }
  }

  VolumeFile vf;
  vf.dims = Dims(extent[0], extent[1], extent[2]);
  vf.datatype = h.get<std::int16_t>(70);
  const std::size_t bytes_per = type_size(vf.datatype);

  float pix[3];
  for (int a = 0; a < 3; ++a) {
    pix[a] = std::abs(h.get<float>(80 + 4 * a));
    if (a >= ndim && !(pix[a] > 0.0f)) pix[a] = 1.0f;
    if (!(pix[a] > 0.0f) || !std::isfinite(pix[a])) throw FormatError(name + ": invalid voxel spacing");
  }
  vf.spacing = Spacing(pix[0], pix[1], pix[2]);

  NiftiGeometry& g = vf.geometry;
  g.qfac = h.get<float>(76) < 0.0f ? -1.0f : 1.0f;
  g.xyzt_units = static_cast<std::uint8_t>(buf[123]);
  g.qform_code = h.get<std::int16_t>(252);
  g.sform_code = h.get<std::int16_t>(254);
  for (int a = 0; a < 3; ++a) {
    g.quatern[a] = h.get<float>(256 + 4 * a);
    g.qoffset[a] = h.get<float>(268 + 4 * a);
  }
  for (int a = 0; a < 4; ++a) {
    g.srow_x[a] = h.get<float>(280 + 4 * a);
    g.srow_y[a] = h.get<float>(296 + 4 * a);
    g.srow_z[a] = h.get<float>(312 + 4 * a);
  }

  const float vox_offset = h.get<float>(108);
  const auto offset = static_cast<std::size_t>(std::max(vox_offset, static_cast<float>(kDataOffset)));
  const std::size_t count = vf.dims.size();
  if (buf.size() < offset + count * bytes_per) throw FormatError(name + ": truncated voxel data");

  double slope = h.get<float>(112);
  double inter = h.get<float>(116);
  if (slope == 0.0 || !std::isfinite(slope) || !std::isfinite(inter)) {
    slope = 1.0;
    inter = 0.0;
  }
  vf.values.resize(count);
  const char* data = buf.data() + offset;
  for (std::size_t n = 0; n < count; ++n) {
    vf.values[n] = decode(data + n * bytes_per, vf.datatype, swap) * slope + inter;
  }
  return vf;
}

VolumeFile parse_raw(const std::vector<char>& buf, const std::string& name) {
  const auto eol = std::find(buf.begin(), buf.end(), '\n');
  if (eol == buf.end()) throw FormatError(name + ": missing raw header line");
  std::istringstream header(std::string(buf.begin(), eol));
  std::string magic, type;
  int version = 0;
  std::int64_t nx = 0, ny = 0, nz = 0;
  double sx = 0, sy = 0, sz = 0;
  header >> magic >> version >> nx >> ny >> nz >> sx >> sy >> sz >> type;
  if (!header || magic != kRawMagic || version != 1) throw FormatError(name + ": bad raw header");
  if (nx <= 0 || ny <= 0 || nz <= 0) throw FormatError(name + ": non-positive dimension");
  if (!(sx > 0 && sy > 0 && sz > 0)) throw FormatError(name + ": invalid voxel spacing");
  VolumeFile vf;
  vf.dims = Dims(nx, ny, nz);
  vf.spacing = Spacing(sx, sy, sz);
  vf.geometry = NiftiGeometry::from_spacing(vf.spacing);
  if (type == "u8") {
    vf.datatype = nifti_type::uint8;
  } else if (type == "f32") {
    vf.datatype = nifti_type::float32;
  } else {
    throw FormatError(name + ": unknown raw voxel type " + type);
  }
  const std::size_t bytes_per = type_size(vf.datatype);
  const auto offset = static_cast<std::size_t>(eol - buf.begin()) + 1;
  if (buf.size() != offset + vf.dims.size() * bytes_per) throw FormatError(name + ": raw payload size mismatch");
  const bool swap = std::endian::native != std::endian::little;
  vf.values.resize(vf.dims.size());
  for (std::size_t n = 0; n < vf.values.size(); ++n) {
    vf.values[n] = decode(buf.data() + offset + n * bytes_per, vf.datatype, swap);
  }
  return vf;
}

std::vector<char> nifti_header(const Dims& dims, const Spacing& spacing, std::int16_t datatype,
                               const NiftiGeometry& g) {
  std::vector<char> buf(kDataOffset, 0);
  put<std::int32_t>(buf, 0, static_cast<std::int32_t>(kHeaderSize));
  buf[38] = 'r';
  const std::int16_t dim[8] = {3, static_cast<std::int16_t>(dims.nx), static_cast<std::int16_t>(dims.ny),
                               static_cast<std::int16_t>(dims.nz), 1, 1, 1, 1};
  for (int a = 0; a < 8; ++a) put<std::int16_t>(buf, 40 + 2 * a, dim[a]);
  put<std::int16_t>(buf, 70, datatype);
  put<std::int16_t>(buf, 72, static_cast<std::int16_t>(8 * type_size(datatype)));
  const float pixdim[8] = {g.qfac, static_cast<float>(spacing.sx), static_cast<float>(spacing.sy),
                           static_cast<float>(spacing.sz), 1.0f, 1.0f, 1.0f, 1.0f};
  for (int a = 0; a < 8; ++a) put<float>(buf, 76 + 4 * a, pixdim[a]);
  put<float>(buf, 108, static_cast<float>(kDataOffset));
  put<float>(buf, 112, 1.0f);
  put<float>(buf, 116, 0.0f);
  buf[123] = static_cast<char>(g.xyzt_units);
  const std::string descrip = std::string("scargeo ") + kVersion;
  std::memcpy(buf.data() + 148, descrip.data(), std::min<std::size_t>(descrip.size(), 79));
  put<std::int16_t>(buf, 252, g.qform_code);
  put<std::int16_t>(buf, 254, g.sform_code);
  for (int a = 0; a < 3; ++a) {
    put<float>(buf, 256 + 4 * a, g.quatern[a]);
    put<float>(buf, 268 + 4 * a, g.qoffset[a]);
  }
  for (int a = 0; a < 4; ++a) {
    put<float>(buf, 280 + 4 * a, g.srow_x[a]);
    put<float>(buf, 296 + 4 * a, g.srow_y[a]);
    put<float>(buf, 312 + 4 * a, g.srow_z[a]);
  }
  std::memcpy(buf.data() + 344, "n+1\0", 4);
  return buf;
}

std::string raw_header(const Dims& dims, const Spacing& spacing, const char* type) {
  char line[256];
  std::snprintf(line, sizeof(line), "%s 1 %lld %lld %lld %.17g %.17g %.17g %s\n", kRawMagic,
                static_cast<long long>(dims.nx), static_cast<long long>(dims.ny), static_cast<long long>(dims.nz),
                spacing.sx, spacing.sy, spacing.sz, type);
  return line;
}

template <typename T>
void write_any(const std::filesystem::path& path, const Dims& dims, const Spacing& spacing, std::span<const T> src,
               std::int16_t datatype, const NiftiGeometry* geometry) {
  if (dims.nx > 32767 || dims.ny > 32767 || dims.nz > 32767) throw FormatError("volume too large for NIfTI-1");
  std::vector<char> bytes;
  if (ends_with(path.string(), ".rawvol")) {
    const std::string head = raw_header(dims, spacing, datatype == nifti_type::uint8 ? "u8" : "f32");
    bytes.assign(head.begin(), head.end());
  } else {
    const NiftiGeometry g = geometry ? *geometry : NiftiGeometry::from_spacing(spacing);
    bytes = nifti_header(dims, spacing, datatype, g);
  }
  const std::size_t head = bytes.size();
  bytes.resize(head + src.size() * sizeof(T));
  std::memcpy(bytes.data() + head, src.data(), src.size() * sizeof(T));
  if constexpr (sizeof(T) > 1) {
    if (std::endian::native != std::endian::little) {
      for (std::size_t n = 0; n < src.size(); ++n) {
        std::reverse(bytes.begin() + head + n * sizeof(T), bytes.begin() + head + (n + 1) * sizeof(T));
      }
    }
  }
  emit(path, bytes);
}

}  // namespace

NiftiGeometry NiftiGeometry::from_spacing(const Spacing& spacing) {
  NiftiGeometry g;
  g.srow_x = {static_cast<float>(spacing.sx), 0.0f, 0.0f, 0.0f};
  g.srow_y = {0.0f, static_cast<float>(spacing.sy), 0.0f, 0.0f};
  g.srow_z = {0.0f, 0.0f, static_cast<float>(spacing.sz), 0.0f};
  return g;
}

ScalarVolume VolumeFile::to_scalar() const { return ScalarVolume(dims, spacing, values); }

BinaryMask VolumeFile::to_mask(bool labels_to_binary) const {
  std::vector<std::uint8_t> bits(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    const double v = values[n];
    if (labels_to_binary) {
      bits[n] = v != 0.0 ? 1 : 0;
    } else if (v == 0.0 || v == 1.0) {
      bits[n] = static_cast<std::uint8_t>(v);
    } else {
      throw NonBinaryMaskError("mask contains value " + std::to_string(v) +
                               "; pass the labels-to-binary option to map labels to 1");
    }
  }
  return BinaryMask(dims, spacing, std::move(bits));
}

VolumeFile read_volume(const std::filesystem::path& path) {
  const std::vector<char> buf = slurp(path);
  const std::string magic(kRawMagic);
  if (buf.size() >= magic.size() && std::equal(magic.begin(), magic.end(), buf.begin())) {
    return parse_raw(buf, path.string());
  }
  return parse_nifti(buf, path.string());
}

ScalarVolume read_scalar(const std::filesystem::path& path) { return read_volume(path).to_scalar(); }

BinaryMask read_mask(const std::filesystem::path& path, bool labels_to_binary) {
  return read_volume(path).to_mask(labels_to_binary);
}

void write_scalar(const std::filesystem::path& path, const ScalarVolume& volume, const NiftiGeometry* geometry) {
  std::vector<float> data(volume.size());
  for (std::size_t n = 0; n < data.size(); ++n) data[n] = static_cast<float>(volume[n]);
  write_any<float>(path, volume.dims(), volume.spacing(), data, nifti_type::float32, geometry);
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask, const NiftiGeometry* geometry) {
  write_any<std::uint8_t>(path, mask.dims(), mask.spacing(), mask.values(), nifti_type::uint8, geometry);
}

}  // namespace scargeo
