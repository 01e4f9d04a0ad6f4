#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "roughimg/experiment.hpp"

namespace roughimg {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& in, const std::string& what) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw FormatError("dataset: truncated while reading " + what);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void put_string(std::ostream& out, const std::string& s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in, const std::string& what) {
  const auto n = get<std::uint32_t>(in, what);
  if (n > (1u << 20)) throw FormatError("dataset: implausible length for " + what);
  std::string s(n, '\0');
  if (!in.read(s.data(), n)) throw FormatError("dataset: truncated while reading " + what);
  return s;
}

void put_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put<double>(out, m(i, j).real());
      put<double>(out, m(i, j).imag());
    }
  }
}

Eigen::MatrixXcd get_matrix(std::istream& in, Eigen::Index n, const std::string& what) {
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = get<double>(in, what);
      const double im = get<double>(in, what);
      m(i, j) = {re, im};
    }
  }
  return m;
}

}  // namespace

std::size_t dataset_header_bytes(const CauchyDataSet& data) {
  return sizeof kDatasetMagic + 4 + 4 + 8 * 4 + 8 + 4 + data.bc_label.size() + 4 + data.surface_label.size();
}

void save_dataset(const CauchyDataSet& data, const std::filesystem::path& path) {
  data.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(kDatasetMagic, sizeof kDatasetMagic);
  put<std::uint32_t>(out, kDatasetVersion);
  put<std::int32_t>(out, data.line.N);
  put<double>(out, data.line.H);
  put<double>(out, data.line.A);
  put<double>(out, data.k_plus);
  put<double>(out, data.noise_delta);
  put<std::uint64_t>(out, data.seed);
  put_string(out, data.bc_label);
  put_string(out, data.surface_label);
  put_matrix(out, data.us);
  put_matrix(out, data.dnus);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

CauchyDataSet load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open dataset '" + path.string() + "'");
  char magic[sizeof kDatasetMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kDatasetMagic, sizeof magic) != 0)
    throw FormatError("'" + path.string() + "' is not a roughimg dataset");
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kDatasetVersion)
    throw FormatError("dataset format version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kDatasetVersion) + ")");
  CauchyDataSet data;
  data.line.N = get<std::int32_t>(in, "N");
  data.line.H = get<double>(in, "H");
  data.line.A = get<double>(in, "A");
  data.k_plus = get<double>(in, "k_plus");
  data.noise_delta = get<double>(in, "delta");
  data.seed = get<std::uint64_t>(in, "seed");
  data.bc_label = get_string(in, "bc label");
  data.surface_label = get_string(in, "surface label");
  if (data.line.N < 1 || data.line.N > 100000) throw FormatError("dataset: invalid N in header");

  const auto header_end = in.tellg();
  in.seekg(0, std::ios::end);
  const auto payload = static_cast<std::uint64_t>(in.tellg() - header_end);
  in.seekg(header_end);
  const auto m = static_cast<std::uint64_t>(data.line.count());
  const std::uint64_t expected = 2 * m * m * 16;
  if (payload != expected)
    throw FormatError("dataset: payload of " + std::to_string(payload) + " bytes does not match header N=" +
                      std::to_string(data.line.N) + " (expected " + std::to_string(expected) + ")");
  data.us = get_matrix(in, static_cast<Eigen::Index>(m), "us");
  data.dnus = get_matrix(in, static_cast<Eigen::Index>(m), "dnus");
  data.validate();
  return data;
}

void export_csv(const CauchyDataSet& data, const std::filesystem::path& path) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "i,j,re_us,im_us,re_dnus,im_dnus\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < data.us.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.us.cols(); ++j) {
      out << i << ',' << j << ',' << data.us(i, j).real() << ',' << data.us(i, j).imag() << ','
          << data.dnus(i, j).real() << ',' << data.dnus(i, j).imag() << '\n';
    }
  }
}

}  // namespace roughimg
