#include "photodet/serialize.hpp"

#include "photodet/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace photodet {

static_assert(std::endian::native == std::endian::little, "eigendata files assume a little-endian host");

namespace {

using Index = Eigen::Index;

constexpr char kEigenMagic[8] = {'P', 'D', 'E', 'I', 'G', 'S', 'Y', 'S'};
constexpr char kDressedMagic[8] = {'P', 'D', 'D', 'R', 'E', 'S', 'S', 'D'};
constexpr std::uint64_t kFormatVersion = 1;
constexpr std::uint64_t kMaxDim = 1u << 16;

void put_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

void get_bytes(std::istream& in, void* data, std::size_t n) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (!in) throw IoError("truncated eigendata file");
}

template <typename T>
void put(std::ostream& out, T v) {
  put_bytes(out, &v, sizeof v);
}

template <typename T>
T get(std::istream& in) {
  T v{};
  get_bytes(in, &v, sizeof v);
  return v;
}

void put_string(std::ostream& out, std::string_view s) {
  put<std::uint64_t>(out, s.size());
  put_bytes(out, s.data(), s.size());
}

std::string get_string(std::istream& in) {
  const auto n = get<std::uint64_t>(in);
  if (n > (1u << 20)) throw IoError("implausible string length in eigendata file");
  std::string s(n, '\0');
  get_bytes(in, s.data(), n);
  return s;
}

void expect_magic(std::istream& in, const char (&magic)[8]) {
  char buf[8];
  get_bytes(in, buf, sizeof buf);
  if (std::memcmp(buf, magic, sizeof buf) != 0) throw IoError("bad magic in eigendata file");
}

void put_matrix(std::ostream& out, const Matrix& m) {
  put_bytes(out, m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
}

Matrix get_matrix(std::istream& in, Index n) {
  Matrix m(n, n);
  get_bytes(in, m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  return m;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

void write_eigensystem(std::ostream& out, const EigenSystem& es) {
  put_bytes(out, kEigenMagic, sizeof kEigenMagic);
  put<std::uint64_t>(out, kFormatVersion);
  put_string(out, kConventions);
  put<std::uint64_t>(out, es.source_space.n_modes());
  for (auto d : es.source_space.mode_dims()) put<std::uint64_t>(out, d);
  put<std::uint64_t>(out, es.source_space.n_qubits());
  put<double>(out, es.degeneracy_tol);
  put<std::uint64_t>(out, es.dim());
  put<std::uint64_t>(out, es.has_parity() ? 1 : 0);
  put_bytes(out, es.energies.data(), sizeof(double) * es.dim());
  for (int p : es.parity) put<std::int64_t>(out, p);
  put_matrix(out, es.states);
  if (!out) throw IoError("failed writing eigensystem");
}

EigenSystem read_eigensystem(std::istream& in) {
  expect_magic(in, kEigenMagic);
  if (get<std::uint64_t>(in) != kFormatVersion) throw IoError("unsupported eigendata format version");
  if (get_string(in) != kConventions) throw IoError("eigendata file uses different conventions");
  const auto n_modes = get<std::uint64_t>(in);
  if (n_modes > 64) throw IoError("implausible mode count in eigendata file");
  std::vector<std::size_t> dims(n_modes);
  for (auto& d : dims) d = get<std::uint64_t>(in);
  const auto n_qubits = get<std::uint64_t>(in);
  if (n_qubits > 16) throw IoError("implausible qubit count in eigendata file");
  HilbertSpace space(dims, n_qubits);
  const auto tol = get<double>(in);
  const auto dim = get<std::uint64_t>(in);
  if (dim != space.total_dim() || dim > kMaxDim) throw IoError("eigendata dimension mismatch");
  const bool has_parity = get<std::uint64_t>(in) != 0;
  RealVector energies(static_cast<Index>(dim));
  get_bytes(in, energies.data(), sizeof(double) * dim);
  std::vector<int> parity;
  if (has_parity) {
    parity.resize(dim);
    for (auto& p : parity) p = static_cast<int>(get<std::int64_t>(in));
  }
  Matrix states = get_matrix(in, static_cast<Index>(dim));
  return EigenSystem{std::move(space), std::move(energies), std::move(states), std::move(parity), tol};
}

void save_eigensystem(const std::filesystem::path& path, const EigenSystem& es) {
  auto out = open_out(path);
  write_eigensystem(out, es);
}

EigenSystem load_eigensystem(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_eigensystem(in);
}

void save_dressed(const std::filesystem::path& path, const DressedOperator& op) {
  auto out = open_out(path);
  write_eigensystem(out, op.eigenbasis());
  put_bytes(out, kDressedMagic, sizeof kDressedMagic);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(op.part()));
  put_string(out, op.weighting());
  put_matrix(out, op.matrix());
  if (!out) throw IoError("failed writing dressed operator");
}

DressedOperator load_dressed(const std::filesystem::path& path) {
  auto in = open_in(path);
  auto es = std::make_shared<const EigenSystem>(read_eigensystem(in));
  expect_magic(in, kDressedMagic);
  const auto part = get<std::uint64_t>(in);
  if (part > 2) throw IoError("unknown operator part in dressed-operator file");
  std::string weighting = get_string(in);
  Matrix m = get_matrix(in, static_cast<Index>(es->dim()));
  return DressedOperator(std::move(es), std::move(m), static_cast<OperatorPart>(part), std::move(weighting));
}

}  // namespace photodet
