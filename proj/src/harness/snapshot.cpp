#include "invlab/harness/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "invlab/error.hpp"
#include "invlab/harness/csv.hpp"

namespace invlab::harness {

namespace {

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, double t,
                    const std::vector<std::string>& names, const std::vector<const Field*>& fields) {
  if (names.size() != fields.size() || fields.empty())
    throw ValidationError("write_snapshot: need one name per field");
  const Grid2D& g = fields.front()->grid;
  for (const Field* f : fields)
    if (!(f->grid == g)) throw ValidationError("write_snapshot: fields on different grids");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << "INVLAB1 " << g.nx << ' ' << g.ny << ' ' << fields.size() << ' ' << format_double(t)
      << '\n';
  for (const auto& n : names) out << n << '\n';
  for (const Field* f : fields)
    for (double v : f->values) put_le(out, v);
  if (!out) throw ValidationError("short write to '" + path.string() + "'");
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  Snapshot s;
  long nfields = 0;
  hs >> magic >> s.nx >> s.ny >> nfields >> s.t;
  if (!hs || magic != "INVLAB1" || s.nx <= 0 || s.ny <= 0 || nfields <= 0)
    throw ValidationError(path.string() + ": bad snapshot header");
  for (long i = 0; i < nfields; ++i) {
    std::string name;
    if (!std::getline(in, name)) throw ValidationError(path.string() + ": missing field names");
    s.names.push_back(name);
  }
  const std::size_t n = static_cast<std::size_t>(s.nx) * static_cast<std::size_t>(s.ny);
  std::vector<unsigned char> buf(n * 8);
  for (long i = 0; i < nfields; ++i) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
      throw ValidationError(path.string() + ": truncated payload");
    std::vector<double> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = get_le(buf.data() + 8 * k);
    s.fields.push_back(std::move(f));
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw ValidationError(path.string() + ": trailing bytes after payload");
  return s;
}

}  // namespace invlab::harness
