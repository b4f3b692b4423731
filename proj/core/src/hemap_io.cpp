#include "blockmap/hemap_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "blockmap/errors.hpp"

namespace blockmap {

namespace {

void write_body(std::ostream& out, const HalfEdgeMap& m) {
  for (std::size_t i = 0; i < m.half_edge_count(); ++i) {
    const auto h = static_cast<HalfEdge>(i);
    out << i << ' ' << m.alpha(h) << ' ' << m.sigma(h) << '\n';
  }
}

}  // namespace

void write_hemap(std::ostream& out, const HalfEdgeMap& m) {
  out << "HEMAP 1 " << m.half_edge_count() << ' ' << m.root() << '\n';
  write_body(out, m);
}

void write_hemap(std::ostream& out, const Quadrangulation& q) {
  const auto& m = q.map();
  out << "HEMAP 1 " << m.half_edge_count() << ' ' << m.root() << " QUAD " << (q.is_black(0) ? 1 : 0) << '\n';
  write_body(out, m);
}

std::string to_hemap(const HalfEdgeMap& m) {
  std::ostringstream s;
  write_hemap(s, m);
  return s.str();
}

std::string to_hemap(const Quadrangulation& q) {
  std::ostringstream s;
  write_hemap(s, q);
  return s.str();
}

HemapFile read_hemap(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty HEMAP input");
  std::istringstream header(line);
  std::string magic, flag;
  int version = 0;
  long long count = -1, root = -1;
  if (!(header >> magic >> version >> count >> root) || magic != "HEMAP")
    throw ParseError("bad HEMAP header: '" + line + "'");
  if (version != 1) throw ParseError("unsupported HEMAP version " + std::to_string(version));
  if (count < 0 || count % 2 != 0 || count > (1LL << 30)) throw ParseError("bad half-edge count " + std::to_string(count));
  std::optional<int> colour0;
  if (header >> flag) {
    int c = -1;
    if (flag != "QUAD" || !(header >> c) || (c != 0 && c != 1)) throw ParseError("bad HEMAP header flag: '" + line + "'");
    colour0 = c;
  }
  if (header >> flag) throw ParseError("trailing data in HEMAP header");

  const auto n = static_cast<std::size_t>(count);
  std::vector<HalfEdge> alpha(n), sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError("HEMAP truncated after " + std::to_string(i) + " half-edges");
    std::istringstream row(line);
    long long idx = -1, a = -1, s = -1;
    std::string extra;
    if (!(row >> idx >> a >> s) || (row >> extra)) throw ParseError("bad HEMAP line " + std::to_string(i + 2) + ": '" + line + "'");
    if (idx != static_cast<long long>(i)) throw ParseError("HEMAP line " + std::to_string(i + 2) + " has index " + std::to_string(idx));
    if (a < 0 || a >= count || s < 0 || s >= count) throw ParseError("HEMAP index out of range on line " + std::to_string(i + 2));
    alpha[i] = static_cast<HalfEdge>(a);
    sigma[i] = static_cast<HalfEdge>(s);
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("trailing data after HEMAP body");

  HemapFile file;
  file.map = HalfEdgeMap(std::move(alpha), std::move(sigma), static_cast<HalfEdge>(root));
  const auto diag = validate(file.map);
  if (!diag.ok) throw InvalidArgument("HEMAP map fails validation: " + diag.failed);
  if (colour0) {
    file.quad = Quadrangulation::from_map(file.map);
    if ((file.quad->is_black(0) ? 1 : 0) != *colour0) throw InvalidArgument("HEMAP colour flag disagrees with the root colour");
  }
  return file;
}

HemapFile parse_hemap(const std::string& text) {
  std::istringstream s(text);
  return read_hemap(s);
}

}  // namespace blockmap
