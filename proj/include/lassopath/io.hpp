#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lassopath/errors.hpp"
#include "lassopath/format.hpp"
#include "lassopath/graph.hpp"

namespace lassopath {

/// Grayscale raster, row-major, values kept as written (no normalization).
struct Image {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<double> pixels;

  double at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

namespace detail {

/// Skips whitespace and '#'-to-end-of-line comments in a PGM header.
inline void skip_pgm_filler(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

inline long pgm_header_int(std::istream& in, const char* what) {
  skip_pgm_filler(in);
  long v = 0;
  if (!(in >> v)) throw BadPixelFormat(std::string("missing ") + what);
  return v;
}

}  // namespace detail

/// Plain PGM reader, both encodings.  P2 carries ASCII samples, P5 raw bytes
/// (two big-endian bytes per sample when maxval > 255).
inline Image read_pgm(std::istream& in) {
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5")
    throw BadPixelFormat("expected P2 or P5, got '" + magic + "'");
  Image img;
  const long w = detail::pgm_header_int(in, "width");
  const long h = detail::pgm_header_int(in, "height");
  const long maxval = detail::pgm_header_int(in, "maxval");
  if (w < 1 || h < 1)
    throw BadPixelFormat("non-positive image dimensions");
  if (maxval < 1 || maxval > 65535)
    throw BadPixelFormat("maxval " + std::to_string(maxval) + " out of range");
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.maxval = static_cast<int>(maxval);
  const std::size_t count = static_cast<std::size_t>(w) * h;
  img.pixels.reserve(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      detail::skip_pgm_filler(in);
      long v = 0;
      if (!(in >> v)) throw BadPixelFormat("truncated P2 raster");
      if (v < 0 || v > maxval)
        throw BadPixelFormat("sample " + std::to_string(v) +
                             " outside [0, maxval]");
      img.pixels.push_back(static_cast<double>(v));
    }
  } else {
    in.get();  // single whitespace byte separating header from raster
    const int bytes = maxval > 255 ? 2 : 1;
    for (std::size_t i = 0; i < count; ++i) {
      long v = 0;
      for (int b = 0; b < bytes; ++b) {
        const int c = in.get();
        if (c == EOF) throw BadPixelFormat("truncated P5 raster");
        v = (v << 8) | c;
      }
      if (v > maxval)
        throw BadPixelFormat("sample " + std::to_string(v) + " above maxval");
      img.pixels.push_back(static_cast<double>(v));
    }
  }
  return img;
}

inline Image read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return read_pgm(in);
}

/// P2 writer; samples are rounded and clamped to [0, maxval].
inline void write_pgm(std::ostream& out, const Image& img) {
  out << "P2\n" << img.width << " " << img.height << "\n" << img.maxval << "\n";
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      long v = std::lround(img.at(x, y));
      v = std::max(0L, std::min(static_cast<long>(img.maxval), v));
      out << v << (x + 1 == img.width ? '\n' : ' ');
    }
  }
}

/// One intersection of a road file: id and planar position.
struct RoadNode {
  std::int64_t id = 0;
  double x = 0;
  double y = 0;
};

/// One street segment.  The fourth column is either a numeric speed or the
/// name of a speed class resolved against a table at load time.
struct RoadSegment {
  std::int64_t u = 0;
  std::int64_t v = 0;
  double length = 0;
  double speed = -1;        // < 0: unresolved
  std::string speed_class;  // empty when the column was numeric or absent
  int line = 0;             // source line, for error reporting
};

namespace detail {

inline bool blank_or_comment(const std::string& line) {
  for (const char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

/// Node table: `id <x> <y>` per line, '#' comments and blank lines ignored.
inline std::vector<RoadNode> read_road_nodes(std::istream& in) {
  std::vector<RoadNode> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank_or_comment(line)) continue;
    std::istringstream row(line);
    RoadNode n;
    if (!(row >> n.id >> n.x >> n.y))
      throw ParseError("nodes line " + std::to_string(lineno) +
                       ": expected `id x y`");
    std::string extra;
    if (row >> extra)
      throw ParseError("nodes line " + std::to_string(lineno) +
                       ": trailing token '" + extra + "'");
    out.push_back(n);
  }
  return out;
}

/// Segment table: `u v length [speed-or-class]` per line.
inline std::vector<RoadSegment> read_road_segments(std::istream& in) {
  std::vector<RoadSegment> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank_or_comment(line)) continue;
    std::istringstream row(line);
    RoadSegment s;
    s.line = lineno;
    if (!(row >> s.u >> s.v >> s.length))
      throw ParseError("edges line " + std::to_string(lineno) +
                       ": expected `u v length [speed]`");
    std::string tail;
    if (row >> tail) {
      std::istringstream num(tail);
      double speed = 0;
      char left = 0;
      if (num >> speed && !(num >> left)) {
        s.speed = speed;
      } else {
        s.speed_class = tail;
      }
      std::string extra;
      if (row >> extra)
        throw ParseError("edges line " + std::to_string(lineno) +
                         ": trailing token '" + extra + "'");
    }
    out.push_back(s);
  }
  return out;
}

/// Canonical on-disk form of a graph: one `u v weight` line per edge, in edge
/// id order, labels as written by the generator, weights round-trippable.
inline void write_edge_list_tsv(std::ostream& out, const Graph& g) {
  out << "# u\tv\tweight\n";
  for (const Edge& e : g.edges)
    out << g.labels[e.tail] << '\t' << g.labels[e.head] << '\t'
        << g17(e.weight) << '\n';
}

inline std::vector<LabeledEdge> read_edge_list_tsv(std::istream& in) {
  std::vector<LabeledEdge> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank_or_comment(line)) continue;
    std::istringstream row(line);
    LabeledEdge e;
    if (!(row >> e.u >> e.v >> e.w))
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": expected `u v weight`");
    std::string extra;
    if (row >> extra)
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": trailing token '" + extra + "'");
    out.push_back(e);
  }
  return out;
}

/// Vertex positions, aligned with the edge list by label.
inline void write_coords_tsv(
    std::ostream& out, const Graph& g,
    const std::vector<std::array<double, 2>>& coords) {
  out << "# id\tx\ty\n";
  for (int v = 0; v < g.n; ++v)
    out << g.labels[v] << '\t' << g17(coords[v][0]) << '\t'
        << g17(coords[v][1]) << '\n';
}

}  // namespace lassopath
