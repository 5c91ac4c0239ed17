#pragma once

#include <iosfwd>
#include <string>

#include "kwig/graph.hpp"

// Binary seed files.  A graph file is "KWIG", a version byte, then one node
// in pre-order:
//
//   tag 0  scheme leaf: a "KWIV" record — magic, version byte, M (8 LE),
//          k (2 LE), p numerator (8 LE), p exponent (1), field degree (1),
//          k coefficients (8 LE each, constant term first), then ceil(M/8)
//          orientation bytes (bit j of byte j>>3 at position j&7; set bit =
//          flipped threshold).
//   tag 1  intersection: two child nodes follow.
//   tag 2  block planting: n (8 LE), s (2 LE), q (8 LE), k (2 LE),
//          p numerator (8 LE), p exponent (1), pattern edge count (2 LE),
//          that many (u 2 LE, v 2 LE) pairs, master seed (8 LE).  Block and
//          residual seeds are re-derived from the master seed, so the field
//          degree and all coefficients are implied.
//
// All integers are little-endian.  Loaders validate magic, version, field
// consistency, coefficient ranges, probability validity, tree depth, and
// (for plantings) that q is the block-design prime for (n, s); any mismatch
// raises std::runtime_error mentioning what failed.

namespace kwig {

void write_graph(const ImplicitGraph& g, std::ostream& out);
ImplicitGraph read_graph(std::istream& in);

void save_graph(const ImplicitGraph& g, const std::string& path);
ImplicitGraph load_graph(const std::string& path);

// Streams "u v" lines, zero-based, in edge-index order.  Refuses graphs
// with more than `limit` potential edges.
void export_edges(const ImplicitGraph& g, std::ostream& out,
                  std::uint64_t limit = std::uint64_t(1) << 31);

}  // namespace kwig
