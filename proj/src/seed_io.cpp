#include "kwig/seed_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "kwig/adversarial.hpp"

namespace kwig {

namespace {

constexpr std::uint64_t k_max_serialized_vars = std::uint64_t(1) << 33;

void wr_bytes(std::ostream& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t rd_bytes(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == EOF) throw std::runtime_error("bad seed file: truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

std::uint64_t vertex_count_for_pairs(std::uint64_t m) {
  const std::uint64_t n =
      static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0);
  for (std::uint64_t c = n > 2 ? n - 2 : 2; c <= n + 2; ++c) {
    if (c >= 2 && c * (c - 1) / 2 == m) return c;
  }
  throw std::runtime_error("bad seed file: variable count is not n choose 2");
}

void write_scheme(const VariableScheme& s, std::ostream& out) {
  if (s.M > k_max_serialized_vars) {
    throw std::length_error("scheme too large to serialize");
  }
  out.write("KWIV", 4);
  out.put(1);  // version
  wr_bytes(out, s.M, 8);
  wr_bytes(out, s.k, 2);
  wr_bytes(out, s.p.num, 8);
  wr_bytes(out, s.p.ell, 1);
  wr_bytes(out, s.field.m, 1);
  for (std::uint64_t c : s.seed) wr_bytes(out, c, 8);
  const std::uint64_t nbytes = (s.M + 7) / 8;
  if (s.orientations.uniform_standard()) {
    for (std::uint64_t i = 0; i < nbytes; ++i) out.put(0);
  } else {
    const std::vector<std::uint64_t>& words = s.orientations.words();
    for (std::uint64_t i = 0; i < nbytes; ++i) {
      out.put(static_cast<char>((words[i >> 3] >> ((i & 7) * 8)) & 0xFF));
    }
  }
}

VariableScheme read_scheme(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::string(magic, 4) != "KWIV") {
    throw std::runtime_error("bad seed file: missing scheme magic");
  }
  if (rd_bytes(in, 1) != 1) throw std::runtime_error("bad seed file: unsupported scheme version");
  const std::uint64_t m_vars = rd_bytes(in, 8);
  if (m_vars == 0 || m_vars > k_max_serialized_vars) {
    throw std::runtime_error("bad seed file: variable count out of range");
  }
  const std::uint32_t k = static_cast<std::uint32_t>(rd_bytes(in, 2));
  if (k == 0) throw std::runtime_error("bad seed file: k must be positive");
  const std::uint64_t p_num = rd_bytes(in, 8);
  const std::uint32_t p_ell = static_cast<std::uint32_t>(rd_bytes(in, 1));
  DyadicProb p;
  try {
    p = DyadicProb::make(p_num, p_ell);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("bad seed file: ") + e.what());
  }
  if (p.num != p_num || p.ell != p_ell) {
    throw std::runtime_error("bad seed file: probability not in lowest terms");
  }
  const std::uint32_t m_field = static_cast<std::uint32_t>(rd_bytes(in, 1));
  const FieldSpec f = scheme_field(m_vars, p.ell);
  if (m_field != f.m) throw std::runtime_error("bad seed file: field degree mismatch");

  VariableScheme s;
  s.M = m_vars;
  s.k = k;
  s.p = p;
  s.field = f;
  s.seed.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    s.seed[i] = rd_bytes(in, 8);
    if (s.seed[i] >= f.order()) {
      throw std::runtime_error("bad seed file: coefficient outside the field");
    }
  }
  const std::uint64_t nbytes = (m_vars + 7) / 8;
  std::vector<std::uint64_t> words((m_vars + 63) / 64, 0);
  for (std::uint64_t i = 0; i < nbytes; ++i) {
    const std::uint64_t b = rd_bytes(in, 1);
    words[i >> 3] |= b << ((i & 7) * 8);
  }
  try {
    s.orientations = OrientationMap::from_bitmap(m_vars, std::move(words));
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("bad seed file: ") + e.what());
  }
  return s;
}

void write_node(const EdgeOracle* oracle, std::ostream& out) {
  if (const auto* leaf = dynamic_cast<const SchemeOracle*>(oracle)) {
    out.put(0);
    write_scheme(leaf->scheme(), out);
    return;
  }
  if (const auto* both = dynamic_cast<const AndOracle*>(oracle)) {
    out.put(1);
    write_node(both->left().get(), out);
    write_node(both->right().get(), out);
    return;
  }
  if (const auto* plant = dynamic_cast<const PlantOracle*>(oracle)) {
    out.put(2);
    wr_bytes(out, plant->design().n, 8);
    wr_bytes(out, plant->design().s, 2);
    wr_bytes(out, plant->design().q, 8);
    wr_bytes(out, plant->k(), 2);
    wr_bytes(out, plant->p().num, 8);
    wr_bytes(out, plant->p().ell, 1);
    const auto& pattern = plant->pattern();
    wr_bytes(out, pattern.edges.size(), 2);
    for (const auto& [u, v] : pattern.edges) {
      wr_bytes(out, u, 2);
      wr_bytes(out, v, 2);
    }
    wr_bytes(out, plant->master_seed(), 8);
    return;
  }
  throw std::invalid_argument("unsupported oracle node");
}

ImplicitGraph read_node(std::istream& in, int depth) {
  if (depth > k_max_oracle_depth) {
    throw std::runtime_error("bad seed file: oracle tree deeper than 8");
  }
  const std::uint64_t tag = rd_bytes(in, 1);
  if (tag == 0) {
    VariableScheme s = read_scheme(in);
    ImplicitGraph g;
    g.params.n = vertex_count_for_pairs(s.M);
    g.params.p = s.p;
    g.params.k = s.k;
    g.oracle = std::make_shared<SchemeOracle>(std::move(s));
    return g;
  }
  if (tag == 1) {
    const ImplicitGraph a = read_node(in, depth + 1);
    const ImplicitGraph b = read_node(in, depth + 1);
    try {
      return intersect(a, b);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("bad seed file: ") + e.what());
    }
  }
  if (tag == 2) {
    const std::uint64_t n = rd_bytes(in, 8);
    const std::uint32_t s = static_cast<std::uint32_t>(rd_bytes(in, 2));
    const std::uint64_t q = rd_bytes(in, 8);
    const std::uint32_t k = static_cast<std::uint32_t>(rd_bytes(in, 2));
    const std::uint64_t p_num = rd_bytes(in, 8);
    const std::uint32_t p_ell = static_cast<std::uint32_t>(rd_bytes(in, 1));
    const std::uint64_t e1 = rd_bytes(in, 2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(e1);
    for (auto& [u, v] : edges) {
      u = static_cast<std::uint32_t>(rd_bytes(in, 2));
      v = static_cast<std::uint32_t>(rd_bytes(in, 2));
    }
    const std::uint64_t master = rd_bytes(in, 8);
    try {
      const DyadicProb p = DyadicProb::make(p_num, p_ell);
      if (p.num != p_num || p.ell != p_ell) {
        throw std::runtime_error("probability not in lowest terms");
      }
      const PatternGraph h = PatternGraph::from_edges(s, std::move(edges));
      BlockPlanting bp = plant_pattern(n, s, h, k, p, master);
      if (bp.oracle->design().q != q) {
        throw std::runtime_error("stored prime disagrees with the block design");
      }
      return bp.graph;
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("bad seed file: ") + e.what());
    }
  }
  throw std::runtime_error("bad seed file: unknown node tag " + std::to_string(tag));
}

}  // namespace

void write_graph(const ImplicitGraph& g, std::ostream& out) {
  if (!g.oracle) throw std::invalid_argument("graph has no oracle");
  if (g.oracle->tree_depth() > k_max_oracle_depth) {
    throw std::length_error("oracle tree deeper than 8");
  }
  out.write("KWIG", 4);
  out.put(1);  // version
  write_node(g.oracle.get(), out);
  if (!out) throw std::runtime_error("write failed");
}

ImplicitGraph read_graph(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::string(magic, 4) != "KWIG") {
    throw std::runtime_error("bad seed file: missing magic");
  }
  if (rd_bytes(in, 1) != 1) throw std::runtime_error("bad seed file: unsupported version");
  ImplicitGraph g = read_node(in, 1);
  if (in.peek() != EOF) throw std::runtime_error("bad seed file: trailing bytes");
  return g;
}

void save_graph(const ImplicitGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_graph(g, out);
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

ImplicitGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

void export_edges(const ImplicitGraph& g, std::ostream& out, std::uint64_t limit) {
  const std::uint64_t m = pair_count(g.params.n);
  if (m > limit) {
    throw std::length_error("refusing to export " + std::to_string(m) +
                            " potential edges (limit " + std::to_string(limit) + ")");
  }
  std::uint64_t index = 0;
  for (std::uint64_t v = 1; v < g.params.n; ++v) {
    for (std::uint64_t u = 0; u < v; ++u, ++index) {
      if (g.oracle->edge(u, v, index)) out << u << ' ' << v << '\n';
    }
  }
}

}  // namespace kwig
