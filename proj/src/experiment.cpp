#include "kwig/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kwig/verify.hpp"

namespace kwig {

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("KWIG_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : std::min(hw, 256u);
}

void parallel_for(std::uint64_t items, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn) {
  if (items == 0) return;
  threads = std::max(1u, std::min<unsigned>(threads, 256));
  if (threads == 1 || items == 1) {
    for (std::uint64_t i = 0; i < items; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= items) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::uint64_t>(threads, items); ++t) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const char* construction_name(Construction c) {
  switch (c) {
    case Construction::plain:
      return "plain";
    case Construction::intersection:
      return "intersect";
    case Construction::clique_partition:
      return "clique-partition";
    case Construction::plant:
      return "plant";
  }
  return "?";
}

namespace {

const char* const k_columns[] = {
    "schema_version", "cell",        "trial",          "n",
    "p_num",          "p_ell",       "k",              "construction",
    "suite",          "edges",       "min_degree",     "max_degree",
    "components",     "connected",   "eps_obs",        "gamma_obs",
    "lambda",         "worst_dev",   "kappa",          "matching",
    "perfect_matching", "hamilton",  "independence_lo", "independence_hi",
    "independence_exact", "pattern_found"};
constexpr std::size_t k_column_total = sizeof(k_columns) / sizeof(k_columns[0]);

std::string fmt_real(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12Lg", v);
  return buf;
}

struct Cell {
  std::uint64_t n = 0;
  DyadicProb p;
  std::uint32_t k = 1;
};

struct Row {
  std::vector<std::string> col;
  Row() : col(k_column_total) {}
};

void measure_degrees(const ExplicitGraph& g, DyadicProb p, Row& row) {
  const DegreeProfile prof = degree_codegree_profile(g, p);
  row.col[9] = std::to_string(g.edge_count());
  row.col[10] = std::to_string(prof.min_degree);
  row.col[11] = std::to_string(prof.max_degree);
  row.col[14] = fmt_real(prof.eps_obs);
  row.col[15] = fmt_real(prof.gamma_obs);
}

void measure_connectivity(const ExplicitGraph& g, Row& row) {
  const Components comp = components(g);
  row.col[9] = std::to_string(g.edge_count());
  row.col[10] = std::to_string(g.min_degree());
  row.col[12] = std::to_string(comp.count);
  row.col[13] = comp.count <= 1 ? "1" : "0";
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads) {
  if (spec.n_values.empty() || spec.p_values.empty() || spec.k_values.empty()) {
    throw std::invalid_argument("experiment grid needs n, p and k values");
  }
  // trials == 0 is allowed: header-only CSV, summary lists the cells.
  static const std::set<std::string> known_suites = {
      "degrees", "connectivity", "spectral",     "kappa", "matching",
      "hamilton", "independence", "plant",       "basic"};
  if (!known_suites.count(spec.suite)) {
    throw std::invalid_argument("unknown suite '" + spec.suite + "'");
  }
  if (spec.construction == Construction::plant) {
    if (spec.plant_s < 2 || spec.plant_shape.s != spec.plant_s) {
      throw std::invalid_argument("plant construction needs a pattern on plant_s vertices");
    }
  }

  std::vector<Cell> cells;
  for (std::uint64_t n : spec.n_values) {
    for (const DyadicProb& p : spec.p_values) {
      for (std::uint32_t k : spec.k_values) cells.push_back(Cell{n, p, k});
    }
  }

  const std::uint64_t total = cells.size() * spec.trials;
  std::vector<Row> rows(total);

  auto run_one = [&](std::uint64_t item) {
    const std::uint64_t cell_index = item / spec.trials;
    const std::uint32_t trial = static_cast<std::uint32_t>(item % spec.trials);
    const Cell& cell = cells[cell_index];
    Rng rng = Rng(spec.master_seed, "experiment").derive(cell_index).derive(trial);

    Row& row = rows[item];
    row.col[0] = "1";
    row.col[1] = std::to_string(cell_index);
    row.col[2] = std::to_string(trial);
    row.col[3] = std::to_string(cell.n);
    row.col[4] = std::to_string(cell.p.num);
    row.col[5] = std::to_string(cell.p.ell);
    row.col[6] = std::to_string(cell.k);
    row.col[7] = construction_name(spec.construction);
    row.col[8] = spec.suite;

    // Planted graphs are handled through their oracle; everything else is
    // materialized for whole-graph measurement.
    if (spec.construction == Construction::plant) {
      const std::uint64_t master = rng.next();
      const BlockPlanting bp =
          plant_pattern(cell.n, spec.plant_s, spec.plant_shape, cell.k, cell.p, master);
      if (spec.suite == "plant") {
        const auto found = bp.oracle->find_block_realizing(bp.oracle->design().block_total());
        bool ok = false;
        if (found) {
          std::vector<std::uint64_t> verts;
          bp.oracle->design().block_vertices(*found, verts);
          ok = verify_pattern_copy(
              [&](std::uint64_t a, std::uint64_t b) { return bp.graph.has_edge(a, b); },
              spec.plant_shape, verts, true);
        }
        row.col[25] = ok ? "1" : "0";
        return;
      }
      const ExplicitGraph g = materialize(bp.graph);
      measure_connectivity(g, row);
      return;
    }

    ExplicitGraph g(2);
    if (spec.construction == Construction::clique_partition) {
      g = sample_clique_partition(cell.n, rng).materialize();
    } else if (spec.construction == Construction::intersection) {
      const ImplicitGraph a = make_graph(cell.n, cell.p, cell.k, rng);
      const ImplicitGraph b = make_graph(cell.n, cell.p, cell.k, rng);
      g = materialize(intersect(a, b));
    } else {
      g = materialize(make_graph(cell.n, cell.p, cell.k, rng));
    }
    const DyadicProb density =
        spec.construction == Construction::intersection ? cell.p.times(cell.p) : cell.p;

    if (spec.suite == "degrees") {
      measure_degrees(g, density, row);
    } else if (spec.suite == "connectivity") {
      measure_connectivity(g, row);
    } else if (spec.suite == "basic") {
      measure_connectivity(g, row);
      measure_degrees(g, density, row);
    } else if (spec.suite == "spectral") {
      const SpectralResult sr = spectral_radius_shifted(g, density, 1e-6, 50000, rng.derive(1));
      row.col[16] = fmt_real(sr.lambda);
      const JumblednessReport jr =
          jumbledness_check(g, density, sr.lambda, 60, rng.derive(2));
      row.col[17] = fmt_real(jr.worst_dev);
    } else if (spec.suite == "kappa") {
      const ConnectivityResult cr = vertex_connectivity(g);
      row.col[10] = std::to_string(g.min_degree());
      row.col[18] = std::to_string(cr.kappa);
    } else if (spec.suite == "matching") {
      const std::vector<std::int32_t> mate = max_matching(g);
      row.col[19] = std::to_string(matching_size(mate));
      row.col[20] = (g.n() % 2 == 0 && matching_size(mate) * 2 == g.n()) ? "1" : "0";
    } else if (spec.suite == "hamilton") {
      const HamiltonResult hr = hamiltonian_certificate(g, 20, rng.derive(3));
      row.col[21] = hr.status == HamiltonResult::Status::found ? "1" : "0";
    } else if (spec.suite == "independence") {
      const SearchResult ir = independence_number(g);
      row.col[22] = std::to_string(ir.lower);
      row.col[23] = std::to_string(ir.upper);
      row.col[24] = ir.exact ? "1" : "0";
    }
  };

  parallel_for(total, threads, run_one);

  std::ostringstream csv;
  for (std::size_t c = 0; c < k_column_total; ++c) {
    if (c) csv << ',';
    csv << k_columns[c];
  }
  csv << '\n';
  for (const Row& row : rows) {
    for (std::size_t c = 0; c < k_column_total; ++c) {
      if (c) csv << ',';
      csv << row.col[c];
    }
    csv << '\n';
  }

  // Summary: means for numeric columns, success fractions with normal-
  // approximation half-widths for 0/1 columns.
  std::ostringstream sum;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    sum << "cell " << ci << ": n=" << cell.n << " p=" << cell.p.num << "/2^" << cell.p.ell
        << " k=" << cell.k << " construction=" << construction_name(spec.construction)
        << " suite=" << spec.suite << " trials=" << spec.trials << '\n';
    for (std::size_t c = 9; c < k_column_total; ++c) {
      bool present = false, boolean = true;
      long double total_v = 0.0L;
      std::uint64_t count = 0, ones = 0;
      for (std::uint32_t t = 0; t < spec.trials; ++t) {
        const std::string& v = rows[ci * spec.trials + t].col[c];
        if (v.empty()) continue;
        present = true;
        ++count;
        total_v += strtold(v.c_str(), nullptr);
        if (v == "1") {
          ++ones;
        } else if (v != "0") {
          boolean = false;
        }
      }
      if (!present) continue;
      if (boolean) {
        const long double f = static_cast<long double>(ones) / count;
        const long double half = 1.96L * sqrtl(f * (1.0L - f) / count);
        sum << "  " << k_columns[c] << ": " << ones << "/" << count
            << " (fraction " << fmt_real(f) << " +/- " << fmt_real(half) << ")\n";
      } else {
        sum << "  " << k_columns[c] << ": mean " << fmt_real(total_v / count) << '\n';
      }
    }
  }

  ExperimentResult out;
  out.csv = csv.str();
  out.summary = sum.str();
  return out;
}

}  // namespace kwig
