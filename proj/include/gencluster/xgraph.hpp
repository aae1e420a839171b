#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gencluster/dmat.hpp"
#include "gencluster/expr_text.hpp"

namespace gencluster {

// Thrown by checks that need a fully enumerated graph when handed a
// budget-truncated one.
struct IncompleteGraphError : std::runtime_error {
  explicit IncompleteGraphError(const std::string& what) : std::runtime_error(what) {}
};

// ---- canonical keys -----------------------------------------------------------

namespace xgraphdetail {

// least byte encoding over all simultaneous relabelings: position i takes the
// data of index perm[i], matrix entries are permuted on both sides
template <class PartFn, class EntryFn>
std::string least_encoding(std::size_t n, PartFn&& part, EntryFn&& entry) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::string cur;
    for (std::size_t i = 0; i < n; ++i) {
      cur += part(perm[i]);
      cur += '\n';
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cur += entry(perm[i], perm[j]);
        cur += ',';
      }
    if (first || cur < best) {
      best = std::move(cur);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace xgraphdetail

// Seeds are compared up to joint relabeling of (x_i, y_i) together with rows
// and columns of the exchange matrix; the expressions themselves stay written
// in the fixed initial variables.
inline std::string canonical_seed_key(const Seed& seed) {
  const std::size_t n = seed.x.size();
  std::vector<std::string> parts(n);
  for (std::size_t i = 0; i < n; ++i)
    parts[i] = to_string(seed.x[i]) + ";" + to_string(seed.y[i]);
  return xgraphdetail::least_encoding(
      n, [&](std::size_t i) { return parts[i]; },
      [&](std::size_t i, std::size_t j) { return seed.b(i, j).get_str(); });
}

// Matrix seeds permute denominator-matrix columns only (rows index the fixed
// initial cluster) and the exchange matrix on both sides.
inline std::string canonical_matrix_seed_key(const MatrixSeed& ms) {
  const std::size_t n = ms.q.rows();
  return xgraphdetail::least_encoding(
      n,
      [&](std::size_t i) {
        std::string s;
        for (std::size_t row = 0; row < n; ++row) {
          if (row) s += ',';
          s += ms.d(row, i).get_str();
        }
        return s;
      },
      [&](std::size_t i, std::size_t j) { return ms.q(i, j).get_str(); });
}

// ---- enumeration ---------------------------------------------------------------

template <class State>
struct GraphResult {
  std::size_t rank = 0;
  std::vector<std::string> keys;    // canonical key per vertex, discovery order
  std::vector<State> reps;          // first state seen in each class
  std::map<std::string, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // a <= b
  std::map<std::pair<std::size_t, std::size_t>, std::set<int>> directions;  // 1-based
  bool complete = false;
  bool has_self_loop = false;

  std::size_t vertex_count() const { return keys.size(); }
  std::size_t edge_count() const { return edges.size(); }
  bool adjacent(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return edges.count({a, b}) > 0;
  }
};

// Breadth-first closure under the n mutation directions, deduplicated by
// canonical key. Neighbor states and keys for a whole layer are computed
// (optionally on several threads) before a serial merge, so the result is
// identical for any thread count.
template <class State, class Mut, class Key>
GraphResult<State> enumerate_graph(const State& root, std::size_t n, std::size_t budget,
                                   Mut&& mut, Key&& key, unsigned threads = 1) {
  if (budget == 0) throw ConfigError("vertex budget must be at least 1");
  if (n == 0) throw ConfigError("rank must be positive");
  GraphResult<State> g;
  g.rank = n;
  g.keys.push_back(key(root));
  g.reps.push_back(root);
  g.index.emplace(g.keys[0], 0);

  struct Item {
    std::size_t parent = 0;
    int k = 0;
    State state;
    std::string key;
  };

  std::vector<std::size_t> frontier{0};
  bool overflow = false;
  while (!frontier.empty() && !overflow) {
    std::vector<Item> items(frontier.size() * n);
    auto fill = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t idx = lo; idx < hi; ++idx) {
        const std::size_t parent = frontier[idx / n];
        const int k = static_cast<int>(idx % n);
        Item& it = items[idx];
        it.parent = parent;
        it.k = k;
        it.state = mut(g.reps[parent], static_cast<std::size_t>(k));
        it.key = key(it.state);
      }
    };
    if (threads <= 1 || items.size() < 2) {
      fill(0, items.size());
    } else {
      const unsigned nt = std::min<unsigned>(threads, static_cast<unsigned>(items.size()));
      std::vector<std::thread> pool;
      const std::size_t chunk = (items.size() + nt - 1) / nt;
      for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(items.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(fill, lo, hi);
      }
      for (auto& th : pool) th.join();
    }

    std::vector<std::size_t> next;
    for (Item& it : items) {
      auto found = g.index.find(it.key);
      std::size_t id;
      if (found == g.index.end()) {
        if (g.keys.size() == budget) {
          overflow = true;
          break;
        }
        id = g.keys.size();
        g.index.emplace(it.key, id);
        g.keys.push_back(std::move(it.key));
        g.reps.push_back(std::move(it.state));
        next.push_back(id);
      } else {
        id = found->second;
      }
      const auto e = std::minmax(it.parent, id);
      g.edges.insert(e);
      g.directions[e].insert(it.k + 1);
      if (it.parent == id) g.has_self_loop = true;
    }
    frontier = std::move(next);
  }
  g.complete = !overflow;
  return g;
}

inline GraphResult<Seed> enumerate_exchange_graph(const PatternConfig& cfg, std::size_t budget,
                                                  unsigned threads = 1) {
  return enumerate_graph(
      apply_walk(cfg, {}), cfg.rank(), budget,
      [&cfg](const Seed& s, std::size_t k) { return mutate(cfg, s, k); },
      [](const Seed& s) { return canonical_seed_key(s); }, threads);
}

inline GraphResult<MatrixSeed> enumerate_w_graph(const IntMat& q0, std::size_t budget,
                                                 unsigned threads = 1) {
  return enumerate_graph(
      initial_matrix_seed(q0), q0.rows(), budget,
      [](const MatrixSeed& ms, std::size_t k) { return mutate_matrix_seed(ms, k); },
      [](const MatrixSeed& ms) { return canonical_matrix_seed_key(ms); }, threads);
}

// ---- graph comparison ----------------------------------------------------------

// Walks the class graph of cfg while mutating, in lockstep, the seed with the
// given coefficients, the seed with principal-type coefficients, and the
// matrix seed. All three equivalence partitions must assign classes in the
// same order at every step; any divergence is reported with the walk that
// exposed it.
inline IdentityReport graphs_agree(const PatternConfig& cfg, std::size_t budget) {
  const std::size_t n = cfg.rank();
  const auto b0i = to_int(cfg.b0);
  if (!b0i) throw ConfigError("graph comparison needs an integral exchange matrix");
  PatternConfig prin = principal_config(*b0i, cfg.kit.r);

  struct Node {
    Seed m;
    Seed pr;
    MatrixSeed w;
    std::vector<int> walk;
  };
  Node root{apply_walk(cfg, {}), apply_walk(prin, {}),
            initial_matrix_seed(scale_cols_by(*b0i, cfg.kit.r)),
            {}};

  std::map<std::string, std::size_t> im, ipr, iw;
  im.emplace(canonical_seed_key(root.m), 0);
  ipr.emplace(canonical_seed_key(root.pr), 0);
  iw.emplace(canonical_matrix_seed_key(root.w), 0);

  std::vector<Node> frontier{std::move(root)};
  std::size_t classes = 1;
  bool truncated = false;
  while (!frontier.empty() && !truncated) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (std::size_t k = 0; k < n && !truncated; ++k) {
        Node child{mutate(cfg, node.m, k), mutate(prin, node.pr, k),
                   mutate_matrix_seed(node.w, k), node.walk};
        child.walk.push_back(static_cast<int>(k));

        const std::string km = canonical_seed_key(child.m);
        const std::string kp = canonical_seed_key(child.pr);
        const std::string kw = canonical_matrix_seed_key(child.w);
        const auto fm = im.find(km);
        const auto fp = ipr.find(kp);
        const auto fw = iw.find(kw);
        const bool newm = fm == im.end(), newp = fp == ipr.end(), neww = fw == iw.end();
        if (newm != newp || newm != neww) {
          std::ostringstream os;
          os << "class membership diverges after walk [";
          for (std::size_t s = 0; s < child.walk.size(); ++s)
            os << (s ? "," : "") << child.walk[s] + 1;
          os << "]: given " << (newm ? "new" : "seen") << ", principal "
             << (newp ? "new" : "seen") << ", matrix " << (neww ? "new" : "seen");
          return {false, os.str()};
        }
        if (newm) {
          if (classes == budget) {
            truncated = true;
            break;
          }
          im.emplace(km, classes);
          ipr.emplace(kp, classes);
          iw.emplace(kw, classes);
          ++classes;
          next.push_back(std::move(child));
        } else if (fm->second != fp->second || fm->second != fw->second) {
          std::ostringstream os;
          os << "class identity diverges after walk [";
          for (std::size_t s = 0; s < child.walk.size(); ++s)
            os << (s ? "," : "") << child.walk[s] + 1;
          os << "]: given " << fm->second << ", principal " << fp->second << ", matrix "
             << fw->second;
          return {false, os.str()};
        }
      }
    }
    frontier = std::move(next);
  }
  std::ostringstream os;
  os << classes << " classes, " << (truncated ? "budget-truncated" : "complete");
  return {true, os.str()};
}

// ---- theorem checks over an enumerated graph -----------------------------------

inline std::vector<std::string> cluster_strings(const Seed& s) {
  std::vector<std::string> v;
  v.reserve(s.x.size());
  for (const auto& x : s.x) v.push_back(to_string(x));
  std::sort(v.begin(), v.end());
  return v;
}

// No two distinct classes may carry the same unordered cluster.
inline IdentityReport cluster_determines_seed(const GraphResult<Seed>& g) {
  std::map<std::string, std::size_t> seen;
  for (std::size_t id = 0; id < g.reps.size(); ++id) {
    const auto cs = cluster_strings(g.reps[id]);
    std::string key;
    for (const auto& s : cs) {
      key += s;
      key += '\n';
    }
    auto [it, fresh] = seen.emplace(std::move(key), id);
    if (!fresh) {
      std::ostringstream os;
      os << "vertices " << it->second << " and " << id << " share a cluster";
      return {false, os.str()};
    }
  }
  return {true, std::to_string(g.reps.size()) + " distinct clusters"};
}

namespace xgraphdetail {

inline std::size_t shared_count(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) ++c, ++i, ++j;
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return c;
}

}  // namespace xgraphdetail

// Adjacency in the complete graph must coincide with sharing exactly n-1
// cluster variables.
inline IdentityReport adjacency_iff_common(const GraphResult<Seed>& g) {
  if (!g.complete)
    throw IncompleteGraphError("adjacency check needs a complete exchange graph");
  const std::size_t n = g.rank;
  std::vector<std::vector<std::string>> clusters;
  clusters.reserve(g.reps.size());
  for (const auto& s : g.reps) clusters.push_back(cluster_strings(s));
  for (std::size_t u = 0; u < clusters.size(); ++u)
    for (std::size_t v = u + 1; v < clusters.size(); ++v) {
      const std::size_t shared = xgraphdetail::shared_count(clusters[u], clusters[v]);
      const bool adj = g.adjacent(u, v);
      if (adj != (shared == n - 1)) {
        std::ostringstream os;
        os << "vertices " << u << " and " << v << ": " << (adj ? "adjacent" : "not adjacent")
           << " but share " << shared << " of " << n << " variables";
        return {false, os.str()};
      }
    }
  return {true, "checked " + std::to_string(clusters.size()) + " vertices"};
}

// ---- finite type ---------------------------------------------------------------

struct FiniteTypeReport {
  bool gen_complete = false;
  bool std_complete = false;
  std::size_t gen_vertices = 0;
  std::size_t std_vertices = 0;
  bool agree = false;
  std::string detail;
};

// The degree-weighted pattern closes within the budget exactly when the
// degree-one pattern with the column-scaled exchange matrix does, and the
// graphs then have the same size.
inline FiniteTypeReport finite_type_report(const IntMat& b0, const std::vector<Int>& r,
                                           std::size_t budget, unsigned threads = 1) {
  FiniteTypeReport rep;
  const auto gen = enumerate_exchange_graph(trivial_config(b0, r), budget, threads);
  const auto std_g = enumerate_exchange_graph(
      trivial_config(scale_cols_by(b0, r), std::vector<Int>(r.size(), Int(1))), budget, threads);
  rep.gen_complete = gen.complete;
  rep.std_complete = std_g.complete;
  rep.gen_vertices = gen.vertex_count();
  rep.std_vertices = std_g.vertex_count();
  rep.agree = gen.complete == std_g.complete &&
              (!gen.complete || (gen.vertex_count() == std_g.vertex_count() &&
                                 gen.edge_count() == std_g.edge_count()));
  std::ostringstream os;
  os << "degree-weighted: " << rep.gen_vertices << " vertices ("
     << (rep.gen_complete ? "complete" : "truncated") << "), degree-one: " << rep.std_vertices
     << " vertices (" << (rep.std_complete ? "complete" : "truncated") << ")";
  rep.detail = os.str();
  return rep;
}

// ---- export --------------------------------------------------------------------

template <class State>
std::string to_dot(const GraphResult<State>& g) {
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t i = 0; i < g.keys.size(); ++i)
    os << "  v" << i << " [label=\"v" << i << ":" << xgraphdetail::fnv1a_hex(g.keys[i])
       << "\"];\n";
  for (const auto& e : g.edges) {
    os << "  v" << e.first << " -- v" << e.second;
    auto d = g.directions.find(e);
    if (d != g.directions.end()) {
      os << " [label=\"";
      bool first = true;
      for (int k : d->second) {
        if (!first) os << ",";
        os << k;
        first = false;
      }
      os << "\"]";
    }
    os << ";\n";
  }
  if (!g.complete) os << "  // truncated at vertex budget\n";
  os << "}\n";
  return os.str();
}

}  // namespace gencluster
