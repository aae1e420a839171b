#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gencluster/gencluster.hpp"

namespace gc = gencluster;

namespace {

// walks on the command line are comma-separated and 1-based
std::vector<int> parse_walk(const std::string& text) {
  std::vector<int> walk;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    const auto a = tok.find_first_not_of(" \t");
    if (a == std::string::npos) throw gc::ConfigError("empty entry in walk '" + text + "'");
    const auto b = tok.find_last_not_of(" \t");
    tok = tok.substr(a, b - a + 1);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      throw gc::ConfigError("bad walk entry '" + tok + "'");
    }
    if (used != tok.size()) throw gc::ConfigError("bad walk entry '" + tok + "'");
    if (v < 1) throw gc::ConfigError("walk directions are 1-based, got '" + tok + "'");
    walk.push_back(static_cast<int>(v - 1));
  }
  return walk;
}

gc::Json walk_to_json(const std::vector<int>& walk) {
  gc::Json a = gc::Json::array();
  for (int k : walk) a.push_back(k + 1);
  return a;
}

gc::PatternConfig load_config(const std::string& file, bool standard) {
  gc::LoadedPattern lp = gc::load_pattern_file(file);
  return standard ? gc::standard_config_of(lp.config) : lp.config;
}

gc::PatternConfig companion_of(const gc::PatternConfig& cfg) {
  const auto b0i = gc::to_int(cfg.b0);
  if (!b0i) throw gc::ConfigError("needs an integral exchange matrix");
  return gc::principal_config(*b0i, cfg.kit.r);
}

std::string vec_text(const std::vector<gc::Int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

// ---- mutate ----------------------------------------------------------------

int cmd_mutate(const std::string& file, const std::string& walk_str, const std::string& show,
               bool json, bool standard) {
  const gc::PatternConfig cfg = load_config(file, standard);
  const std::vector<int> walk = parse_walk(walk_str);
  const gc::Seed seed = gc::apply_walk(cfg, walk);
  const bool all = show == "all";

  gc::Json out;
  std::string text;
  if (all || show == "x") {
    gc::Json xs = gc::Json::array();
    for (std::size_t i = 0; i < seed.x.size(); ++i) {
      text += "x" + std::to_string(i + 1) + " = " + gc::to_string(seed.x[i]) + "\n";
      xs.push_back(gc::to_string(seed.x[i]));
    }
    out["x"] = std::move(xs);
  }
  if (all || show == "y") {
    gc::Json ys = gc::Json::array();
    for (std::size_t i = 0; i < seed.y.size(); ++i) {
      text += "y" + std::to_string(i + 1) + " = " + gc::to_string(seed.y[i]) + "\n";
      ys.push_back(gc::element_to_json(seed.y[i]));
    }
    out["y"] = std::move(ys);
  }
  if (all || show == "b") {
    text += "B = " + gc::to_string(seed.b) + "\n";
    out["B"] = gc::rat_mat_to_json(seed.b);
  }
  if (show == "c" || (all && cfg.frozen)) {
    const gc::IntMat c = gc::c_matrix_of(cfg, seed);
    text += "C = " + gc::to_string(c) + "\n";
    out["C"] = gc::int_mat_to_json(c);
  }
  if (all || show == "g") {
    const gc::IntMat g = gc::g_matrix_of(companion_of(cfg), walk);
    text += "G = " + gc::to_string(g) + "\n";
    out["G"] = gc::int_mat_to_json(g);
  }
  if (all || show == "d") {
    const gc::IntMat d = gc::d_matrix_of(seed);
    text += "D = " + gc::to_string(d) + "\n";
    out["D"] = gc::int_mat_to_json(d);
  }
  out["walk"] = walk_to_json(walk);

  if (json)
    std::cout << out.dump(2) << "\n";
  else
    std::cout << text;
  return 0;
}

// ---- verify ----------------------------------------------------------------

gc::IdentityReport run_identity(const std::string& name, const gc::PatternConfig& cfg,
                                const std::vector<int>& walk) {
  if (name == "cluster-formula") {
    const gc::ChainResult cr = gc::h_matrix_chain(cfg, walk);
    return gc::verify_cluster_formula(cfg, cr.h, cr.seed.b, walk.size());
  }
  if (name == "two-form") {
    const gc::ChainResult cr = gc::h_matrix_chain(cfg, walk);
    return gc::verify_two_form_law(cr.h, gc::omega_of(cfg, cr.seed.b),
                                   gc::omega_of(cfg, cfg.b0));
  }
  if (name == "c-g-duality") {
    const gc::PatternConfig comp = companion_of(cfg);
    const gc::IntMat c = gc::c_matrix_of(comp, gc::apply_walk(comp, walk));
    const gc::IntMat g = gc::g_matrix_of(comp, walk);
    if (!gc::g_duality_holds(comp, c, g))
      return {false,
              "duality product differs from the identity: C = " + gc::to_string(c) +
                  ", G = " + gc::to_string(g)};
    return {};
  }
  if (name == "separation") {
    const gc::Seed rec = gc::reconstruct_seed(cfg, walk);
    const gc::Seed dir = gc::apply_walk(cfg, walk);
    for (std::size_t i = 0; i < cfg.rank(); ++i) {
      if (!(rec.x[i] == dir.x[i]))
        return {false, "x" + std::to_string(i + 1) + ": reconstructed " +
                           gc::to_string(rec.x[i]) + ", direct " + gc::to_string(dir.x[i])};
      if (rec.y[i] != dir.y[i])
        return {false, "y" + std::to_string(i + 1) + ": reconstructed " +
                           gc::to_string(rec.y[i]) + ", direct " + gc::to_string(dir.y[i])};
    }
    if (!(rec.b == dir.b))
      return {false, "exchange matrix: reconstructed " + gc::to_string(rec.b) + ", direct " +
                         gc::to_string(dir.b)};
    return {};
  }
  if (name == "d-recurrence") {
    const auto b0i = gc::to_int(cfg.b0);
    if (!b0i) throw gc::ConfigError("needs an integral exchange matrix");
    const gc::IntMat q0 = gc::scale_cols_by(*b0i, cfg.kit.r);
    const gc::MatrixSeed ms = gc::matrix_seed_along(q0, walk);
    const gc::IntMat dm = gc::d_matrix_of(gc::apply_walk(cfg, walk));
    if (!(dm == ms.d))
      return {false, gc::dmatdetail::mat_witness("denominator matrix", ms.d, dm)};
    return gc::d_vectors_match_standard(*b0i, cfg.kit.r, walk);
  }
  throw gc::ConfigError("unknown identity '" + name + "'");
}

int cmd_verify(const std::string& file, const std::string& identity, unsigned walks,
               unsigned max_len, std::uint64_t rng_seed, bool standard) {
  const gc::PatternConfig cfg = load_config(file, standard);
  const std::size_t n = cfg.rank();
  std::mt19937_64 rng(rng_seed);

  gc::Json rep;
  rep["identity"] = identity;
  rep["rng_seed"] = rng_seed;
  gc::Json wreps = gc::Json::array();
  bool all_pass = true;
  for (unsigned w = 0; w < walks; ++w) {
    std::vector<int> walk(rng() % (static_cast<std::uint64_t>(max_len) + 1));
    for (int& k : walk) k = static_cast<int>(rng() % n);
    const gc::IdentityReport r = run_identity(identity, cfg, walk);
    gc::Json wr;
    wr["walk"] = walk_to_json(walk);
    wr["pass"] = r.pass;
    if (!r.detail.empty()) wr["witness"] = r.detail;
    wreps.push_back(std::move(wr));
    all_pass = all_pass && r.pass;
  }
  rep["walks"] = std::move(wreps);
  rep["pass"] = all_pass;
  std::cout << rep.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// ---- fpoly -----------------------------------------------------------------

int cmd_fpoly(const std::string& file, const std::string& walk_str, int index, bool json,
              bool standard) {
  const gc::PatternConfig cfg = load_config(file, standard);
  const std::vector<int> walk = parse_walk(walk_str);
  const gc::PatternConfig comp = companion_of(cfg);
  const gc::Seed sp = gc::apply_walk(comp, walk);
  const gc::IntMat c = gc::c_matrix_of(comp, sp);
  const std::size_t n = comp.rank();
  if (index != 0 && (index < 1 || static_cast<std::size_t>(index) > n))
    throw gc::ConfigError("index out of range");

  gc::Json entries = gc::Json::array();
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (index != 0 && static_cast<std::size_t>(index - 1) != i) continue;
    const gc::XFunction xf = gc::x_function_of(sp, i);
    const std::vector<gc::Int> g = gc::g_vector(comp, xf);
    std::vector<gc::Int> cv(n);
    for (std::size_t j = 0; j < n; ++j) cv[j] = c(j, i);
    const std::string fs = gc::to_string(gc::f_polynomial(xf));
    const std::string tag = std::to_string(i + 1);
    text += "F" + tag + " = " + fs + "\n";
    text += "g" + tag + " = " + vec_text(g) + "\n";
    text += "c" + tag + " = " + vec_text(cv) + "\n";
    gc::Json e;
    e["index"] = i + 1;
    e["F"] = fs;
    gc::Json gj = gc::Json::array();
    for (const auto& v : g) gj.push_back(gc::jsondetail::int_to_json(v));
    e["g"] = std::move(gj);
    gc::Json cj = gc::Json::array();
    for (const auto& v : cv) cj.push_back(gc::jsondetail::int_to_json(v));
    e["c"] = std::move(cj);
    entries.push_back(std::move(e));
  }

  if (json) {
    gc::Json out;
    out["walk"] = walk_to_json(walk);
    out["entries"] = std::move(entries);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return 0;
}

// ---- graph -----------------------------------------------------------------

int cmd_graph(const std::string& file, std::size_t budget, const std::string& format,
              const std::string& check, unsigned threads, bool standard) {
  const gc::PatternConfig cfg = load_config(file, standard);
  const auto g = gc::enumerate_exchange_graph(cfg, budget, threads);

  int rc = 0;
  gc::Json checkj;
  if (!check.empty()) {
    gc::IdentityReport rep;
    if (check == "agree")
      rep = gc::graphs_agree(cfg, budget);
    else if (check == "cluster-determines-seed")
      rep = gc::cluster_determines_seed(g);
    else if (check == "adjacency")
      rep = gc::adjacency_iff_common(g);
    else
      throw gc::ConfigError("unknown check '" + check + "'");
    rc = rep.pass ? 0 : 1;
    if (format == "json") {
      checkj["name"] = check;
      checkj["pass"] = rep.pass;
      checkj["detail"] = rep.detail;
    } else {
      std::cerr << "check " << check << ": " << (rep.pass ? "pass" : "fail")
                << (rep.detail.empty() ? "" : " (" + rep.detail + ")") << "\n";
    }
  }

  if (format == "dot") {
    std::cout << gc::to_dot(g);
  } else {
    gc::Json out = gc::graph_to_json(g);
    if (!checkj.is_null()) out["check"] = std::move(checkj);
    std::cout << out.dump(2) << "\n";
  }
  return rc;
}

// ---- recover ---------------------------------------------------------------

int cmd_recover(const std::string& file, const std::string& cluster_file,
                const std::string& what, bool json, bool standard) {
  const gc::PatternConfig cfg = load_config(file, standard);
  const std::vector<gc::RationalFn> xt = gc::load_cluster_file(cfg.ctx, cluster_file);

  gc::Json out;
  std::string text;
  if (what == "b" || what == "both") {
    const gc::RatMat b = gc::recover_b_from_cluster(cfg, xt);
    text += "B = " + gc::to_string(b) + "\n";
    out["B"] = gc::rat_mat_to_json(b);
  }
  if (what == "c" || what == "both") {
    const gc::IntMat c = gc::recover_c_from_cluster(cfg, xt);
    text += "C = " + gc::to_string(c) + "\n";
    out["C"] = gc::int_mat_to_json(c);
  }
  if (json)
    std::cout << out.dump(2) << "\n";
  else
    std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for generalized cluster patterns"};
  app.require_subcommand(1);

  std::string file, walk_str, show = "all", identity, format = "dot", check, what = "both";
  std::string cluster_file;
  bool json = false, standard = false;
  unsigned walks = 20, max_len = 6, threads = 1;
  std::uint64_t rng_seed = 0;
  std::size_t budget = 1000;
  int index = 0;

  auto* mutate = app.add_subcommand("mutate", "apply a mutation walk and print the seed");
  mutate->add_option("file", file, "pattern file")->required();
  mutate->add_option("--walk", walk_str, "comma-separated 1-based directions");
  mutate->add_option("--show", show, "what to print")
      ->check(CLI::IsMember({"x", "y", "b", "c", "g", "d", "all"}));
  mutate->add_flag("--json", json, "JSON output");
  mutate->add_flag("--standard", standard, "use the induced degree-one pattern");

  auto* verify = app.add_subcommand("verify", "check an identity over random walks");
  verify->add_option("file", file, "pattern file")->required();
  verify->add_option("--identity", identity, "identity to check")
      ->required()
      ->check(CLI::IsMember(
          {"cluster-formula", "two-form", "c-g-duality", "separation", "d-recurrence"}));
  verify->add_option("--walks", walks, "number of random walks");
  verify->add_option("--max-len", max_len, "maximum walk length");
  verify->add_option("--rng-seed", rng_seed, "PRNG seed");
  verify->add_flag("--standard", standard, "use the induced degree-one pattern");

  auto* fpoly = app.add_subcommand("fpoly", "print F-polynomials, g- and c-vectors");
  fpoly->add_option("file", file, "pattern file")->required();
  fpoly->add_option("--walk", walk_str, "comma-separated 1-based directions");
  fpoly->add_option("--index", index, "restrict to one cluster index (1-based)");
  fpoly->add_flag("--json", json, "JSON output");
  fpoly->add_flag("--standard", standard, "use the induced degree-one pattern");

  auto* graph = app.add_subcommand("graph", "enumerate the exchange graph");
  graph->add_option("file", file, "pattern file")->required();
  graph->add_option("--budget", budget, "vertex budget");
  graph->add_option("--format", format, "export format")
      ->check(CLI::IsMember({"dot", "json"}));
  graph->add_option("--check", check, "theorem check to run")
      ->check(CLI::IsMember({"agree", "cluster-determines-seed", "adjacency"}));
  graph->add_option("--threads", threads, "worker threads for enumeration");
  graph->add_flag("--standard", standard, "use the induced degree-one pattern");

  auto* recover = app.add_subcommand("recover", "recover matrices from a cluster file");
  recover->add_option("file", file, "pattern file")->required();
  recover->add_option("--cluster", cluster_file, "cluster file")->required();
  recover->add_option("--what", what, "which matrices to recover")
      ->check(CLI::IsMember({"b", "c", "both"}));
  recover->add_flag("--json", json, "JSON output");
  recover->add_flag("--standard", standard, "use the induced degree-one pattern");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(mutate)) return cmd_mutate(file, walk_str, show, json, standard);
    if (app.got_subcommand(verify))
      return cmd_verify(file, identity, walks, max_len, rng_seed, standard);
    if (app.got_subcommand(fpoly)) return cmd_fpoly(file, walk_str, index, json, standard);
    if (app.got_subcommand(graph))
      return cmd_graph(file, budget, format, check, threads, standard);
    if (app.got_subcommand(recover))
      return cmd_recover(file, cluster_file, what, json, standard);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const gc::IncompleteGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const gc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gc::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
