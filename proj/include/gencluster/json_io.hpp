#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gencluster/expr_text.hpp"
#include "gencluster/pattern.hpp"
#include "gencluster/xgraph.hpp"

namespace gencluster {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "gencluster/1";

// ---- scalars -------------------------------------------------------------------

namespace jsondetail {

inline Exp exp_from_json(const Json& v, const char* what) {
  if (!v.is_number_integer())
    throw ConfigError(std::string(what) + " must be an integer");
  return v.get<std::int64_t>();
}

inline Int int_from_json(const Json& v, const char* what) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ConfigError(std::string(what) + ": bad integer literal");
    }
  }
  throw ConfigError(std::string(what) + " must be an integer or a decimal string");
}

inline Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

inline Json rat_to_json(const Rat& v) {
  if (v.get_den() == 1) return int_to_json(Int(v.get_num()));
  return Json(v.get_str());
}

}  // namespace jsondetail

// ---- matrices ------------------------------------------------------------------

inline IntMat int_mat_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ConfigError(std::string(what) + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  IntMat m(rows, cols, Int(0));
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw ConfigError(std::string(what) + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = jsondetail::int_from_json(row[c], what);
  }
  return m;
}

inline Json int_mat_to_json(const IntMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jsondetail::int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json rat_mat_to_json(const RatMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jsondetail::rat_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- semifield elements ----------------------------------------------------------

// sparse {generator name: exponent}
inline Json element_to_json(const TropicalElement& t) {
  Json out = Json::object();
  const auto& gens = t.spec()->generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (t.exponent(g) != 0) out[gens[g]] = t.exponent(g);
  return out;
}

inline TropicalElement element_from_json(const SpecPtr& spec, const Json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
  const auto& gens = spec->generators();
  std::map<std::string, std::size_t> by_name;
  for (std::size_t g = 0; g < gens.size(); ++g) by_name.emplace(gens[g], g);
  ExpVec e(gens.size(), 0);
  for (const auto& [name, val] : j.items()) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw ConfigError(std::string(what) + ": unknown generator '" + name + "'");
    e[it->second] = jsondetail::exp_from_json(val, what);
  }
  return TropicalElement(spec, std::move(e));
}

// ---- pattern files ---------------------------------------------------------------

struct LoadedPattern {
  PatternConfig config;
  std::string mode;  // trivial | principal | geometric | explicit
};

namespace jsondetail {

inline std::pair<std::size_t, Exp> z_slot_from_key(const std::string& key, std::size_t n) {
  std::size_t i = 0;
  long a = 0, b = 0;
  std::istringstream is(key);
  char l, comma, rp;
  if (!(is >> l >> a >> comma >> b >> rp) || l != '(' || comma != ',' || rp != ')' ||
      (is >> std::ws).peek() != EOF)
    throw ConfigError("Z key '" + key + "' is not of the form \"(i,m)\"");
  if (a < 1 || static_cast<std::size_t>(a) > n)
    throw ConfigError("Z key '" + key + "': index out of range");
  i = static_cast<std::size_t>(a - 1);
  return {i, static_cast<Exp>(b)};
}

}  // namespace jsondetail

inline PatternConfig pattern_from_json(const Json& j, std::string* mode_out = nullptr) {
  if (!j.is_object()) throw ConfigError("pattern file must be a JSON object");
  if (!j.contains("schema") || !j["schema"].is_string() ||
      j["schema"].get<std::string>() != kSchemaTag)
    throw ConfigError(std::string("pattern file must declare \"schema\": \"") + kSchemaTag +
                      "\"");
  if (!j.contains("B0")) throw ConfigError("pattern file is missing B0");
  const IntMat b0 = int_mat_from_json(j["B0"], "B0");
  if (b0.rows() != b0.cols()) throw ConfigError("B0 must be square");
  const std::size_t n = b0.rows();
  if (j.contains("n") && j["n"].get<std::int64_t>() != static_cast<std::int64_t>(n))
    throw ConfigError("n does not match the size of B0");

  std::vector<Int> r(n, Int(1));
  if (j.contains("R")) {
    const Json& jr = j["R"];
    if (!jr.is_array() || jr.size() != n)
      throw ConfigError("R must be an array of one degree per index");
    for (std::size_t i = 0; i < n; ++i) r[i] = jsondetail::int_from_json(jr[i], "R");
  }

  std::vector<std::string> xnames;
  if (j.contains("x_names")) {
    for (const auto& v : j["x_names"]) xnames.push_back(v.get<std::string>());
    if (xnames.size() != n) throw ConfigError("x_names must list one name per index");
  }

  std::string mode = "trivial";
  Json mode_cfg;
  if (j.contains("coefficients")) {
    const Json& c = j["coefficients"];
    if (c.is_string()) {
      mode = c.get<std::string>();
    } else if (c.is_object() && c.contains("type")) {
      mode = c["type"].get<std::string>();
      mode_cfg = c;
    } else {
      throw ConfigError("coefficients must be a mode string or an object with a type");
    }
  }

  std::optional<std::vector<Int>> s_override;
  if (j.contains("S")) {
    const Json& js = j["S"];
    if (!js.is_array() || js.size() != n)
      throw ConfigError("S must be an array of one entry per index");
    std::vector<Int> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = jsondetail::int_from_json(js[i], "S");
    s_override = std::move(s);
  }

  auto apply_s = [&](PatternConfig cfg) {
    if (!s_override) return cfg;
    std::optional<std::vector<std::size_t>> tracked;
    if (cfg.frozen) tracked = cfg.frozen->gens;
    return make_pattern_config(cfg.ctx, cfg.b0, cfg.kit, cfg.y0, s_override, tracked);
  };

  auto z_entries = [&](const SpecPtr& spec) {
    std::map<std::pair<std::size_t, Exp>, TropicalElement> out;
    if (!j.contains("Z")) return out;
    const Json& z = j["Z"];
    if (!z.is_object()) throw ConfigError("Z must map \"(i,m)\" keys to elements");
    for (const auto& [key, val] : z.items()) {
      const auto slot = jsondetail::z_slot_from_key(key, n);
      out.emplace(slot, element_from_json(spec, val, "Z value"));
    }
    return out;
  };

  PatternConfig cfg = [&]() -> PatternConfig {
    if (mode == "trivial") {
      PatternConfig c = trivial_config(b0, r, xnames);
      for (const auto& [slot, v] : z_entries(c.kit.spec)) {
        (void)v;
        throw ConfigError("trivial coefficients admit no Z entries; slot (" +
                          std::to_string(slot.first + 1) + "," + std::to_string(slot.second) +
                          ") given");
      }
      return c;
    }
    if (mode == "principal") {
      if (j.contains("Z"))
        throw ConfigError("principal coefficients define their own coefficient generators");
      return principal_config(b0, r, xnames);
    }
    if (mode == "geometric") {
      if (!mode_cfg.contains("C0")) throw ConfigError("geometric coefficients need C0");
      const IntMat c0 = int_mat_from_json(mode_cfg["C0"], "C0");
      if (c0.cols() != n) throw ConfigError("C0 must have one column per index");
      // z values are exponent vectors in the tracked generators
      std::vector<std::string> unames;
      for (std::size_t i = 0; i < c0.rows(); ++i) unames.push_back("u" + std::to_string(i + 1));
      auto probe = make_spec(SemifieldSpec::single_block(unames));
      std::map<std::pair<std::size_t, Exp>, ExpVec> zvals;
      for (const auto& [slot, v] : z_entries(probe)) zvals.emplace(slot, v.exponents());
      return geometric_config(b0, r, c0, zvals, xnames);
    }
    if (mode == "explicit") {
      if (!mode_cfg.contains("generators") || !mode_cfg.contains("Y0"))
        throw ConfigError("explicit coefficients need generators and Y0");
      std::vector<std::string> gens;
      for (const auto& v : mode_cfg["generators"]) gens.push_back(v.get<std::string>());
      auto spec = make_spec(SemifieldSpec::single_block(gens));
      if (xnames.empty()) xnames = default_var_names(n);
      auto ctx = make_context(xnames, spec);
      MutationKit kit = make_kit(spec, r);
      for (const auto& [slot, v] : z_entries(spec)) kit.set_z(slot.first, slot.second, v);
      const Json& jy = mode_cfg["Y0"];
      if (!jy.is_array() || jy.size() != n)
        throw ConfigError("Y0 must list one element per index");
      std::vector<TropicalElement> y0;
      for (std::size_t i = 0; i < n; ++i)
        y0.push_back(element_from_json(spec, jy[i], "Y0 entry"));
      return make_pattern_config(std::move(ctx), to_rat(b0), std::move(kit), std::move(y0));
    }
    throw ConfigError("unknown coefficient mode '" + mode + "'");
  }();

  if (mode_out) *mode_out = mode;
  return apply_s(std::move(cfg));
}

inline LoadedPattern load_pattern_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("pattern file is not valid JSON: ") + e.what());
  }
  std::string mode;
  PatternConfig cfg = pattern_from_json(j, &mode);
  return LoadedPattern{std::move(cfg), std::move(mode)};
}

inline LoadedPattern load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pattern file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_pattern_text(buf.str());
}

// Normalized re-serialization of a loaded pattern.
inline Json pattern_to_json(const LoadedPattern& lp) {
  const PatternConfig& cfg = lp.config;
  const std::size_t n = cfg.rank();
  Json out;
  out["schema"] = kSchemaTag;
  out["n"] = n;
  const auto b0i = to_int(cfg.b0);
  if (!b0i) throw ConfigError("cannot serialize a pattern with a fractional exchange matrix");
  out["B0"] = int_mat_to_json(*b0i);
  Json r = Json::array();
  for (const Int& ri : cfg.kit.r) r.push_back(jsondetail::int_to_json(ri));
  out["R"] = r;
  Json xn = Json::array();
  for (std::size_t i = 0; i < n; ++i) xn.push_back(cfg.ctx->name(i));
  out["x_names"] = xn;
  Json s = Json::array();
  for (const Int& si : cfg.s) s.push_back(jsondetail::int_to_json(si));
  out["S"] = s;

  if (lp.mode == "trivial" || lp.mode == "principal") {
    out["coefficients"] = lp.mode;
  } else if (lp.mode == "geometric") {
    Json c;
    c["type"] = "geometric";
    c["C0"] = int_mat_to_json(cfg.frozen->c0);
    out["coefficients"] = std::move(c);
  } else {
    Json c;
    c["type"] = "explicit";
    Json gens = Json::array();
    for (const auto& g : cfg.ctx->semifield()->generators()) gens.push_back(g);
    c["generators"] = std::move(gens);
    Json y0 = Json::array();
    for (const auto& y : cfg.y0) y0.push_back(element_to_json(y));
    c["Y0"] = std::move(y0);
    out["coefficients"] = std::move(c);
  }
  if (lp.mode != "trivial" && lp.mode != "principal") {
    Json z = Json::object();
    for (const auto& [slot, v] : cfg.kit.z) {
      std::ostringstream key;
      key << "(" << slot.first + 1 << "," << slot.second << ")";
      z[key.str()] = element_to_json(v);
    }
    if (!z.empty()) out["Z"] = std::move(z);
  }
  return out;
}

// ---- seeds and clusters -----------------------------------------------------------

inline Json seed_to_json(const Seed& seed) {
  Json out;
  Json xs = Json::array();
  for (const auto& x : seed.x) xs.push_back(to_string(x));
  out["x"] = std::move(xs);
  Json ys = Json::array();
  for (const auto& y : seed.y) ys.push_back(element_to_json(y));
  out["y"] = std::move(ys);
  out["B"] = rat_mat_to_json(seed.b);
  Json walk = Json::array();
  for (int k : seed.walk) walk.push_back(k + 1);
  out["walk"] = std::move(walk);
  return out;
}

inline std::vector<RationalFn> cluster_from_json(const CtxPtr& ctx, const Json& j) {
  if (!j.is_object() || !j.contains("cluster") || !j["cluster"].is_array())
    throw ConfigError("cluster file must be {\"cluster\": [expressions]}");
  std::vector<RationalFn> out;
  for (const auto& v : j["cluster"]) {
    if (!v.is_string()) throw ConfigError("cluster entries must be expression strings");
    out.push_back(parse_rational(ctx, v.get<std::string>()));
  }
  return out;
}

inline std::vector<RationalFn> load_cluster_file(const CtxPtr& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cluster file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("cluster file is not valid JSON: ") + e.what());
  }
  return cluster_from_json(ctx, j);
}

// ---- graphs -------------------------------------------------------------------------

template <class State>
Json graph_to_json(const GraphResult<State>& g) {
  Json out;
  out["complete"] = g.complete;
  out["self_loops"] = g.has_self_loop;
  Json vs = Json::array();
  for (std::size_t i = 0; i < g.keys.size(); ++i) {
    Json v;
    v["id"] = i;
    v["digest"] = xgraphdetail::fnv1a_hex(g.keys[i]);
    vs.push_back(std::move(v));
  }
  out["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : g.edges) {
    Json je;
    je["a"] = e.first;
    je["b"] = e.second;
    Json dirs = Json::array();
    auto d = g.directions.find(e);
    if (d != g.directions.end())
      for (int k : d->second) dirs.push_back(k);
    je["directions"] = std::move(dirs);
    es.push_back(std::move(je));
  }
  out["edges"] = std::move(es);
  return out;
}

}  // namespace gencluster
