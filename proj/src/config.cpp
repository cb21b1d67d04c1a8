#include "radmul/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace radmul {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where + ": unknown key '" + it.key() + "'");
}

std::size_t get_size(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(where + ": missing '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

double get_positive(const json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number() || !(v.get<double>() > 0.0)) fail(where + "." + key + ": expected a positive number");
  return v.get<double>();
}

Mat parse_matrix(const json& j, std::size_t s, const std::string& where) {
  if (!j.is_array() || j.size() != s) fail(where + ": expected " + std::to_string(s) + " rows");
  Mat m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
  for (std::size_t r = 0; r < s; ++r) {
    if (!j[r].is_array() || j[r].size() != s) fail(where + ": row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < s; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c]);
  }
  return m;
}

FiniteGroup parse_group(const json& j, const std::string& where) {
  only_keys(j, {"kind", "order", "table"}, where);
  const std::string kind = j.value("kind", "");
  if (kind == "cyclic") return FiniteGroup::cyclic(get_size(j, "order", where));
  if (kind == "table") {
    if (!j.contains("table")) fail(where + ": missing 'table'");
    return FiniteGroup(j.at("table").get<std::vector<std::vector<std::size_t>>>());
  }
  fail(where + ": kind must be 'cyclic' or 'table'");
}

CrossedFactor parse_factor(const json& j, const TracialAlgebra& base, const std::string& where) {
  only_keys(j, {"group", "action"}, where);
  if (!j.contains("group")) fail(where + ": missing 'group'");
  FiniteGroup group = parse_group(j.at("group"), where + ".group");
  const json action = j.value("action", json("trivial"));
  if (action.is_string() && action.get<std::string>() == "trivial") return CrossedFactor::trivial(base, group);
  only_keys(action, {"kind", "unitary", "unitaries"}, where + ".action");
  if (action.value("kind", "") != "inner") fail(where + ".action: expected 'trivial' or {kind: 'inner', ...}");
  const std::size_t s = base.matrix_size();
  if (action.contains("unitary")) {
    // One generator for a cyclic group: element g acts by Ad(v^g).
    if (j.at("group").value("kind", "") != "cyclic") fail(where + ".action: 'unitary' requires a cyclic group");
    return CrossedFactor::inner_cyclic(base, group.order(), parse_matrix(action.at("unitary"), s, where + ".action.unitary"));
  }
  if (action.contains("unitaries")) {
    const auto& list = action.at("unitaries");
    if (!list.is_array()) fail(where + ".action.unitaries: expected a list");
    std::vector<Mat> us;
    for (std::size_t g = 0; g < list.size(); ++g)
      us.push_back(parse_matrix(list[g], s, where + ".action.unitaries[" + std::to_string(g) + "]"));
    return CrossedFactor(base, group, std::move(us));
  }
  fail(where + ".action: inner action needs 'unitary' or 'unitaries'");
}

json complex_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

}  // namespace

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  fail("expected a number or an [re, im] pair, got " + j.dump());
}

json preset_algebra(const std::string& name) {
  const json z2 = {{"kind", "cyclic"}, {"order", 2}};
  if (name == "DIH")
    return {{"base_algebra", {{"kind", "scalar"}}},
            {"factors", json::array({{{"group", z2}, {"action", "trivial"}}, {{"group", z2}, {"action", "trivial"}}})}};
  if (name == "MAT2") {
    const json v = json::array({json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})}),
                                json::array({json::array({0.0, 0.0}), json::array({-1.0, 0.0})})});
    return {{"base_algebra", {{"kind", "matrix"}, {"dim", 2}}},
            {"factors", json::array({{{"group", z2}, {"action", "trivial"}},
                                     {{"group", z2}, {"action", {{"kind", "inner"}, {"unitary", v}}}}})}};
  }
  fail("unknown algebra preset '" + name + "' (known: DIH, MAT2)");
}

std::shared_ptr<const AmalgamatedSystem> parse_algebra(const json& in) {
  const json j = in.is_string() ? preset_algebra(in.get<std::string>()) : in;
  only_keys(j, {"base_algebra", "factors"}, "algebra");
  if (!j.contains("base_algebra") || !j.contains("factors")) fail("algebra: needs 'base_algebra' and 'factors'");
  try {
    const auto& b = j.at("base_algebra");
    only_keys(b, {"kind", "dim"}, "algebra.base_algebra");
    const std::string kind = b.value("kind", "");
    std::size_t s = 1;
    if (kind == "matrix")
      s = get_size(b, "dim", "algebra.base_algebra");
    else if (kind != "scalar")
      fail("algebra.base_algebra: kind must be 'scalar' or 'matrix'");
    if (s == 0) fail("algebra.base_algebra.dim must be positive");
    const TracialAlgebra base(s);
    const auto& fs = j.at("factors");
    if (!fs.is_array() || fs.empty()) fail("algebra.factors: expected a non-empty list");
    std::vector<CrossedFactor> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      factors.push_back(parse_factor(fs[i], base, "algebra.factors[" + std::to_string(i) + "]"));
      if (factors.back().group().order() < 2) fail("algebra.factors[" + std::to_string(i) + "]: trivial group");
    }
    return std::make_shared<AmalgamatedSystem>(std::move(factors));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("algebra: ") + e.what());
  }
}

RadialSymbol parse_symbol(const json& j) {
  if (!j.is_object()) fail("symbol: expected an object");
  try {
    const std::string kind = j.value("kind", "general");
    if (kind == "delta0") {
      only_keys(j, {"kind"}, "symbol");
      return RadialSymbol::delta0();
    }
    if (kind == "indicator") {
      only_keys(j, {"kind", "last"}, "symbol");
      return RadialSymbol::indicator(get_size(j, "last", "symbol"));
    }
    if (kind == "constant") {
      only_keys(j, {"kind", "value"}, "symbol");
      if (!j.contains("value")) fail("symbol: missing 'value'");
      return RadialSymbol::constant(parse_complex(j.at("value")));
    }
    if (kind == "geometric") {
      only_keys(j, {"kind", "coefficient", "ratio", "limit"}, "symbol");
      if (!j.contains("ratio")) fail("symbol: missing 'ratio'");
      return RadialSymbol::geometric(parse_complex(j.value("coefficient", json(1.0))), parse_complex(j.at("ratio")),
                                     parse_complex(j.value("limit", json(0.0))));
    }
    if (kind != "general") fail("symbol: unknown kind '" + kind + "'");
    only_keys(j, {"kind", "head", "tail"}, "symbol");
    std::vector<cplx> head;
    if (j.contains("head")) {
      if (!j.at("head").is_array()) fail("symbol.head: expected a list");
      for (const auto& v : j.at("head")) head.push_back(parse_complex(v));
    }
    if (!j.contains("tail")) fail("symbol: missing 'tail'");
    const auto& t = j.at("tail");
    only_keys(t, {"kind", "limit", "coefficient", "ratio"}, "symbol.tail");
    const std::string tk = t.value("kind", "");
    const cplx c = parse_complex(t.value("limit", json(0.0)));
    if (tk == "constant") return RadialSymbol(std::move(head), ConstantTail{c});
    if (tk == "geometric") {
      if (!t.contains("coefficient") || !t.contains("ratio")) fail("symbol.tail: geometric needs 'coefficient' and 'ratio'");
      return RadialSymbol(std::move(head), GeometricTail{parse_complex(t.at("coefficient")), parse_complex(t.at("ratio")), c});
    }
    fail("symbol.tail: kind must be 'constant' or 'geometric'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("symbol: ") + e.what());
  }
}

json symbol_to_json(const RadialSymbol& phi) {
  json head = json::array();
  for (const auto& v : phi.head()) head.push_back(complex_json(v));
  json tail;
  if (const auto* g = std::get_if<GeometricTail>(&phi.tail()))
    tail = {{"kind", "geometric"}, {"coefficient", complex_json(g->coefficient)}, {"ratio", complex_json(g->ratio)},
            {"limit", complex_json(g->limit)}};
  else
    tail = {{"kind", "constant"}, {"limit", complex_json(std::get<ConstantTail>(phi.tail()).limit)}};
  return {{"kind", "general"}, {"head", head}, {"tail", tail}};
}

RunConfig parse_config(const json& j) {
  only_keys(j, {"algebra", "symbol", "truncation", "tolerances", "sampling", "seed"}, "config");
  if (!j.contains("algebra")) fail("config: missing 'algebra'");
  if (!j.contains("symbol")) fail("config: missing 'symbol'");
  RunConfig cfg;
  cfg.source = j;
  cfg.system = parse_algebra(j.at("algebra"));
  cfg.symbol = parse_symbol(j.at("symbol"));

  auto& o = cfg.options;
  if (j.contains("truncation")) {
    const auto& t = j.at("truncation");
    only_keys(t, {"fock_len", "hankel_dim"}, "truncation");
    if (t.contains("fock_len")) o.fock_len = get_size(t, "fock_len", "truncation");
    if (t.contains("hankel_dim")) o.hankel_dim = get_size(t, "hankel_dim", "truncation");
  }
  if (o.fock_len < 2) fail("truncation.fock_len must be at least 2");
  const bool constant_tail = std::holds_alternative<ConstantTail>(cfg.symbol.tail());
  if (o.hankel_dim != 0 && constant_tail && o.hankel_dim < cfg.symbol.head().size())
    fail("truncation.hankel_dim must be at least the head length for a constant tail");

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    only_keys(t, {"algebraic", "spectral", "eigen"}, "tolerances");
    o.tol.algebraic = get_positive(t, "algebraic", o.tol.algebraic, "tolerances");
    o.tol.spectral = get_positive(t, "spectral", o.tol.spectral, "tolerances");
    o.tol.eigen = get_positive(t, "eigen", o.tol.eigen, "tolerances");
  }
  if (j.contains("sampling")) {
    const auto& s = j.at("sampling");
    only_keys(s, {"words_per_length", "max_word_length", "bound_samples", "amplifications"}, "sampling");
    if (s.contains("words_per_length")) o.words_per_length = get_size(s, "words_per_length", "sampling");
    if (s.contains("max_word_length")) o.max_word_length = get_size(s, "max_word_length", "sampling");
    if (s.contains("bound_samples")) o.bound_samples = get_size(s, "bound_samples", "sampling");
    if (s.contains("amplifications")) {
      const auto& a = s.at("amplifications");
      if (!a.is_array() || a.empty()) fail("sampling.amplifications: expected a non-empty list");
      o.amplifications.clear();
      for (const auto& m : a) {
        if (!m.is_number_integer() || m.get<long long>() < 1) fail("sampling.amplifications: entries must be positive integers");
        o.amplifications.push_back(m.get<std::size_t>());
      }
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 0) fail("config.seed: expected a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunConfig::digest() const { return fnv1a_hex(source.dump()); }

std::size_t RunConfig::hankel_dim() const { return options.hankel_dim == 0 ? symbol.default_truncation() : options.hankel_dim; }

}  // namespace radmul
