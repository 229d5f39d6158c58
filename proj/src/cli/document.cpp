#include "entropykit/document.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace entropykit::cli {

namespace {

std::string locate(const std::string& file, int line, int column, const std::string& message) {
  if (line <= 0) return file + ": " + message;
  return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

const std::set<std::string> kSections{"chart", "paths", "states", "relation", "posets",
                                      "maps",  "spec",  "params", "config"};

}  // namespace

DocumentError::DocumentError(const std::string& file, int line, int column, const std::string& message)
    : Error(locate(file, line, column, message)) {}

struct Document::Impl {
  std::string name;
  YAML::Node root;

  [[noreturn]] void fail(const YAML::Node& at, const std::string& message) const {
    const auto m = at.Mark();
    if (m.is_null()) throw DocumentError(name, 0, 0, message);
    throw DocumentError(name, m.line + 1, m.column + 1, message);
  }

  YAML::Node section(const std::string& key) const {
    YAML::Node n = root[key];
    if (!n) throw DocumentError(name, 0, 0, "missing section '" + key + "'");
    return n;
  }

  YAML::Node child(const YAML::Node& parent, const std::string& key) const {
    if (!parent.IsMap()) fail(parent, "expected a mapping with key '" + key + "'");
    YAML::Node n = parent[key];
    if (!n) fail(parent, "missing key '" + key + "'");
    return n;
  }

  std::string scalar(const YAML::Node& n) const {
    if (!n.IsScalar()) fail(n, "expected a scalar");
    return n.Scalar();
  }

  std::vector<std::string> strings(const YAML::Node& n) const {
    if (!n.IsSequence()) fail(n, "expected a list");
    std::vector<std::string> out;
    for (const auto& item : n) out.push_back(scalar(item));
    return out;
  }

  Rational rational(const YAML::Node& n) const {
    try {
      return parse_rational(scalar(n));
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  bool boolean(const YAML::Node& n) const {
    const std::string s = scalar(n);
    if (s == "true" || s == "yes") return true;
    if (s == "false" || s == "no") return false;
    fail(n, "expected true or false");
  }

  /// Start of the scalar text, for positions reported by the expression parser.
  static SourcePos origin(const YAML::Node& n) {
    const auto m = n.Mark();
    if (m.is_null()) return {0, 0};
    return {m.line + 1, m.column + 1 + (n.Tag() == "!" ? 1 : 0)};
  }

  /// Runs `fn`, relocating library errors to the node (or to the position the parser reports).
  template <class Fn>
  auto at(const YAML::Node& n, Fn&& fn) const -> decltype(fn()) {
    try {
      return fn();
    } catch (const DocumentError&) {
      throw;
    } catch (const ParseError& e) {
      std::string message = e.what();
      if (e.line() > 0) {
        const std::string prefix = std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": ";
        if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
        throw DocumentError(name, e.line(), e.column(), message);
      }
      fail(n, message);
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

  Expr expr(const YAML::Node& n, const Scope& scope) const {
    const std::string text = scalar(n);
    return at(n, [&] { return parse(text, scope, origin(n)); });
  }
};

Document Document::from_string(const std::string& text, const std::string& name) {
  auto impl = std::make_shared<Impl>();
  impl->name = name;
  try {
    impl->root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw DocumentError(name, e.mark.line + 1, e.mark.column + 1, e.msg);
  }
  if (!impl->root.IsMap()) throw DocumentError(name, 1, 1, "document must be a mapping of sections");
  for (const auto& kv : impl->root) {
    const std::string key = impl->scalar(kv.first);
    if (!kSections.count(key)) impl->fail(kv.first, "unknown section '" + key + "'");
  }
  Document d;
  d.impl_ = std::move(impl);
  return d;
}

Document Document::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path, 0, 0, "cannot read file");
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str(), path);
}

const std::string& Document::name() const { return impl_->name; }

bool Document::has(const std::string& section) const { return static_cast<bool>(impl_->root[section]); }

// ---------------------------------------------------------------- chart, params, spec

bool Document::thermo() const {
  YAML::Node c = impl_->section("chart");
  return c.IsMap() && c["energy"];
}

thermo::ThermoChart Document::thermo_chart() const {
  const Impl& d = *impl_;
  YAML::Node c = d.section("chart");
  if (!thermo()) d.fail(c, "expected a thermodynamic chart with 'energy' and 'pairs'");
  const std::string energy = d.scalar(c["energy"]);
  YAML::Node pairs = d.child(c, "pairs");
  if (!pairs.IsSequence()) d.fail(pairs, "expected a list of conjugate pairs");
  std::vector<thermo::ConjugatePair> out;
  for (const auto& p : pairs) {
    if (p.IsSequence()) {
      auto names = d.strings(p);
      if (names.size() != 2) d.fail(p, "a pair is [intensive, extensive]");
      out.push_back(d.at(p, [&] { return thermo::ThermoChart::standard(energy, {{names[0], names[1]}}).pairs()[0]; }));
      continue;
    }
    thermo::ConjugatePair cp;
    cp.intensive = d.scalar(d.child(p, "intensive"));
    cp.extensive = d.scalar(d.child(p, "extensive"));
    cp = d.at(p, [&] { return thermo::ThermoChart::standard(energy, {{cp.intensive, cp.extensive}}).pairs()[0]; });
    if (p["sign"]) {
      const Rational s = d.rational(p["sign"]);
      if (s != 1 && s != -1) d.fail(p["sign"], "sign must be 1 or -1");
      cp.sign = s == 1 ? 1 : -1;
    }
    if (p["role"]) {
      const std::string r = d.scalar(p["role"]);
      if (r != "heat" && r != "work") d.fail(p["role"], "role must be heat or work");
      cp.role = r == "heat" ? thermo::Role::Heat : thermo::Role::Work;
    }
    out.push_back(cp);
  }
  return d.at(c, [&] { return thermo::ThermoChart(energy, out); });
}

Chart Document::chart() const {
  const Impl& d = *impl_;
  YAML::Node c = d.section("chart");
  if (thermo()) return thermo_chart().full_chart();
  YAML::Node coords = c.IsMap() ? d.child(c, "coordinates") : c;
  auto names = d.strings(coords);
  return d.at(coords, [&] { return Chart(names); });
}

std::vector<std::string> Document::params() const {
  const Impl& d = *impl_;
  if (!has("params")) return {};
  YAML::Node p = d.root["params"];
  if (p.IsSequence()) return d.strings(p);
  if (!p.IsMap()) d.fail(p, "params must be a list of names or a mapping name: value");
  std::vector<std::string> out;
  for (const auto& kv : p) {
    std::string n = d.scalar(kv.first);
    if (!is_identifier(n) || is_reserved_word(n)) d.fail(kv.first, "invalid parameter name '" + n + "'");
    out.push_back(std::move(n));
  }
  return out;
}

thermo::ParamValues Document::param_values() const {
  const Impl& d = *impl_;
  thermo::ParamValues out;
  if (!has("params") || !d.root["params"].IsMap()) return out;
  for (const auto& kv : d.root["params"])
    if (!kv.second.IsNull()) out.emplace(d.scalar(kv.first), d.rational(kv.second));
  return out;
}

Scope Document::scope(const Chart& chart) const {
  const Impl& d = *impl_;
  Scope s{chart, params(), {}};
  if (!has("spec") || !d.root["spec"]["functions"]) return s;
  YAML::Node fns = d.root["spec"]["functions"];
  if (!fns.IsMap()) d.fail(fns, "functions must map names to argument lists");
  for (const auto& kv : fns) {
    const std::string name = d.scalar(kv.first);
    auto args = d.strings(kv.second);
    for (const auto& a : args)
      if (!chart.contains(a))
        d.fail(kv.second, "argument '" + a + "' is not a coordinate");
    s.functions.emplace(name, std::move(args));
  }
  return s;
}

thermo::LegendreSpec Document::legendre_spec() const {
  const Impl& d = *impl_;
  YAML::Node spec = d.section("spec");
  const auto chart = thermo_chart();
  const Scope sc = scope(chart.extensive_chart());
  if (spec["potential"]) {
    if (spec["equations"]) d.fail(spec, "give either 'potential' or 'equations', not both");
    return thermo::Potential{d.expr(spec["potential"], sc)};
  }
  YAML::Node eqs = d.child(spec, "equations");
  if (!eqs.IsMap()) d.fail(eqs, "equations must map intensive coordinates to expressions");
  thermo::StateEquations out;
  for (const auto& kv : eqs) {
    const std::string name = d.scalar(kv.first);
    auto k = chart.pair_index(name);
    if (!k || chart.pairs()[static_cast<std::size_t>(*k)].intensive != name)
      d.fail(kv.first, "'" + name + "' is not an intensive coordinate of the chart");
    out.intensive.emplace(name, d.expr(kv.second, sc));
  }
  if (spec["energy"]) out.energy = d.expr(spec["energy"], sc);
  return out;
}

thermo::ThermoSystem Document::system() const {
  return thermo::ThermoSystem{thermo_chart(), legendre_spec(), params(), param_values()};
}

DifferentialForm Document::form() const {
  const Impl& d = *impl_;
  if (!has("spec") || !d.root["spec"]["form"]) {
    if (!thermo()) d.fail(d.section("chart"), "no spec.form given and the chart is not thermodynamic");
    return thermo::first_law_form(thermo_chart());
  }
  YAML::Node f = d.root["spec"]["form"];
  const Scope sc = scope(chart());
  const std::string text = d.scalar(f);
  return d.at(f, [&] { return parse_one_form(text, sc, Impl::origin(f)); });
}

std::vector<PotentialRequest> Document::potentials() const {
  const Impl& d = *impl_;
  if (!has("spec") || !d.root["spec"]["transforms"]) return {};
  YAML::Node list = d.root["spec"]["transforms"];
  if (!list.IsSequence()) d.fail(list, "transforms must be a list");
  const auto chart = thermo_chart();
  const Scope sc = scope(chart.full_chart());
  std::vector<PotentialRequest> out;
  for (const auto& item : list) {
    PotentialRequest r;
    r.swap = d.strings(d.child(item, "swap"));
    if (item["potential"]) r.expect_potential = d.expr(item["potential"], sc);
    if (item["theta"]) {
      r.expect_theta = d.scalar(item["theta"]);
      r.theta_origin = Impl::origin(item["theta"]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<NamedPath> Document::paths() const {
  const Impl& d = *impl_;
  YAML::Node list = d.section("paths");
  if (!list.IsSequence()) d.fail(list, "paths must be a list");
  const auto chart = thermo_chart();
  const int dim = chart.extensive_chart().dimension();
  Scope sc{thermo::parameter_chart(), params(), {}};
  std::vector<NamedPath> out;
  int k = 0;
  for (const auto& item : list) {
    NamedPath p;
    p.name = item["name"] ? d.scalar(item["name"]) : "path" + std::to_string(k);
    ++k;
    const bool closed = item["closed"] && d.boolean(item["closed"]);
    std::vector<std::vector<Expr>> segments;
    if (item["points"]) {
      YAML::Node pts = item["points"];
      if (!pts.IsSequence() || pts.size() < 2) d.fail(pts, "points needs at least two entries");
      std::vector<std::vector<Rational>> at;
      for (const auto& pt : pts) {
        if (!pt.IsSequence() || static_cast<int>(pt.size()) != dim)
          d.fail(pt, "point must have " + std::to_string(dim) + " coordinates");
        std::vector<Rational> v;
        for (const auto& c : pt) v.push_back(d.rational(c));
        at.push_back(std::move(v));
      }
      if (closed && at.front() != at.back()) at.push_back(at.front());
      const Expr t = Expr::symbol("t");
      for (std::size_t i = 0; i + 1 < at.size(); ++i) {
        std::vector<Expr> seg;
        for (int j = 0; j < dim; ++j) {
          const auto& a = at[i][static_cast<std::size_t>(j)];
          const auto& b = at[i + 1][static_cast<std::size_t>(j)];
          seg.push_back(Expr(a) + Expr(Rational(b - a)) * t);
        }
        segments.push_back(std::move(seg));
      }
    } else {
      YAML::Node segs = d.child(item, "segments");
      if (!segs.IsSequence() || segs.size() == 0) d.fail(segs, "segments must be a non-empty list");
      for (const auto& s : segs) {
        if (!s.IsSequence() || static_cast<int>(s.size()) != dim)
          d.fail(s, "segment must give " + std::to_string(dim) + " components in t");
        std::vector<Expr> seg;
        for (const auto& c : s) seg.push_back(d.expr(c, sc));
        segments.push_back(std::move(seg));
      }
    }
    p.path = d.at(item, [&] { return thermo::make_path(chart, segments, closed); });
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------- states and relation

std::vector<order::StateSpace> Document::spaces() const {
  const Impl& d = *impl_;
  YAML::Node list = d.section("states");
  if (!list.IsSequence()) d.fail(list, "states must be a list of state spaces");
  std::vector<order::StateSpace> out;
  for (const auto& sp : list) {
    const std::string label = d.scalar(d.child(sp, "space"));
    const bool scalable = sp["scalable"] && d.boolean(sp["scalable"]);
    std::vector<std::string> coords;
    if (sp["coordinates"]) coords = d.strings(sp["coordinates"]);
    YAML::Node st = d.child(sp, "states");
    std::vector<order::State> states;
    if (st.IsSequence()) {
      for (const auto& id : st) states.push_back({d.scalar(id), {}});
    } else if (st.IsMap()) {
      for (const auto& kv : st) {
        order::State s{d.scalar(kv.first), {}};
        if (kv.second.IsMap() && kv.second["coords"]) {
          YAML::Node c = kv.second["coords"];
          if (!c.IsSequence() || c.size() != coords.size())
            d.fail(c, "state needs " + std::to_string(coords.size()) + " coordinates");
          for (const auto& x : c) s.coords.push_back(d.rational(x));
        }
        states.push_back(std::move(s));
      }
    } else {
      d.fail(st, "states must be a list of ids or a mapping id: entropy / {coords, entropy}");
    }
    out.push_back(d.at(sp, [&] { return order::StateSpace(label, states, scalable, coords); }));
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!labels.insert(out[i].label()).second) d.fail(list[i], "duplicate space '" + out[i].label() + "'");
  return out;
}

std::vector<std::optional<order::EntropyFn>> Document::entropies() const {
  const Impl& d = *impl_;
  const auto sp = spaces();
  YAML::Node list = d.root["states"];
  std::vector<std::optional<order::EntropyFn>> out;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    YAML::Node st = list[i]["states"];
    if (!st.IsMap()) {
      out.emplace_back();
      continue;
    }
    order::EntropyFn s;
    int given = 0, k = 0;
    for (const auto& kv : st) {
      YAML::Node v = kv.second.IsMap() ? kv.second["entropy"] : kv.second;
      if (v && !v.IsNull()) {
        s.set({static_cast<int>(i), k}, d.rational(v));
        ++given;
      }
      ++k;
    }
    if (given == 0)
      out.emplace_back();
    else if (given != sp[i].size())
      d.fail(st, "entropy must be given for every state of '" + sp[i].label() + "' or for none");
    else
      out.emplace_back(std::move(s));
  }
  return out;
}

order::Accessibility Document::relation(const std::vector<order::StateSpace>& spaces) const {
  const Impl& d = *impl_;
  YAML::Node r = d.section("relation");
  if (!r.IsMap()) d.fail(r, "relation must be a mapping");
  if (r["entropy"]) {
    order::EntropyFn all;
    auto es = entropies();
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!es[i]) d.fail(r["entropy"], "entropy oracle needs entropy values for space '" + spaces[i].label() + "'");
      for (const auto& [ref, v] : es[i]->values()) all.set(ref, v);
    }
    const bool scaling = !r["scaling"] || d.boolean(r["scaling"]);
    return order::entropy_oracle(std::move(all), scaling);
  }
  std::vector<std::pair<order::CompositeState, order::CompositeState>> edges;
  auto composite = [&](const YAML::Node& n) {
    const std::string text = d.scalar(n);
    return d.at(n, [&] { return order::parse_composite(text, spaces); });
  };
  auto pairs = [&](const YAML::Node& list, bool both) {
    if (!list.IsSequence()) d.fail(list, "expected a list of [x, y] pairs");
    for (const auto& e : list) {
      if (!e.IsSequence() || e.size() != 2) d.fail(e, "expected [x, y]");
      auto x = composite(e[0]), y = composite(e[1]);
      edges.emplace_back(x, y);
      if (both) edges.emplace_back(y, x);
    }
  };
  if (r["edges"]) pairs(r["edges"], false);
  if (r["equivalent"]) pairs(r["equivalent"], true);
  if (!r["edges"] && !r["equivalent"]) d.fail(r, "relation needs 'edges', 'equivalent' or 'entropy'");
  const bool close = !r["close"] || d.boolean(r["close"]);
  return order::Accessibility::from_edges(std::move(edges), close);
}

// ---------------------------------------------------------------- posets and maps

std::vector<NamedPoset> Document::posets() const {
  const Impl& d = *impl_;
  YAML::Node ps = d.section("posets");
  if (!ps.IsMap()) d.fail(ps, "posets must map names to definitions");
  std::vector<NamedPoset> out;
  for (const auto& kv : ps) {
    const std::string name = d.scalar(kv.first);
    const YAML::Node& def = kv.second;
    if (def["space"]) {
      const std::string label = d.scalar(def["space"]);
      const auto sp = spaces();
      const auto es = entropies();
      std::optional<std::size_t> k;
      for (std::size_t i = 0; i < sp.size(); ++i)
        if (sp[i].label() == label) k = i;
      if (!k) d.fail(def["space"], "unknown state space '" + label + "'");
      if (!es[*k]) d.fail(def["space"], "space '" + label + "' has no entropy values");
      out.push_back({name, galois::poset_from_entropy(sp[*k], static_cast<int>(*k), *es[*k])});
      continue;
    }
    std::vector<std::string> elems;
    std::vector<std::pair<int, int>> edges;
    auto index = [&](const std::vector<std::string>& carrier, const YAML::Node& n) {
      const std::string e = d.scalar(n);
      auto it = std::find(carrier.begin(), carrier.end(), e);
      if (it == carrier.end()) d.fail(n, "unknown element '" + e + "'");
      return static_cast<int>(it - carrier.begin());
    };
    if (def["chain"]) {
      elems = d.strings(def["chain"]);
      for (int i = 1; i < static_cast<int>(elems.size()); ++i) edges.emplace_back(i - 1, i);
    } else {
      elems = d.strings(d.child(def, "elements"));
      if (def["order"]) {
        YAML::Node ord = def["order"];
        if (!ord.IsSequence()) d.fail(ord, "order must be a list of [x, y] pairs meaning x <= y");
        for (const auto& e : ord) {
          if (!e.IsSequence() || e.size() != 2) d.fail(e, "expected [x, y]");
          edges.emplace_back(index(elems, e[0]), index(elems, e[1]));
        }
      }
    }
    if (std::set<std::string>(elems.begin(), elems.end()).size() != elems.size())
      d.fail(def, "duplicate element in poset '" + name + "'");
    out.push_back({name, galois::Poset(elems, edges)});
  }
  return out;
}

std::vector<NamedMap> Document::maps() const {
  const Impl& d = *impl_;
  YAML::Node ms = d.section("maps");
  if (!ms.IsMap()) d.fail(ms, "maps must map names to {from, to, graph}");
  std::vector<NamedPoset> ps;
  if (has("posets")) ps = posets();
  std::vector<order::StateSpace> sp;
  if (has("states")) sp = spaces();
  auto carrier = [&](const YAML::Node& n, bool& on_spaces) {
    const std::string name = d.scalar(n);
    for (const auto& p : ps)
      if (p.name == name) {
        on_spaces = false;
        return p.poset.carrier();
      }
    for (const auto& s : sp)
      if (s.label() == name) {
        on_spaces = true;
        std::vector<std::string> ids;
        for (const auto& st : s.states()) ids.push_back(st.id);
        return ids;
      }
    d.fail(n, "unknown poset or state space '" + name + "'");
  };
  std::vector<NamedMap> out;
  for (const auto& kv : ms) {
    NamedMap m;
    m.name = d.scalar(kv.first);
    YAML::Node from = d.child(kv.second, "from"), to = d.child(kv.second, "to");
    bool src_spaces = false, dst_spaces = false;
    auto src = carrier(from, src_spaces);
    auto dst = carrier(to, dst_spaces);
    if (src_spaces != dst_spaces) d.fail(kv.second, "a map joins two posets or two state spaces");
    m.from = d.scalar(from);
    m.to = d.scalar(to);
    m.on_spaces = src_spaces;
    YAML::Node g = d.child(kv.second, "graph");
    if (!g.IsMap()) d.fail(g, "graph must map each source element to its image");
    m.graph.assign(src.size(), -1);
    for (const auto& e : g) {
      const std::string x = d.scalar(e.first), y = d.scalar(e.second);
      auto i = std::find(src.begin(), src.end(), x);
      if (i == src.end()) d.fail(e.first, "'" + x + "' is not an element of " + m.from);
      auto j = std::find(dst.begin(), dst.end(), y);
      if (j == dst.end()) d.fail(e.second, "'" + y + "' is not an element of " + m.to);
      m.graph[static_cast<std::size_t>(i - src.begin())] = static_cast<int>(j - dst.begin());
    }
    for (std::size_t i = 0; i < src.size(); ++i)
      if (m.graph[i] < 0) d.fail(g, "no image given for '" + src[i] + "'");
    if (kv.second["adjoint"]) {
      m.adjoint = d.scalar(kv.second["adjoint"]);
      if (*m.adjoint != "right" && *m.adjoint != "left" && *m.adjoint != "both")
        d.fail(kv.second["adjoint"], "adjoint must be right, left or both");
    }
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------- config

DocumentConfig Document::config() const {
  const Impl& d = *impl_;
  DocumentConfig c;
  if (!has("config")) return c;
  YAML::Node n = d.root["config"];
  if (!n.IsMap()) d.fail(n, "config must be a mapping");
  if (n["tol"]) c.tol = to_double(d.rational(n["tol"]));
  if (n["seed"]) {
    const std::string s = d.scalar(n["seed"]);
    try {
      std::size_t used = 0;
      c.seed = std::stoull(s, &used, 0);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      d.fail(n["seed"], "seed must be an unsigned integer");
    }
  }
  if (n["lambda_grid"]) {
    std::vector<Rational> grid;
    for (const auto& x : n["lambda_grid"]) grid.push_back(d.rational(x));
    c.lambda_grid = std::move(grid);
  }
  if (n["eps_steps"]) {
    const Rational k = d.rational(n["eps_steps"]);
    if (!is_integer(k) || k < 1) d.fail(n["eps_steps"], "eps_steps must be a positive integer");
    c.eps_steps = static_cast<int>(k.get_num().get_si());
  }
  if (n["checks"]) {
    YAML::Node ch = n["checks"];
    if (ch.IsSequence()) {
      for (const auto& x : ch) c.checks.emplace_back(d.scalar(x), "PASS");
    } else if (ch.IsMap()) {
      for (const auto& kv : ch) {
        std::string want = d.scalar(kv.second);
        if (want != "PASS" && want != "FAIL" && want != "INCONCLUSIVE" && want != "ERROR")
          d.fail(kv.second, "expected outcome must be PASS, FAIL, INCONCLUSIVE or ERROR");
        c.checks.emplace_back(d.scalar(kv.first), std::move(want));
      }
    } else {
      d.fail(ch, "checks must be a list or a mapping check: expected outcome");
    }
  }
  if (n["pairs"]) {
    for (const auto& p : n["pairs"]) {
      auto names = d.strings(p);
      if (names.size() != 2) d.fail(p, "a pair is [F, G]");
      c.pairs.emplace_back(names[0], names[1]);
    }
  }
  if (n["adjoint"]) {
    c.adjoint = d.scalar(n["adjoint"]);
    if (c.adjoint != "right" && c.adjoint != "left" && c.adjoint != "both")
      d.fail(n["adjoint"], "adjoint must be right, left or both");
  }
  return c;
}

}  // namespace entropykit::cli
