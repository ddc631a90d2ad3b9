#pragma once

// JSON formats. Complex numbers are [re, im]; a bare number is accepted as a real value on input.
//   graph:    {"n": int, "edges": [[a, b], ...]}
//   ising:    {"graph": ..., "K": [c, ...], "g": [c, ...]}
//   clock:    {"graph": ..., "q": int, "edge_tables": [[c x q], ...], "vertex_tables": [[c x q], ...]}
//   potts:    {"graph": ..., "q": int, "K": [c, ...], "g": [c, ...]}   (shorthand, g optional)
//   scaled:   {"m": c, "e": int}   value m * 2^e
//   instance: {"W", "H", "edges": [{"a", "b", "u": [c, c]}], "sites": [[c, c], ...], "scale": scaled}

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingc/lattice.hpp"
#include "isingc/models.hpp"
#include "isingc/scaled_complex.hpp"
#include "json.hpp"

namespace isingc {

using json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field path.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void input_fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) input_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) input_fail(path, "missing field \"" + key + "\"");
  return *it;
}

inline long long read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) input_fail(path, "expected an integer");
  return j.get<long long>();
}

inline complex read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) input_fail(path, "expected a number or [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<complex> read_complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) input_fail(path, "expected an array");
  std::vector<complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_complex(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<complex>> read_tables(const json& j, const std::string& path) {
  if (!j.is_array()) input_fail(path, "expected an array of tables");
  std::vector<std::vector<complex>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_complex_list(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Re-throws model validation failures as input errors with a path prefix.
template <class F>
auto validated(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    input_fail(path, e.what());
  }
}

}  // namespace detail

inline json to_json(complex c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const ScaledComplex& s) { return json{{"m", to_json(s.mantissa())}, {"e", s.exponent2()}}; }

inline ScaledComplex scaled_from_json(const json& j, const std::string& path = "scale") {
  complex m = detail::read_complex(detail::field(j, "m", path), path + ".m");
  long long e = detail::read_int(detail::field(j, "e", path), path + ".e");
  if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) detail::input_fail(path + ".m", "non-finite mantissa");
  return ScaledComplex(m, e);
}

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back(json::array({a, b}));
  return json{{"n", g.num_vertices()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j, const std::string& path = "graph") {
  long long n = detail::read_int(detail::field(j, "n", path), path + ".n");
  const json& je = detail::field(j, "edges", path);
  if (!je.is_array()) detail::input_fail(path + ".edges", "expected an array");
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string p = path + ".edges[" + std::to_string(i) + "]";
    if (!je[i].is_array() || je[i].size() != 2) detail::input_fail(p, "expected [a, b]");
    edges.emplace_back(static_cast<int>(detail::read_int(je[i][0], p + "[0]")), static_cast<int>(detail::read_int(je[i][1], p + "[1]")));
  }
  if (n < 0 || n > (1 << 20)) detail::input_fail(path + ".n", "vertex count out of range");
  return detail::validated(path, [&] { return Graph(static_cast<int>(n), edges); });
}

inline json to_json(const IsingModel& m) {
  json k = json::array(), g = json::array();
  for (auto c : m.couplings) k.push_back(to_json(c));
  for (auto c : m.fields) g.push_back(to_json(c));
  return json{{"graph", to_json(m.graph)}, {"K", k}, {"g", g}};
}

inline IsingModel ising_from_json(const json& j) {
  Graph g = graph_from_json(detail::field(j, "graph", "model"));
  auto k = detail::read_complex_list(detail::field(j, "K", "model"), "K");
  std::vector<complex> h(static_cast<std::size_t>(g.num_vertices()), 0.0);
  if (j.contains("g")) h = detail::read_complex_list(j["g"], "g");
  if (k.size() != static_cast<std::size_t>(g.num_edges())) detail::input_fail("K", "has " + std::to_string(k.size()) + " entries, graph has " + std::to_string(g.num_edges()) + " edges");
  if (h.size() != static_cast<std::size_t>(g.num_vertices())) detail::input_fail("g", "has " + std::to_string(h.size()) + " entries, graph has " + std::to_string(g.num_vertices()) + " vertices");
  return detail::validated("model", [&] { return IsingModel(std::move(g), std::move(k), std::move(h)); });
}

inline json to_json(const ClockModel& m) {
  auto tables = [](const std::vector<std::vector<complex>>& t) {
    json out = json::array();
    for (const auto& row : t) {
      json r = json::array();
      for (auto c : row) r.push_back(to_json(c));
      out.push_back(r);
    }
    return out;
  };
  return json{{"graph", to_json(m.graph)}, {"q", m.q}, {"edge_tables", tables(m.edge_tables)}, {"vertex_tables", tables(m.vertex_tables)}};
}

/// Full tables, or the Potts shorthand with "K" (and optional "g") per edge and vertex.
inline ClockModel clock_from_json(const json& j) {
  Graph g = graph_from_json(detail::field(j, "graph", "model"));
  long long q = detail::read_int(detail::field(j, "q", "model"), "q");
  if (q < 2 || q > 64) detail::input_fail("q", "must be in [2, 64]");
  if (j.contains("edge_tables")) {
    auto et = detail::read_tables(j["edge_tables"], "edge_tables");
    auto vt = detail::read_tables(detail::field(j, "vertex_tables", "model"), "vertex_tables");
    return detail::validated("model", [&] { return ClockModel(std::move(g), static_cast<int>(q), std::move(et), std::move(vt)); });
  }
  auto k = detail::read_complex_list(detail::field(j, "K", "model"), "K");
  std::vector<complex> h;
  if (j.contains("g")) h = detail::read_complex_list(j["g"], "g");
  if (k.size() != static_cast<std::size_t>(g.num_edges())) detail::input_fail("K", "has " + std::to_string(k.size()) + " entries, graph has " + std::to_string(g.num_edges()) + " edges");
  if (!h.empty() && h.size() != static_cast<std::size_t>(g.num_vertices())) detail::input_fail("g", "has " + std::to_string(h.size()) + " entries, graph has " + std::to_string(g.num_vertices()) + " vertices");
  return detail::validated("model", [&] { return ClockModel::potts(std::move(g), static_cast<int>(q), k, h); });
}

inline json to_json(const Ising2DInstance& inst) {
  json edges = json::array(), sites = json::array();
  for (const auto& e : inst.edges) edges.push_back(json{{"a", e.a}, {"b", e.b}, {"u", json::array({to_json(e.u0), to_json(e.u1)})}});
  for (const auto& s : inst.sites) sites.push_back(json::array({to_json(s.w0), to_json(s.w1)}));
  return json{{"W", inst.width}, {"H", inst.height}, {"edges", edges}, {"sites", sites}, {"scale", to_json(inst.global_scale)}};
}

inline Ising2DInstance instance_from_json(const json& j) {
  Ising2DInstance inst;
  inst.width = static_cast<int>(detail::read_int(detail::field(j, "W", "instance"), "W"));
  inst.height = static_cast<int>(detail::read_int(detail::field(j, "H", "instance"), "H"));
  const json& je = detail::field(j, "edges", "instance");
  if (!je.is_array()) detail::input_fail("edges", "expected an array");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string p = "edges[" + std::to_string(i) + "]";
    const json& u = detail::field(je[i], "u", p);
    if (!u.is_array() || u.size() != 2) detail::input_fail(p + ".u", "expected [u0, u1]");
    inst.edges.push_back({static_cast<int>(detail::read_int(detail::field(je[i], "a", p), p + ".a")), static_cast<int>(detail::read_int(detail::field(je[i], "b", p), p + ".b")),
                          detail::read_complex(u[0], p + ".u[0]"), detail::read_complex(u[1], p + ".u[1]")});
  }
  const json& js = detail::field(j, "sites", "instance");
  if (!js.is_array()) detail::input_fail("sites", "expected an array");
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string p = "sites[" + std::to_string(i) + "]";
    if (!js[i].is_array() || js[i].size() != 2) detail::input_fail(p, "expected [w0, w1]");
    inst.sites.push_back({detail::read_complex(js[i][0], p + "[0]"), detail::read_complex(js[i][1], p + "[1]")});
  }
  if (j.contains("scale")) inst.global_scale = scaled_from_json(j["scale"]);
  detail::validated("instance", [&] {
    inst.validate();
    return 0;
  });
  return inst;
}

/// Parses text; syntax errors carry nlohmann's line/column context.
inline json parse_json_text(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xF];
  return out;
}

}  // namespace isingc
