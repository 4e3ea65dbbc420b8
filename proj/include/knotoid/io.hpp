#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "knotoid/classify.hpp"

namespace knotoid {

inline constexpr int kCheckpointVersion = 1;

/// Walk state only: nodes and cells are recomputed from (surface,
/// max_crossings) on load and checked against the stored cell list.
inline nlohmann::json checkpoint_json(const ClassificationState& st, const WalkParams& p) {
  nlohmann::json j;
  j["version"] = kCheckpointVersion;
  j["surface"] = to_string(st.surface);
  j["max_crossings"] = st.max_crossings;
  j["params"] = {{"steps", p.steps},   {"bias", p.bias},
                 {"headroom", p.headroom}, {"seed", p.seed},
                 {"trivial_rounds", p.trivial_rounds}, {"per_node", p.per_node}};
  j["round"] = st.round;
  j["trivial_round"] = st.trivial_round;
  j["composites_done"] = st.composites_done;
  j["parents"] = st.uf.parents();
  std::vector<int> comp;
  for (std::size_t v = 0; v < st.composite.size(); ++v)
    if (st.composite[v]) comp.push_back(static_cast<int>(v));
  j["composite"] = comp;
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const auto& c : st.cells)
    cells.push_back({{"primary", c.primary},
                     {"secondary", c.secondary},
                     {"nodes", c.nodes},
                     {"status", c.terminated ? "terminated" : "active"}});
  return j;
}

inline void write_checkpoint(const std::string& path, const ClassificationState& st, const WalkParams& p) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << checkpoint_json(st, p).dump() << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot move checkpoint to " + path);
}

/// Rebuilds the state a checkpoint was written from. Walk parameters that
/// affect the random streams must match the checkpoint.
inline ClassificationState load_checkpoint(const nlohmann::json& j, const WalkParams& p, int threads = 1) {
  if (j.value("version", 0) != kCheckpointVersion) throw std::runtime_error("unsupported checkpoint version");
  const auto surface = parse_surface(j.at("surface").get<std::string>());
  if (!surface) throw std::runtime_error("checkpoint: bad surface");
  const auto& jp = j.at("params");
  if (jp.at("steps").get<int>() != p.steps || jp.at("bias").get<double>() != p.bias ||
      jp.at("headroom").get<int>() != p.headroom || jp.at("seed").get<std::uint64_t>() != p.seed ||
      jp.at("trivial_rounds").get<int>() != p.trivial_rounds || jp.at("per_node").get<bool>() != p.per_node)
    throw std::runtime_error("checkpoint was written with different walk parameters");

  auto st = partition(j.at("max_crossings").get<int>(), *surface, threads);
  const auto parents = j.at("parents").get<std::vector<int>>();
  const auto& cells = j.at("cells");
  if (parents.size() != st.nodes.size() || cells.size() != st.cells.size())
    throw std::runtime_error("checkpoint does not match the diagram set");
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c].at("primary").get<std::string>() != st.cells[c].primary ||
        cells[c].at("secondary").get<std::string>() != st.cells[c].secondary ||
        cells[c].at("nodes").get<std::vector<int>>() != st.cells[c].nodes)
      throw std::runtime_error("checkpoint cell " + std::to_string(c) + " does not match");
  for (std::size_t v = 0; v < parents.size(); ++v)
    if (parents[v] < 0 || parents[v] >= static_cast<int>(parents.size()))
      throw std::runtime_error("checkpoint: bad union-find parent");
  st.uf = UnionFind::from_parents(parents);
  for (int v : j.at("composite").get<std::vector<int>>()) st.composite.at(v) = 1;
  st.round = j.at("round").get<int>();
  st.trivial_round = j.at("trivial_round").get<int>();
  st.composites_done = j.at("composites_done").get<bool>();
  st.update_terminated();
  return st;
}

inline ClassificationState load_checkpoint(const std::string& path, const WalkParams& p, int threads = 1) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  return load_checkpoint(nlohmann::json::parse(in), p, threads);
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace detail

inline void write_csv(std::ostream& out, const ClassificationResult& r) {
  const bool plane = r.surface == Surface::Planar;
  out << "name,crossings,surface,class,code,"
      << (plane ? "loop_arrow,dbc_jones" : "arrow")
      << ",rotatable,achiral,strongly_achiral,status\n";
  for (const auto& e : r.primes) {
    out << e.name << ',' << e.crossings << ',' << to_string(r.surface) << ',' << to_string(e.cls) << ','
        << detail::csv_field(format_code(e.code)) << ',' << detail::csv_field(e.primary) << ',';
    if (plane) out << detail::csv_field(e.secondary) << ',';
    out << e.rotatable << ',' << e.achiral << ',' << e.strongly_achiral << ','
        << (e.unresolved ? "unresolved" : "prime") << '\n';
  }
}

/// One JSONL record of an enumerated diagram.
inline nlohmann::json diagram_record(const GaussCode& c, Surface surface, const DiagramMap& m) {
  nlohmann::json j{{"code", format_code(c)}, {"n", c.crossings()}, {"surface", to_string(surface)}};
  if (surface == Surface::Planar) {
    const auto cls = classify_endpoints(c);
    j["knot_type"] = cls == EndpointClass::KnotType;
    j["proper"] = cls == EndpointClass::Proper;
  } else {
    j["knot_type"] = sphere_knot_type(m);
  }
  return j;
}

}  // namespace knotoid
