#include "sattl/snapshot.hpp"

#include <json.hpp>

#include "sattl/errors.hpp"

namespace sattl::grid {

using nlohmann::json;

std::string map_to_json(const GridMap& map) {
  json cells = json::array();
  for (int r = 0; r < map.n; ++r) {
    json row = json::array();
    for (int c = 0; c < map.n; ++c) {
      const int id = map.at(r, c);
      row.push_back(id == kEmpty ? json(nullptr) : json(id));
    }
    cells.push_back(std::move(row));
  }
  json j{{"mode", mode_name(map.mode)},
         {"n", map.n},
         {"cells", std::move(cells)},
         {"agent", {map.agent_row, map.agent_col}},
         {"dir", map.dir ? json(dir_name(*map.dir)) : json(nullptr)},
         {"seed", map.seed},
         {"horizon", map.horizon}};
  return j.dump();
}

GridMap map_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    GridMap m;
    m.mode = parse_mode(j.at("mode").get<std::string>());
    m.n = j.at("n").get<int>();
    if (m.n < 1) throw ConfigError("map size must be positive");
    const auto& cells = j.at("cells");
    if (!cells.is_array() || static_cast<int>(cells.size()) != m.n) throw ConfigError("cells must have n rows");
    for (const auto& row : cells) {
      if (!row.is_array() || static_cast<int>(row.size()) != m.n) throw ConfigError("each row must have n cells");
      for (const auto& v : row) m.cells.push_back(v.is_null() ? kEmpty : v.get<int>());
    }
    m.agent_row = j.at("agent").at(0).get<int>();
    m.agent_col = j.at("agent").at(1).get<int>();
    if (!m.in_bounds(m.agent_row, m.agent_col)) throw ConfigError("agent outside the map");
    if (j.contains("dir") && !j["dir"].is_null()) {
      const auto d = j["dir"].get<std::string>();
      if (d == "N") m.dir = Dir::N;
      else if (d == "E") m.dir = Dir::E;
      else if (d == "S") m.dir = Dir::S;
      else if (d == "W") m.dir = Dir::W;
      else throw ConfigError("bad dir '" + d + "'");
    }
    m.seed = j.value("seed", std::uint64_t{0});
    m.horizon = j.value("horizon", default_horizon(m.n));
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid map snapshot: ") + e.what());
  }
}

}  // namespace sattl::grid
