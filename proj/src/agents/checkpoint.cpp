#include "sattl/checkpoint.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <json.hpp>
#include <ostream>

#include "sattl/errors.hpp"

namespace sattl::agents {

using nlohmann::json;

void save_params(std::ostream& os, const NetParams& p) {
  const NetConfig& c = p.config();
  json j;
  j["format"] = "sattl-net";
  j["version"] = kCheckpointVersion;
  j["config"] = {{"feature_width", c.feature_width}, {"instruction_width", c.instruction_width},
                 {"actions", c.actions},             {"cm1_width", c.cm1_width},
                 {"cm2_width", c.cm2_width},         {"bottleneck", c.bottleneck},
                 {"recurrent", c.recurrent},         {"architecture", architecture_name(c.arch)},
                 {"activation", activation_name(c.activation)}, {"seed", c.seed}};
  json tensors = json::object();
  for (const auto& t : p.tensors()) tensors[t.name] = {{"shape", {t.rows, t.cols}}, {"values", t.values}};
  j["tensors"] = std::move(tensors);
  os << j.dump() << '\n';
}

NetParams load_params(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "sattl-net") throw ConfigError("not a sattl-net checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw ConfigError("unsupported checkpoint version " + j.at("version").dump());
    const json& c = j.at("config");
    NetConfig cfg;
    cfg.feature_width = c.at("feature_width").get<std::size_t>();
    cfg.instruction_width = c.at("instruction_width").get<std::size_t>();
    cfg.actions = c.at("actions").get<std::size_t>();
    cfg.cm1_width = c.at("cm1_width").get<std::size_t>();
    cfg.cm2_width = c.at("cm2_width").get<std::size_t>();
    cfg.bottleneck = c.at("bottleneck").get<std::size_t>();
    cfg.recurrent = c.at("recurrent").get<std::size_t>();
    cfg.arch = parse_architecture(c.at("architecture").get<std::string>());
    cfg.activation = parse_activation(c.at("activation").get<std::string>());
    cfg.seed = c.at("seed").get<std::uint64_t>();
    NetParams p = NetParams::zeros(cfg);
    const json& ts = j.at("tensors");
    for (auto& t : p.tensors()) {
      const json& e = ts.at(t.name);
      const auto shape = e.at("shape").get<std::vector<std::size_t>>();
      if (shape.size() != 2 || shape[0] != t.rows || shape[1] != t.cols)
        throw DimensionMismatch("tensor " + t.name + " has shape " + e.at("shape").dump());
      auto values = e.at("values").get<std::vector<double>>();
      if (values.size() != t.size()) throw DimensionMismatch("tensor " + t.name + " has the wrong value count");
      t.values = std::move(values);
    }
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_params_file(const std::string& path, const NetParams& p) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  save_params(os, p);
}

NetParams load_params_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  return load_params(is);
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
  os << "step,mean_return,sd,episodes\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& c : curve) os << c.step << ',' << c.mean_return << ',' << c.sd << ',' << c.episodes << '\n';
}

}  // namespace sattl::agents
