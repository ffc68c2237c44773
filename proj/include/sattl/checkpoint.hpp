#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sattl/a2c.hpp"
#include "sattl/net.hpp"

namespace sattl::agents {

inline constexpr int kCheckpointVersion = 1;

/// JSON tensor dump: {"format": "sattl-net", "version": 1, "config": {...},
/// "tensors": {name: {"shape": [rows, cols], "values": [...]}}}, values
/// row-major, printed with round-trip precision.
void save_params(std::ostream& os, const NetParams& p);
NetParams load_params(std::istream& is);
void save_params_file(const std::string& path, const NetParams& p);
NetParams load_params_file(const std::string& path);

// step,mean_return,sd,episodes
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve);

}  // namespace sattl::agents
