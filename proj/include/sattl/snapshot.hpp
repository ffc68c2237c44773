#pragma once

#include <string>

#include "sattl/env.hpp"

namespace sattl::grid {

// {"mode", "n", "cells": [[id|null, ...], ...], "agent": [r, c], "dir": "N|E|S|W"|null,
//  "seed", "horizon"}
std::string map_to_json(const GridMap& map);
GridMap map_from_json(const std::string& text);

}  // namespace sattl::grid
