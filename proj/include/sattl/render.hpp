#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sattl/env.hpp"

namespace sattl::grid {

struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 = gray (PGM), 3 = RGB (PPM)
  std::vector<std::uint8_t> data;

  std::uint8_t* px(int x, int y) { return &data[static_cast<std::size_t>((y * width + x) * channels)]; }
  const std::uint8_t* px(int x, int y) const { return &data[static_cast<std::size_t>((y * width + x) * channels)]; }

  // Binary P5/P6.
  void write_pnm(std::ostream& os) const;
};

/// '@' agent, '.' empty, objects by a per-id character.
std::string render_ascii(const GridMap& map, const ObjectCatalog& catalog);
char object_char(int id) noexcept;

/// Whole map: 9x9 gray tiles in Minecraft, 8x8x3 tiles in MiniGrid.
Image render_pixels(const GridMap& map, const ObjectCatalog& catalog);

/// Glyph sequence depicting a task: signs, object glyphs, disjunction bars,
/// the until operator and "true".
std::vector<Glyph> instruction_glyphs(const AtomicTask& task, const ObjectCatalog& catalog);

/// What the agent sees. Minecraft: instruction strip rows (wrapped at n
/// tiles) above the full map. MiniGrid: the 7x7 egocentric window of 8x8x3
/// tiles; the instruction travels separately as text.
Image render_observation(const GridMap& map, const ObjectCatalog& catalog, const AtomicTask& instruction);
int instruction_strip_rows(const AtomicTask& task, const ObjectCatalog& catalog, int n);

struct Observation {
  Image pixels;
  std::string instruction_text;  // MiniGrid text channel; empty for Minecraft
  FeatureView features;
};

Observation observe(const GridMap& map, const ObjectCatalog& catalog, const AtomicTask& instruction,
                    const FeatureSpec& spec);

}  // namespace sattl::grid
