#include "sattl/render.hpp"

#include <array>
#include <cstdlib>
#include <ostream>
#include <string_view>

#include "sattl/parse.hpp"

namespace sattl::grid {

void Image::write_pnm(std::ostream& os) const {
  os << (channels == 1 ? "P5\n" : "P6\n") << width << ' ' << height << "\n255\n";
  os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

char object_char(int id) noexcept {
  static constexpr std::string_view kChars = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  return kChars[static_cast<std::size_t>(id) % kChars.size()];
}

std::string render_ascii(const GridMap& map, const ObjectCatalog&) {
  std::string out;
  for (int r = 0; r < map.n; ++r) {
    for (int c = 0; c < map.n; ++c) {
      if (r == map.agent_row && c == map.agent_col)
        out += '@';
      else if (const int id = map.at(r, c); id == kEmpty)
        out += '.';
      else
        out += object_char(id);
    }
    out += '\n';
  }
  return out;
}

namespace {

using Pattern = std::array<std::string_view, kGlyphSide>;

// clang-format off
constexpr Pattern kPlus  = {".........", "....#....", "....#....", "....#....", ".#######.", "....#....", "....#....", "....#....", "........."};
constexpr Pattern kMinus = {".........", ".........", ".........", ".........", ".#######.", ".........", ".........", ".........", "........."};
constexpr Pattern kOr    = {".........", ".#.....#.", ".#.....#.", "..#...#..", "..#...#..", "...#.#...", "...#.#...", "....#....", "........."};
constexpr Pattern kUntil = {".........", ".#.....#.", ".#.....#.", ".#.....#.", ".#.....#.", ".#.....#.", ".#.....#.", "..#####..", "........."};
constexpr Pattern kTrue  = {".........", ".#######.", "....#....", "....#....", "....#....", "....#....", "....#....", "....#....", "........."};
constexpr Pattern kEnd   = {"#########", "#.......#", "#.#####.#", "#.#...#.#", "#.#.#.#.#", "#.#...#.#", "#.#####.#", "#.......#", "#########"};
// clang-format on

Glyph from_pattern(const Pattern& p) {
  Glyph g{};
  for (int r = 0; r < kGlyphSide; ++r)
    for (int c = 0; c < kGlyphSide; ++c) g[static_cast<std::size_t>(r * kGlyphSide + c)] = p[r][c] == '#' ? 1.0f : 0.0f;
  return g;
}

std::uint8_t to_byte(float v) { return static_cast<std::uint8_t>(v * 255.0f + 0.5f); }

void blit_gray(Image& img, int x0, int y0, const Glyph& g) {
  for (int r = 0; r < kGlyphSide; ++r)
    for (int c = 0; c < kGlyphSide; ++c) *img.px(x0 + c, y0 + r) = to_byte(g[static_cast<std::size_t>(r * kGlyphSide + c)]);
}

void blit_agent_gray(Image& img, int x0, int y0) {
  for (int i = 0; i < kGlyphSide; ++i) {
    *img.px(x0 + i, y0) = 255;
    *img.px(x0 + i, y0 + kGlyphSide - 1) = 255;
    *img.px(x0, y0 + i) = 255;
    *img.px(x0 + kGlyphSide - 1, y0 + i) = 255;
  }
  *img.px(x0 + 4, y0 + 4) = 255;
}

// 8x8 mask per shape.
bool shape_mask(int shape, int r, int c) {
  const int dr = 2 * r - 7, dc = 2 * c - 7;  // centered, odd coordinates in [-7, 7]
  switch (shape) {
    case 0: return (r == 2 && c >= 1 && c <= 6) || (c == 6 && r >= 2 && r <= 6) || (r == 6 && c >= 4);  // key
    case 1: return dr * dr + dc * dc <= 36;                                                           // ball
    case 2: return (r == 1 || r == 6 || c == 1 || c == 6) && r >= 1 && r <= 6 && c >= 1 && c <= 6;    // box
    case 3: return (r + (c % 3)) % 3 != 0;                                                            // lava
    case 4: return (c >= 2 && c <= 5) && !(r == 4 && c == 4);                                         // door
    case 5: return (r % 3 != 2) && !((r / 3) % 2 == 0 ? c == 3 : c == 6);                             // wall
    case 6: return r == c || r + c == 7 || r == 3 || c == 3;                                          // star
    case 7: return (r <= 5 && c >= 3 - r / 2 && c <= 4 + r / 2) || ((c == 3 || c == 4) && r >= 6);    // tree
    default: return false;
  }
}

void blit_tile_rgb(Image& img, int x0, int y0, int id) {
  const auto rgb = ObjectCatalog::color_rgb(ObjectCatalog::color_of(id));
  const int shape = ObjectCatalog::shape_of(id);
  for (int r = 0; r < kTileSide; ++r)
    for (int c = 0; c < kTileSide; ++c) {
      auto* p = img.px(x0 + c, y0 + r);
      if (shape_mask(shape, r, c)) {
        p[0] = rgb[0], p[1] = rgb[1], p[2] = rgb[2];
      }
    }
}

void blit_agent_rgb(Image& img, int x0, int y0, Dir d) {
  // Triangle with its apex on the heading side.
  for (int r = 0; r < kTileSide; ++r)
    for (int c = 0; c < kTileSide; ++c) {
      int apex_dist = 0, across = 0;
      switch (d) {
        case Dir::N: apex_dist = r, across = c; break;
        case Dir::S: apex_dist = 7 - r, across = c; break;
        case Dir::E: apex_dist = 7 - c, across = r; break;
        case Dir::W: apex_dist = c, across = r; break;
      }
      if (std::abs(2 * across - 7) <= apex_dist) {
        auto* p = img.px(x0 + c, y0 + r);
        p[0] = 255, p[1] = 0, p[2] = 0;
      }
    }
}

void push_literal(std::vector<Glyph>& out, const Literal& l, const ObjectCatalog& catalog) {
  if (l.is_true()) {
    out.push_back(from_pattern(kTrue));
    return;
  }
  bool first = true;
  for (const auto& e : l.entries()) {
    if (!first) out.push_back(from_pattern(kOr));
    first = false;
    out.push_back(from_pattern(e.sign == Sign::Positive ? kPlus : kMinus));
    if (e.atom.is_end()) {
      out.push_back(from_pattern(kEnd));
    } else if (auto id = catalog.find(e.atom.name()); id && catalog.mode() == Mode::Minecraft) {
      out.push_back(catalog.glyph(*id));
    } else {
      out.push_back(Glyph{});
    }
  }
}

}  // namespace

std::vector<Glyph> instruction_glyphs(const AtomicTask& task, const ObjectCatalog& catalog) {
  std::vector<Glyph> out;
  push_literal(out, task.cond, catalog);
  out.push_back(from_pattern(kUntil));
  push_literal(out, task.goal, catalog);
  return out;
}

int instruction_strip_rows(const AtomicTask& task, const ObjectCatalog& catalog, int n) {
  const auto count = static_cast<int>(instruction_glyphs(task, catalog).size());
  return (count + n - 1) / n;
}

Image render_pixels(const GridMap& map, const ObjectCatalog& catalog) {
  Image img;
  if (map.mode == Mode::Minecraft) {
    img.width = img.height = map.n * kGlyphSide;
    img.channels = 1;
    img.data.assign(static_cast<std::size_t>(img.width * img.height), 0);
    for (int r = 0; r < map.n; ++r)
      for (int c = 0; c < map.n; ++c) {
        if (const int id = map.at(r, c); id != kEmpty) blit_gray(img, c * kGlyphSide, r * kGlyphSide, catalog.glyph(id));
        if (r == map.agent_row && c == map.agent_col) blit_agent_gray(img, c * kGlyphSide, r * kGlyphSide);
      }
    return img;
  }
  img.width = img.height = map.n * kTileSide;
  img.channels = 3;
  img.data.assign(static_cast<std::size_t>(img.width * img.height * 3), 0);
  for (int r = 0; r < map.n; ++r)
    for (int c = 0; c < map.n; ++c) {
      if (const int id = map.at(r, c); id != kEmpty) blit_tile_rgb(img, c * kTileSide, r * kTileSide, id);
      if (r == map.agent_row && c == map.agent_col)
        blit_agent_rgb(img, c * kTileSide, r * kTileSide, map.dir.value_or(Dir::N));
    }
  return img;
}

Image render_observation(const GridMap& map, const ObjectCatalog& catalog, const AtomicTask& instruction) {
  if (map.mode == Mode::Minecraft) {
    const auto glyphs = instruction_glyphs(instruction, catalog);
    const int strip_rows = instruction_strip_rows(instruction, catalog, map.n);
    const Image body = render_pixels(map, catalog);
    Image img;
    img.width = body.width;
    img.height = body.height + strip_rows * kGlyphSide;
    img.channels = 1;
    img.data.assign(static_cast<std::size_t>(img.width * img.height), 0);
    for (std::size_t k = 0; k < glyphs.size(); ++k) {
      const int row = static_cast<int>(k) / map.n, col = static_cast<int>(k) % map.n;
      blit_gray(img, col * kGlyphSide, row * kGlyphSide, glyphs[k]);
    }
    std::copy(body.data.begin(), body.data.end(),
              img.data.begin() + static_cast<std::ptrdiff_t>(strip_rows * kGlyphSide * img.width));
    return img;
  }
  constexpr int kView = 7;
  Image img;
  img.width = img.height = kView * kTileSide;
  img.channels = 3;
  img.data.assign(static_cast<std::size_t>(img.width * img.height * 3), 0);
  for (int i = 0; i < kView; ++i)
    for (int j = 0; j < kView; ++j) {
      const auto [r, c] = egocentric_cell(map, kView, i, j);
      if (!map.in_bounds(r, c)) {
        for (int y = 0; y < kTileSide; ++y)
          for (int x = 0; x < kTileSide; ++x) {
            auto* p = img.px(j * kTileSide + x, i * kTileSide + y);
            p[0] = p[1] = p[2] = 60;
          }
        continue;
      }
      if (const int id = map.at(r, c); id != kEmpty) blit_tile_rgb(img, j * kTileSide, i * kTileSide, id);
    }
  blit_agent_rgb(img, (kView / 2) * kTileSide, (kView - 1) * kTileSide, Dir::N);
  return img;
}

Observation observe(const GridMap& map, const ObjectCatalog& catalog, const AtomicTask& instruction,
                    const FeatureSpec& spec) {
  Observation o;
  o.pixels = render_observation(map, catalog, instruction);
  if (map.mode == Mode::MiniGrid) o.instruction_text = format_task(instruction);
  o.features = feature_view(map, catalog, spec);
  return o;
}

}  // namespace sattl::grid
