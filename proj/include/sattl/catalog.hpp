#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sattl::grid {

enum class Mode : unsigned char { Minecraft, MiniGrid };
const char* mode_name(Mode m) noexcept;
Mode parse_mode(std::string_view s);

enum class Split : unsigned char { Train, Test };
const char* split_name(Split s) noexcept;
Split parse_split(std::string_view s);

// The four instruction families used for procedural tasks.
enum class TaskCategory : unsigned char { Reachability, NegReachability, PositiveCond, NegativeCond };
const char* category_name(TaskCategory c) noexcept;
TaskCategory parse_category(std::string_view s);
inline constexpr std::array<TaskCategory, 4> kAllCategories = {
    TaskCategory::Reachability, TaskCategory::NegReachability, TaskCategory::PositiveCond, TaskCategory::NegativeCond};

inline constexpr int kGlyphSide = 9;
inline constexpr int kMinecraftObjects = 55;
inline constexpr int kMinigridColors = 11;
inline constexpr int kMinigridShapes = 8;
inline constexpr int kTileSide = 8;

using Glyph = std::array<float, kGlyphSide * kGlyphSide>;

/// Object universe and its train/test partitions, derived from a seed.
///
/// Minecraft: 55 glyph objects "obj<i>", X1 (35, pretraining) and X3 (20,
/// test) partition the universe and X2 (20, training) is a subset of X1.
/// MiniGrid: 11 colors x 8 shapes, object id = color * 8 + shape, atom name
/// "<color>_<shape>". C1/C2 and C3/C4 both partition the colors with
/// C2 in C3 and C4 in C1; F1..F4 likewise over the shapes.
class ObjectCatalog {
 public:
  static ObjectCatalog build(std::uint64_t seed, Mode mode);

  Mode mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }
  int object_count() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::optional<int> find(std::string_view atom) const;

  // Minecraft
  const Glyph& glyph(int id) const { return glyphs_.at(static_cast<std::size_t>(id)); }
  const std::vector<int>& x1() const noexcept { return x1_; }
  const std::vector<int>& x2() const noexcept { return x2_; }
  const std::vector<int>& x3() const noexcept { return x3_; }

  // MiniGrid (index 0..3 maps to C1..C4 / F1..F4)
  const std::vector<int>& colors(int which) const { return c_.at(static_cast<std::size_t>(which - 1)); }
  const std::vector<int>& shapes(int which) const { return f_.at(static_cast<std::size_t>(which - 1)); }
  static const std::string& color_name(int c);
  static const std::string& shape_name(int f);
  static std::array<std::uint8_t, 3> color_rgb(int c);
  static int color_of(int id) noexcept { return id / kMinigridShapes; }
  static int shape_of(int id) noexcept { return id % kMinigridShapes; }

  /// Object ids tasks of `category` may mention under `split`; maps are
  /// populated from the same pool.
  std::vector<int> pool(Split split, TaskCategory category) const;

  // Throws std::logic_error naming the first broken cardinality or relation.
  void validate() const;

 private:
  Mode mode_ = Mode::Minecraft;
  std::uint64_t seed_ = 0;
  std::vector<std::string> names_;
  std::vector<Glyph> glyphs_;
  std::vector<int> x1_, x2_, x3_;
  std::array<std::vector<int>, 4> c_, f_;
};

}  // namespace sattl::grid
