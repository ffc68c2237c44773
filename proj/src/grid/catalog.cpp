#include "sattl/catalog.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "sattl/errors.hpp"

namespace sattl::grid {

const char* mode_name(Mode m) noexcept { return m == Mode::Minecraft ? "minecraft" : "minigrid"; }

Mode parse_mode(std::string_view s) {
  if (s == "minecraft" || s == "mc") return Mode::Minecraft;
  if (s == "minigrid" || s == "mg") return Mode::MiniGrid;
  throw ConfigError("unknown mode '" + std::string(s) + "'");
}

const char* split_name(Split s) noexcept { return s == Split::Train ? "train" : "test"; }

Split parse_split(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  throw ConfigError("unknown split '" + std::string(s) + "'");
}

const char* category_name(TaskCategory c) noexcept {
  switch (c) {
    case TaskCategory::Reachability: return "reach";
    case TaskCategory::NegReachability: return "neg-reach";
    case TaskCategory::PositiveCond: return "pos-cond";
    case TaskCategory::NegativeCond: return "neg-cond";
  }
  return "?";
}

TaskCategory parse_category(std::string_view s) {
  for (auto c : kAllCategories)
    if (s == category_name(c)) return c;
  throw ConfigError("unknown task category '" + std::string(s) + "'");
}

namespace {

const std::array<std::string, kMinigridColors> kColors = {"red",  "green", "blue",  "purple", "yellow", "grey",
                                                          "orange", "darkgreen", "pink", "brown", "white"};
const std::array<std::string, kMinigridShapes> kShapes = {"key", "ball", "box", "lava", "door", "wall", "star", "tree"};
const std::array<std::array<std::uint8_t, 3>, kMinigridColors> kRgb = {{{230, 40, 40},
                                                                         {60, 200, 60},
                                                                         {50, 90, 230},
                                                                         {140, 60, 200},
                                                                         {240, 220, 40},
                                                                         {128, 128, 128},
                                                                         {250, 140, 20},
                                                                         {20, 100, 40},
                                                                         {250, 150, 200},
                                                                         {130, 80, 30},
                                                                         {245, 245, 245}}};

std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

// Splits a shuffled universe into (A1, A2, A3, A4) with |A2| = |A4| = k,
// A2 and A4 disjoint, A1 = U \ A2 and A3 = U \ A4.
void carve(std::vector<int> universe, int k, std::mt19937_64& rng, std::array<std::vector<int>, 4>& out) {
  std::shuffle(universe.begin(), universe.end(), rng);
  std::vector<int> a2(universe.begin(), universe.begin() + k);
  std::vector<int> a4(universe.begin() + k, universe.begin() + 2 * k);
  std::vector<int> a1, a3;
  for (int v : universe) {
    if (std::find(a2.begin(), a2.end(), v) == a2.end()) a1.push_back(v);
    if (std::find(a4.begin(), a4.end(), v) == a4.end()) a3.push_back(v);
  }
  for (auto* v : {&a1, &a2, &a3, &a4}) std::sort(v->begin(), v->end());
  out = {a1, a2, a3, a4};
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::all_of(a.begin(), a.end(), [&](int x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  return std::none_of(a.begin(), a.end(), [&](int x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("catalog invariant violated: " + what);
}

}  // namespace

ObjectCatalog ObjectCatalog::build(std::uint64_t seed, Mode mode) {
  ObjectCatalog cat;
  cat.mode_ = mode;
  cat.seed_ = seed;
  std::mt19937_64 rng(seed);
  if (mode == Mode::Minecraft) {
    for (int i = 0; i < kMinecraftObjects; ++i) {
      cat.names_.push_back("obj" + std::to_string(i));
      // Per-object stream so a glyph depends only on (seed, index).
      std::mt19937_64 g(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i) + 1);
      std::uniform_real_distribution<float> u(0.0f, 1.0f);
      Glyph glyph{};
      for (auto& px : glyph) px = u(g) < 0.5f ? 0.55f + 0.45f * u(g) : 0.2f * u(g);
      cat.glyphs_.push_back(glyph);
    }
    auto ids = iota_vec(kMinecraftObjects);
    std::shuffle(ids.begin(), ids.end(), rng);
    cat.x1_.assign(ids.begin(), ids.begin() + 35);
    cat.x3_.assign(ids.begin() + 35, ids.end());
    auto x1 = cat.x1_;
    std::shuffle(x1.begin(), x1.end(), rng);
    cat.x2_.assign(x1.begin(), x1.begin() + 20);
    for (auto* v : {&cat.x1_, &cat.x2_, &cat.x3_}) std::sort(v->begin(), v->end());
  } else {
    for (int c = 0; c < kMinigridColors; ++c)
      for (int f = 0; f < kMinigridShapes; ++f) cat.names_.push_back(kColors[c] + "_" + kShapes[f]);
    carve(iota_vec(kMinigridColors), 3, rng, cat.c_);
    carve(iota_vec(kMinigridShapes), 2, rng, cat.f_);
  }
  cat.validate();
  return cat;
}

std::optional<int> ObjectCatalog::find(std::string_view atom) const {
  auto it = std::find(names_.begin(), names_.end(), atom);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

const std::string& ObjectCatalog::color_name(int c) { return kColors.at(static_cast<std::size_t>(c)); }
const std::string& ObjectCatalog::shape_name(int f) { return kShapes.at(static_cast<std::size_t>(f)); }
std::array<std::uint8_t, 3> ObjectCatalog::color_rgb(int c) { return kRgb.at(static_cast<std::size_t>(c)); }

std::vector<int> ObjectCatalog::pool(Split split, TaskCategory category) const {
  if (mode_ == Mode::Minecraft) return split == Split::Train ? x2_ : x3_;
  const bool reach = category == TaskCategory::Reachability;
  const int which = reach ? (split == Split::Train ? 1 : 2) : (split == Split::Train ? 3 : 4);
  std::vector<int> out;
  for (int c : colors(which))
    for (int f : shapes(which)) out.push_back(c * kMinigridShapes + f);
  std::sort(out.begin(), out.end());
  return out;
}

void ObjectCatalog::validate() const {
  if (mode_ == Mode::Minecraft) {
    require(names_.size() == kMinecraftObjects && glyphs_.size() == kMinecraftObjects, "|X| = 55");
    require(x1_.size() == 35, "|X1| = 35");
    require(x2_.size() == 20, "|X2| = 20");
    require(x3_.size() == 20, "|X3| = 20");
    require(subset(x2_, x1_), "X2 subset of X1");
    require(disjoint(x1_, x3_), "X1 and X3 disjoint");
    std::vector<int> all = x1_;
    all.insert(all.end(), x3_.begin(), x3_.end());
    std::sort(all.begin(), all.end());
    require(all == iota_vec(kMinecraftObjects), "X = X1 u X3");
    for (const auto& g : glyphs_)
      require(std::all_of(g.begin(), g.end(), [](float v) { return v >= 0.0f && v <= 1.0f; }), "glyph in [0,1]");
    return;
  }
  require(names_.size() == kMinigridColors * kMinigridShapes, "|C| x |F| = 88 composites");
  auto check = [&](const std::array<std::vector<int>, 4>& s, int total, std::size_t big, std::size_t small,
                   const char* tag) {
    const std::string t(tag);
    require(s[0].size() == big && s[2].size() == big, "|" + t + "1| = |" + t + "3| = " + std::to_string(big));
    require(s[1].size() == small && s[3].size() == small, "|" + t + "2| = |" + t + "4| = " + std::to_string(small));
    require(disjoint(s[0], s[1]) && disjoint(s[2], s[3]), t + "1/" + t + "2 and " + t + "3/" + t + "4 disjoint");
    require(s[0].size() + s[1].size() == static_cast<std::size_t>(total) &&
                s[2].size() + s[3].size() == static_cast<std::size_t>(total),
            t + " = " + t + "1 u " + t + "2 = " + t + "3 u " + t + "4");
    require(subset(s[1], s[2]), t + "2 subset of " + t + "3");
    require(subset(s[3], s[0]), t + "4 subset of " + t + "1");
  };
  check(c_, kMinigridColors, 8, 3, "C");
  check(f_, kMinigridShapes, 6, 2, "F");
}

}  // namespace sattl::grid
