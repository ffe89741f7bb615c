#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "llma/geometry.hpp"

namespace llma {

constexpr double kDefaultBlockHalfExtent = 0.04;
constexpr double kDefaultEffectorRadius = 0.02;

// Side enumeration order doubles as the part-letter assignment order per
// block: Bottom, Top, Left, Right.
enum class Side { Bottom = 0, Top = 1, Left = 2, Right = 3 };

constexpr std::array<Side, 4> kSides = {Side::Bottom, Side::Top, Side::Left,
                                        Side::Right};

inline const char* side_name(Side s) {
  switch (s) {
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
    case Side::Left: return "left";
    case Side::Right: return "right";
  }
  return "?";
}

inline Vec2 side_normal(Side s) {
  switch (s) {
    case Side::Bottom: return {0.0, -1.0};
    case Side::Top: return {0.0, 1.0};
    case Side::Left: return {-1.0, 0.0};
    case Side::Right: return {1.0, 0.0};
  }
  return {0.0, 0.0};
}

// Axis-aligned square block; translates, never rotates.
struct Block {
  std::string id;     // unique within a WorldState, e.g. "green block"
  std::string color;  // e.g. "green"
  Point2 center;
  double half_extent = kDefaultBlockHalfExtent;
};

struct FunctionalPart {
  std::string owner;  // block id
  Side side;
  Point2 midpoint;
  Vec2 outward_normal;
};

// Cylindrical end-effector, a disc in the 2D plane.
struct EndEffector {
  Point2 center;
  double radius = kDefaultEffectorRadius;
};

// Discrete pick/place substrate: three ordered peg stacks of ring ranks
// (bottom to top, strictly decreasing), bowls, loose blocks, at most one
// held object.
struct Bowl {
  std::string color;
  Point2 center;
};

struct LooseBlock {
  std::string id;  // unique, e.g. "blue block" / "blue block 2"
  std::string color;
  Point2 center;
};

struct PickPlaceState {
  std::vector<std::vector<int>> pegs;  // ring ranks, bottom -> top
  std::vector<Point2> peg_positions;   // base of each peg
  std::map<int, std::string> ring_colors;
  std::vector<Bowl> bowls;
  std::vector<LooseBlock> loose_blocks;
  std::optional<std::string> held;
};

struct WorldState {
  std::vector<Block> blocks;
  EndEffector effector;
  std::optional<PickPlaceState> pickplace;
};

// The four named sides of a block; midpoints at center +- half_extent along
// one axis, normals axis-aligned and outward. Pure and deterministic.
inline std::array<FunctionalPart, 4> functional_parts(const Block& b) {
  std::array<FunctionalPart, 4> parts;
  for (std::size_t i = 0; i < kSides.size(); ++i) {
    const Side s = kSides[i];
    const Vec2 n = side_normal(s);
    parts[i] = FunctionalPart{b.id, s, b.center + n * b.half_extent, n};
  }
  return parts;
}

// A block has left the table once its center leaves the closed unit square.
inline bool off_table(const Block& b) { return !inside_unit(b.center); }

inline const Block* find_block(const WorldState& w, const std::string& id) {
  for (const auto& b : w.blocks)
    if (b.id == id) return &b;
  return nullptr;
}

inline const Block* find_block_by_color(const WorldState& w,
                                        const std::string& color) {
  for (const auto& b : w.blocks)
    if (b.color == color) return &b;
  return nullptr;
}

// Decreasing-rank check for one peg stack.
inline bool peg_stack_legal(const std::vector<int>& stack) {
  for (std::size_t i = 1; i < stack.size(); ++i)
    if (stack[i] >= stack[i - 1]) return false;
  return true;
}

inline bool pickplace_invariant_holds(const PickPlaceState& s) {
  for (const auto& peg : s.pegs)
    if (!peg_stack_legal(peg)) return false;
  // Each ring appears exactly once across pegs and `held`.
  std::map<int, int> count;
  for (const auto& peg : s.pegs)
    for (int r : peg) ++count[r];
  if (s.held && s.held->rfind("ring ", 0) == 0)
    ++count[std::stoi(s.held->substr(5))];
  for (const auto& [rank, c] : count) {
    (void)rank;
    if (c != 1) return false;
  }
  return true;
}

}  // namespace llma
