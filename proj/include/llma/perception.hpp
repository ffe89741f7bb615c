#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "llma/rng.hpp"
#include "llma/world.hpp"

namespace llma {

// Emulates the open-vocabulary detector: ground-truth boxes with optional
// corner jitter and misses, deterministic given the seed.
struct NoiseConfig {
  double epsilon = 0.005;  // uniform +-epsilon jitter per box corner
  double p_miss = 0.02;    // per-object miss probability

  static NoiseConfig off() { return {0.0, 0.0}; }
};

struct Detection {
  std::string label;
  Point2 box_min;
  Point2 box_max;
  bool detected = true;
};

// What a part letter points at. Block sides carry a midpoint and outward
// normal; pick/place elements (rings, pegs, blocks, bowls) are grasped or
// targeted at their reference point.
struct PartRef {
  enum class Kind { BlockSide, Ring, Peg, LooseBlock, Bowl };
  std::string owner;  // object id, e.g. "green block", "ring 1", "peg 2"
  Kind kind = Kind::BlockSide;
  Side side = Side::Bottom;  // meaningful for BlockSide only
  Point2 point;
  Vec2 outward_normal{0.0, 0.0};
};

// The textual observation s_t plus the letter -> part map needed to ground
// affordance values back into geometry.
struct SceneDescription {
  std::string text;
  std::map<std::string, PartRef> part_index;
  std::vector<std::string> omitted;  // labels dropped by detection misses
};

inline std::string part_letter(std::size_t i) {
  std::string s;
  s.push_back(static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

namespace detail {

inline Detection jitter_box(const std::string& label, Point2 lo, Point2 hi,
                            const NoiseConfig& noise, Rng& rng) {
  Detection d{label, lo, hi, true};
  if (noise.p_miss > 0.0 && rng.bernoulli(noise.p_miss)) {
    d.detected = false;
    return d;
  }
  if (noise.epsilon > 0.0) {
    d.box_min.x += rng.uniform(-noise.epsilon, noise.epsilon);
    d.box_min.y += rng.uniform(-noise.epsilon, noise.epsilon);
    d.box_max.x += rng.uniform(-noise.epsilon, noise.epsilon);
    d.box_max.y += rng.uniform(-noise.epsilon, noise.epsilon);
    if (d.box_min.x > d.box_max.x) std::swap(d.box_min.x, d.box_max.x);
    if (d.box_min.y > d.box_max.y) std::swap(d.box_min.y, d.box_max.y);
  }
  return d;
}

// Ring geometry on a peg: rings are 0.024 tall, wider with rank.
inline double ring_half_width(int rank) { return 0.012 + 0.012 * rank; }
constexpr double kRingHeight = 0.024;
constexpr double kPegHalfWidth = 0.008;
constexpr double kPegHeight = 0.1;
constexpr double kBowlHalfExtent = 0.045;

inline Point2 ring_center(Point2 peg_base, int level) {
  return {peg_base.x, peg_base.y + kRingHeight * (level + 0.5)};
}

}  // namespace detail

// One Detection per object, in a canonical order (blocks; then rings by
// rank, pegs, loose blocks, bowls). Held objects are not on the table and
// are skipped. Deterministic given the seed.
inline std::vector<Detection> detect(const WorldState& state,
                                     const NoiseConfig& noise,
                                     std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  std::vector<Detection> out;
  for (const auto& b : state.blocks) {
    const Vec2 h{b.half_extent, b.half_extent};
    out.push_back(
        detail::jitter_box(b.id, b.center - h, b.center + h, noise, rng));
  }
  if (state.pickplace) {
    const auto& pp = *state.pickplace;
    // Rings by rank so the detection order is stable across moves.
    std::vector<std::pair<int, Point2>> rings;  // (rank, center)
    for (std::size_t p = 0; p < pp.pegs.size(); ++p)
      for (std::size_t l = 0; l < pp.pegs[p].size(); ++l)
        rings.emplace_back(pp.pegs[p][l],
                           detail::ring_center(pp.peg_positions[p],
                                               static_cast<int>(l)));
    std::sort(rings.begin(), rings.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rank, c] : rings) {
      const Vec2 h{detail::ring_half_width(rank), detail::kRingHeight / 2};
      out.push_back(detail::jitter_box("ring " + std::to_string(rank), c - h,
                                       c + h, noise, rng));
    }
    for (std::size_t p = 0; p < pp.pegs.size(); ++p) {
      const Point2 base = pp.peg_positions[p];
      out.push_back(detail::jitter_box(
          "peg " + std::to_string(p + 1),
          {base.x - detail::kPegHalfWidth, base.y},
          {base.x + detail::kPegHalfWidth, base.y + detail::kPegHeight}, noise,
          rng));
    }
    for (const auto& b : pp.loose_blocks) {
      if (pp.held && *pp.held == b.id) continue;
      const Vec2 h{kDefaultBlockHalfExtent, kDefaultBlockHalfExtent};
      out.push_back(
          detail::jitter_box(b.id, b.center - h, b.center + h, noise, rng));
    }
    for (const auto& bowl : pp.bowls) {
      const Vec2 h{detail::kBowlHalfExtent, detail::kBowlHalfExtent};
      out.push_back(detail::jitter_box(bowl.color + " bowl", bowl.center - h,
                                       bowl.center + h, noise, rng));
    }
  }
  return out;
}

// Renders the "[object parts]" block: every detected object, its box center,
// its lettered functional parts, and the effector pose. Undetected objects
// are omitted from the text and recorded in `omitted`. Pure and
// deterministic; coordinates printed with 3 decimals.
inline SceneDescription describe(
    const std::vector<Detection>& detections, const EndEffector& effector,
    const std::optional<std::string>& held = std::nullopt) {
  SceneDescription scene;
  std::string& text = scene.text;
  std::size_t letter = 0;

  // Peg association for rings: nearest detected peg by x.
  std::vector<std::pair<int, Point2>> pegs;  // (peg number, box center)
  for (const auto& d : detections) {
    if (d.detected && d.label.rfind("peg ", 0) == 0)
      pegs.emplace_back(std::stoi(d.label.substr(4)),
                        Point2{(d.box_min.x + d.box_max.x) / 2, d.box_min.y});
  }
  struct RingInfo {
    std::string label;
    Point2 center;
    int peg = -1;
  };
  std::vector<RingInfo> rings;
  for (const auto& d : detections) {
    if (!d.detected || d.label.rfind("ring ", 0) != 0) continue;
    RingInfo r{d.label, {(d.box_min.x + d.box_max.x) / 2,
                         (d.box_min.y + d.box_max.y) / 2}};
    double best = 0.15;  // association radius
    for (const auto& [num, base] : pegs) {
      const double dx = std::abs(base.x - r.center.x);
      if (dx < best) {
        best = dx;
        r.peg = num;
      }
    }
    rings.push_back(r);
  }
  auto peg_stack_text = [&](int peg_num) {
    std::vector<const RingInfo*> on;
    for (const auto& r : rings)
      if (r.peg == peg_num) on.push_back(&r);
    std::sort(on.begin(), on.end(), [](const RingInfo* a, const RingInfo* b) {
      return a->center.y < b->center.y;
    });
    if (on.empty()) return std::string("empty");
    std::string s = "rings from bottom to top: ";
    for (std::size_t i = 0; i < on.size(); ++i) {
      if (i) s += ", ";
      s += on[i]->label;
    }
    return s;
  };

  bool pickplace_scene = held.has_value();
  for (const auto& d : detections)
    if (d.label.rfind("ring ", 0) == 0 || d.label.rfind("peg ", 0) == 0 ||
        d.label.find(" bowl") != std::string::npos)
      pickplace_scene = true;

  bool any = false;
  for (const auto& d : detections) {
    if (!d.detected) {
      scene.omitted.push_back(d.label);
      continue;
    }
    any = true;
    const Point2 c{(d.box_min.x + d.box_max.x) / 2,
                   (d.box_min.y + d.box_max.y) / 2};
    if (d.label.rfind("ring ", 0) == 0) {
      const std::string L = part_letter(letter++);
      scene.part_index[L] = PartRef{d.label, PartRef::Kind::Ring,
                                    Side::Bottom, c, {0.0, 0.0}};
      text += "- " + d.label + " [part " + L + "]: center " + fmt_point(c);
      RingInfo* self = nullptr;
      for (auto& r : rings)
        if (r.label == d.label) self = &r;
      if (self && self->peg >= 0) {
        bool top = true;
        for (const auto& r : rings)
          if (r.peg == self->peg && r.center.y > self->center.y) top = false;
        text += ", on peg " + std::to_string(self->peg) +
                (top ? " (top of stack)" : " (buried)");
      }
      text += "\n";
    } else if (d.label.rfind("peg ", 0) == 0) {
      const std::string L = part_letter(letter++);
      const Point2 base{c.x, d.box_min.y};
      scene.part_index[L] =
          PartRef{d.label, PartRef::Kind::Peg, Side::Bottom, base, {0.0, 0.0}};
      text += "- " + d.label + " [part " + L + "]: base at " +
              fmt_point(base) + ", " + peg_stack_text(std::stoi(d.label.substr(4))) +
              "\n";
    } else if (d.label.find(" bowl") != std::string::npos) {
      const std::string L = part_letter(letter++);
      scene.part_index[L] =
          PartRef{d.label, PartRef::Kind::Bowl, Side::Bottom, c, {0.0, 0.0}};
      text += "- " + d.label + " [part " + L + "]: center " + fmt_point(c) +
              "\n";
    } else {
      // A block. In pushing scenes its four sides are the functional parts;
      // in pick/place scenes the suction gripper grasps the center.
      text += "- " + d.label + ": center " + fmt_point(c) + ", box (" +
              fmt_point(d.box_min) + ", " + fmt_point(d.box_max) + ")\n";
      if (pickplace_scene) {
        const std::string L = part_letter(letter++);
        scene.part_index[L] = PartRef{d.label, PartRef::Kind::LooseBlock,
                                      Side::Bottom, c, {0.0, 0.0}};
        text += "  graspable at center [part " + L + "] " + fmt_point(c) +
                "\n";
      } else {
        Block b{d.label, "", c, (d.box_max.x - d.box_min.x) / 2};
        for (const auto& part : functional_parts(b)) {
          const std::string L = part_letter(letter++);
          scene.part_index[L] =
              PartRef{d.label, PartRef::Kind::BlockSide, part.side,
                      part.midpoint, part.outward_normal};
          text += "  side " + L + " (" + side_name(part.side) + " side) at " +
                  fmt_point(part.midpoint) + "\n";
        }
      }
    }
  }
  if (!any) text += "No objects detected.\n";
  text += "- end-effector: center " + fmt_point(effector.center) +
          ", radius " + fmt_coord(effector.radius) + "\n";
  if (pickplace_scene)
    text += "- gripper: " +
            (held ? "holding " + *held : std::string("empty")) + "\n";
  return scene;
}

}  // namespace llma
