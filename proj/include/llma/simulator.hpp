#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "llma/control.hpp"
#include "llma/error.hpp"
#include "llma/world.hpp"

namespace llma {

// Quasi-static pushing: while the effector disc overlaps a block's square
// dilated by the effector radius, the block translates along the axis-aligned
// contact normal by exactly the penetration depth. Blocks stop when the
// effector stops; no momentum.

struct SimParams {
  double micro_step = 1e-3;  // table units per integration sub-step
};

struct Contact {
  std::string block_id;
  Side side;        // the block side facing the pusher
  double fraction;  // first-contact position along the segment, in [0,1]
};

struct Push {
  std::string block_id;
  Vec2 displacement;  // total over the step; zero for non-contacted blocks
};

struct StepOutcome {
  WorldState state;
  std::vector<Contact> contacts;
  std::vector<Push> pushed;
  std::vector<std::string> off_table_events;
};

namespace detail {

// Resolves one pusher/block penetration along the axis of least depth.
// Returns the side of `b` that was contacted, or nothing if no overlap.
// `half_sum` is the sum of the two half extents (dilated boundary).
inline std::optional<std::pair<Side, Vec2>> resolve_overlap(
    Point2 pusher, double half_sum, Block& b) {
  const double dx = b.center.x - pusher.x;
  const double dy = b.center.y - pusher.y;
  const double pen_x = half_sum - std::abs(dx);
  const double pen_y = half_sum - std::abs(dy);
  if (pen_x <= 0.0 || pen_y <= 0.0) return std::nullopt;
  if (pen_x <= pen_y) {
    const double dir = dx >= 0.0 ? 1.0 : -1.0;
    b.center.x += dir * pen_x;
    return std::make_pair(dir > 0.0 ? Side::Left : Side::Right,
                          Vec2{dir * pen_x, 0.0});
  }
  const double dir = dy >= 0.0 ? 1.0 : -1.0;
  b.center.y += dir * pen_y;
  return std::make_pair(dir > 0.0 ? Side::Bottom : Side::Top,
                        Vec2{0.0, dir * pen_y});
}

}  // namespace detail

// Moves the effector in a straight segment toward `target` (clamped to the
// table), subdividing into micro-steps and resolving contacts after each.
// Chained block-to-block pushes propagate along the same axis. Motion stops
// at the micro-step where a block's center leaves the table.
inline StepOutcome step_to_waypoint(const WorldState& state, Point2 target,
                                    const SimParams& params = {}) {
  if (!finite(target)) throw SequenceError("non-finite waypoint target");
  StepOutcome out{state, {}, {}, {}};
  WorldState& w = out.state;

  target = clamp_to_unit(target);
  const Point2 start = w.effector.center;
  const Vec2 seg = target - start;
  const double len = norm(seg);
  // No motion: leave the state bit-identical, including any resting contact.
  for (const auto& b : w.blocks) out.pushed.push_back({b.id, {0.0, 0.0}});
  if (len == 0.0) return out;

  const int n_steps =
      std::max(1, static_cast<int>(std::ceil(len / params.micro_step)));
  const double radius = w.effector.radius;

  auto push_of = [&](const std::string& id) -> Push& {
    for (auto& p : out.pushed)
      if (p.block_id == id) return p;
    out.pushed.push_back({id, {0.0, 0.0}});
    return out.pushed.back();
  };
  auto record_contact = [&](const std::string& id, Side side, double frac) {
    for (const auto& c : out.contacts)
      if (c.block_id == id && c.side == side) return;
    out.contacts.push_back({id, side, frac});
  };

  bool aborted = false;
  for (int i = 1; i <= n_steps && !aborted; ++i) {
    const double frac = static_cast<double>(i) / n_steps;
    w.effector.center = start + seg * frac;

    // Effector vs blocks, then chained block vs block along the push axis.
    // A few passes settle multi-body chains; each pass moves blocks strictly
    // outward so the loop terminates.
    for (std::size_t pass = 0; pass < w.blocks.size() + 1; ++pass) {
      bool any = false;
      for (auto& b : w.blocks) {
        auto hit = detail::resolve_overlap(w.effector.center,
                                           b.half_extent + radius, b);
        if (!hit) continue;
        any = true;
        record_contact(b.id, hit->first, frac);
        push_of(b.id).displacement = push_of(b.id).displacement + hit->second;
        // Chain: the moved block may now overlap neighbors; push them along
        // the same axis, breadth-first.
        std::vector<std::size_t> queue;
        for (std::size_t j = 0; j < w.blocks.size(); ++j)
          if (&w.blocks[j] == &b) queue.push_back(j);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
          const Block mover = w.blocks[queue[qi]];
          for (std::size_t j = 0; j < w.blocks.size(); ++j) {
            if (j == queue[qi]) continue;
            Block& other = w.blocks[j];
            if (other.id == mover.id) continue;
            const double half_sum = mover.half_extent + other.half_extent;
            const double ddx = other.center.x - mover.center.x;
            const double ddy = other.center.y - mover.center.y;
            if (std::abs(ddx) >= half_sum || std::abs(ddy) >= half_sum)
              continue;
            // Same axis as the originating push.
            Vec2 delta{0.0, 0.0};
            Side side;
            if (hit->second.x != 0.0) {
              const double dir = ddx >= 0.0 ? 1.0 : -1.0;
              delta.x = dir * (half_sum - std::abs(ddx));
              side = dir > 0.0 ? Side::Left : Side::Right;
            } else {
              const double dir = ddy >= 0.0 ? 1.0 : -1.0;
              delta.y = dir * (half_sum - std::abs(ddy));
              side = dir > 0.0 ? Side::Bottom : Side::Top;
            }
            other.center = other.center + delta;
            record_contact(other.id, side, frac);
            push_of(other.id).displacement =
                push_of(other.id).displacement + delta;
            queue.push_back(j);
          }
        }
      }
      if (!any) break;
    }

    for (const auto& b : w.blocks) {
      if (off_table(b)) {
        bool seen = false;
        for (const auto& id : out.off_table_events) seen |= (id == b.id);
        if (!seen) out.off_table_events.push_back(b.id);
        aborted = true;
      }
    }
  }
  return out;
}

// Applies the K waypoints in order; aborts early once any block goes
// off-table. Rejects sequences of the wrong length before any motion.
inline std::pair<WorldState, std::vector<StepOutcome>> execute_sequence(
    const WorldState& state, const ControlSequence& seq, int k,
    const SimParams& params = {}) {
  if (static_cast<int>(seq.waypoints.size()) != k)
    throw SequenceError("control sequence must have exactly " +
                        std::to_string(k) + " waypoints, got " +
                        std::to_string(seq.waypoints.size()));
  WorldState current = state;
  std::vector<StepOutcome> outcomes;
  for (const Point2& wp : seq.waypoints) {
    StepOutcome o = step_to_waypoint(current, wp, params);
    current = o.state;
    const bool abort = !o.off_table_events.empty();
    outcomes.push_back(std::move(o));
    if (abort) break;
  }
  return {std::move(current), std::move(outcomes)};
}

// ---------------------------------------------------------------------------
// Discrete pick/place transitions (suction gripper tasks).

using PlaceTarget = std::variant<int, Point2>;  // peg index or table point

// Picks `object_id` (a ring, which must be the top of its peg, or a loose
// block). Throws IllegalMoveError and leaves no trace on failure.
inline PickPlaceState apply_pick(const PickPlaceState& state,
                                 const std::string& object_id) {
  if (state.held)
    throw IllegalMoveError("cannot pick " + object_id + ": already holding " +
                           *state.held);
  PickPlaceState next = state;
  if (object_id.rfind("ring ", 0) == 0) {
    const int rank = std::stoi(object_id.substr(5));
    for (auto& peg : next.pegs) {
      if (!peg.empty() && peg.back() == rank) {
        peg.pop_back();
        next.held = object_id;
        return next;
      }
    }
    for (const auto& peg : state.pegs)
      for (int r : peg)
        if (r == rank)
          throw IllegalMoveError("cannot pick " + object_id +
                                 ": it is buried under another ring");
    throw IllegalMoveError("no such ring: " + object_id);
  }
  for (const auto& b : next.loose_blocks) {
    if (b.id == object_id) {
      next.held = object_id;
      return next;
    }
  }
  throw IllegalMoveError("no such object: " + object_id);
}

// Places the held object: rings go on pegs (smaller-on-larger only), blocks
// go to a table point.
inline PickPlaceState apply_place(const PickPlaceState& state,
                                  const PlaceTarget& destination) {
  if (!state.held) throw IllegalMoveError("nothing is held");
  PickPlaceState next = state;
  const std::string id = *state.held;
  if (id.rfind("ring ", 0) == 0) {
    if (!std::holds_alternative<int>(destination))
      throw IllegalMoveError("a ring must be placed on a peg");
    const int peg = std::get<int>(destination);
    if (peg < 0 || peg >= static_cast<int>(next.pegs.size()))
      throw IllegalMoveError("no such peg: " + std::to_string(peg + 1));
    const int rank = std::stoi(id.substr(5));
    if (!next.pegs[peg].empty() && next.pegs[peg].back() < rank)
      throw IllegalMoveError("cannot place " + id + " on peg " +
                             std::to_string(peg + 1) +
                             ": a smaller ring is on top");
    next.pegs[peg].push_back(rank);
    next.held.reset();
    return next;
  }
  if (!std::holds_alternative<Point2>(destination))
    throw IllegalMoveError("a block must be placed at a table point");
  for (auto& b : next.loose_blocks) {
    if (b.id == id) {
      b.center = std::get<Point2>(destination);
      next.held.reset();
      return next;
    }
  }
  throw IllegalMoveError("held object not found: " + id);
}

}  // namespace llma
