#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "llma/error.hpp"
#include "llma/geometry.hpp"

namespace llma {

enum class TaskKind { B2P, B2B, Sep, Hanoi, BlockInBowl };

inline const char* task_name(TaskKind k) {
  switch (k) {
    case TaskKind::B2P: return "b2p";
    case TaskKind::B2B: return "b2b";
    case TaskKind::Sep: return "sep";
    case TaskKind::Hanoi: return "hanoi";
    case TaskKind::BlockInBowl: return "block-in-bowl";
  }
  return "?";
}

inline std::optional<TaskKind> task_from_name(const std::string& s) {
  for (TaskKind k : {TaskKind::B2P, TaskKind::B2B, TaskKind::Sep,
                     TaskKind::Hanoi, TaskKind::BlockInBowl})
    if (s == task_name(k)) return k;
  return std::nullopt;
}

constexpr std::array<const char*, 6> kColorPalette = {
    "red", "green", "blue", "yellow", "purple", "orange"};

// The eight named B2P target locations: four sides plus four corners.
struct NamedLocation {
  const char* phrase;  // as rendered inside the instruction
  Point2 point;
};

inline const std::array<NamedLocation, 8>& named_locations() {
  static const std::array<NamedLocation, 8> locs = {{
      {"left center side of the table", {0.1, 0.5}},
      {"right center side of the table", {0.9, 0.5}},
      {"top center side of the table", {0.5, 0.9}},
      {"bottom center side of the table", {0.5, 0.1}},
      {"top left corner of the table", {0.1, 0.9}},
      {"top right corner of the table", {0.9, 0.9}},
      {"bottom left corner of the table", {0.1, 0.1}},
      {"bottom right corner of the table", {0.9, 0.1}},
  }};
  return locs;
}

// Accepted synonyms beyond the sampled phrases ("left side" etc.).
inline const std::vector<NamedLocation>& location_synonyms() {
  static const std::vector<NamedLocation> syn = {
      {"left side of the table", {0.1, 0.5}},
      {"right side of the table", {0.9, 0.5}},
      {"top side of the table", {0.5, 0.9}},
      {"bottom side of the table", {0.5, 0.1}},
      {"upper left corner of the table", {0.1, 0.9}},
      {"upper right corner of the table", {0.9, 0.9}},
      {"lower left corner of the table", {0.1, 0.1}},
      {"lower right corner of the table", {0.9, 0.1}},
  };
  return syn;
}

// What an instruction asks for, independent of its phrasing.
struct InstructionSemantics {
  TaskKind kind = TaskKind::B2P;
  std::string target_color;   // pushed block / block color to collect
  std::string partner_color;  // B2B/Sep second block; BlockInBowl bowl color
  std::string location_phrase;  // B2P only
  Point2 location_point;        // B2P only
  int goal_peg = 1;             // Hanoi, 0-based; default: the second peg
};

// >=3 paraphrase templates per task kind; `variant` selects one.
inline std::string render_instruction(const InstructionSemantics& sem,
                                      int variant) {
  const auto& t = sem.target_color;
  const auto& p = sem.partner_color;
  switch (sem.kind) {
    case TaskKind::B2P:
      switch (variant % 3) {
        case 0: return "push the " + t + " block to the " + sem.location_phrase;
        case 1: return "move the " + t + " block to the " + sem.location_phrase;
        default:
          return "slide the " + t + " block to the " + sem.location_phrase;
      }
    case TaskKind::B2B:
      switch (variant % 3) {
        case 0: return "push the " + t + " block to the " + p + " block";
        case 1:
          return "move the " + t + " block until it touches the " + p +
                 " block";
        default: return "bring the " + t + " block to the " + p + " block";
      }
    case TaskKind::Sep:
      switch (variant % 3) {
        case 0: return "separate the " + t + " block and the " + p + " block";
        case 1:
          return "move the " + t + " block and the " + p + " block apart";
        default:
          return "push the " + t + " block away from the " + p + " block";
      }
    case TaskKind::Hanoi:
      switch (variant % 3) {
        case 0: return "solve towers of hanoi";
        case 1: return "solve the three-ring towers of hanoi";
        default:
          return "move all the rings to the " +
                 std::string(sem.goal_peg == 0   ? "first"
                             : sem.goal_peg == 1 ? "second"
                                                 : "third") +
                 " peg";
      }
    case TaskKind::BlockInBowl:
      switch (variant % 3) {
        case 0:
          return "place all blocks of " + t + " color into the " + p +
                 " bowls";
        case 1: return "put the " + t + " blocks in the " + p + " bowls";
        default:
          return "move every " + t + " block into a " + p + " bowl";
      }
  }
  throw OracleError("unknown task kind");
}

namespace detail {

// Colors in order of appearance; "the <color> block"/"<color> bowl" style.
inline std::vector<std::string> colors_in_order(const std::string& text,
                                                const std::string& suffix) {
  std::vector<std::pair<std::size_t, std::string>> found;
  for (const char* color : kColorPalette) {
    const std::string needle = std::string(color) + " " + suffix;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
      found.emplace_back(pos, color);
      pos += needle.size();
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<std::string> out;
  for (auto& [pos, c] : found) {
    (void)pos;
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// Recovers semantics from instruction text. Understands the sampled phrases
// plus common synonyms; throws OracleError when unresolvable.
inline InstructionSemantics parse_instruction(const std::string& text) {
  InstructionSemantics sem;
  if (text.find("hanoi") != std::string::npos) {
    sem.kind = TaskKind::Hanoi;
    if (text.find("first peg") != std::string::npos) sem.goal_peg = 0;
    else if (text.find("third peg") != std::string::npos) sem.goal_peg = 2;
    else sem.goal_peg = 1;
    return sem;
  }
  if (text.find("rings") != std::string::npos &&
      text.find("peg") != std::string::npos) {
    sem.kind = TaskKind::Hanoi;
    if (text.find("first peg") != std::string::npos) sem.goal_peg = 0;
    else if (text.find("third peg") != std::string::npos) sem.goal_peg = 2;
    else sem.goal_peg = 1;
    return sem;
  }
  if (text.find("bowl") != std::string::npos) {
    sem.kind = TaskKind::BlockInBowl;
    auto blocks = detail::colors_in_order(text, "block");
    auto bowls = detail::colors_in_order(text, "bowl");
    if (blocks.empty()) {
      // "place all blocks of red color into the green bowls"
      for (const char* color : kColorPalette)
        if (text.find(std::string(color) + " color") != std::string::npos)
          blocks.push_back(color);
    }
    if (blocks.empty() || bowls.empty())
      throw OracleError("cannot resolve block/bowl colors: " + text);
    sem.target_color = blocks.front();
    sem.partner_color = bowls.front();
    return sem;
  }
  const auto blocks = detail::colors_in_order(text, "block");
  if (text.find("separate") != std::string::npos ||
      text.find("apart") != std::string::npos ||
      text.find("away from") != std::string::npos) {
    if (blocks.size() < 2)
      throw OracleError("separate instruction needs two blocks: " + text);
    sem.kind = TaskKind::Sep;
    sem.target_color = blocks[0];
    sem.partner_color = blocks[1];
    return sem;
  }
  if (blocks.size() >= 2) {
    sem.kind = TaskKind::B2B;
    sem.target_color = blocks[0];
    sem.partner_color = blocks[1];
    return sem;
  }
  if (blocks.size() == 1) {
    sem.kind = TaskKind::B2P;
    sem.target_color = blocks[0];
    for (const auto& loc : named_locations()) {
      if (text.find(loc.phrase) != std::string::npos) {
        sem.location_phrase = loc.phrase;
        sem.location_point = loc.point;
        return sem;
      }
    }
    for (const auto& loc : location_synonyms()) {
      if (text.find(loc.phrase) != std::string::npos) {
        sem.location_phrase = loc.phrase;
        sem.location_point = loc.point;
        return sem;
      }
    }
    throw OracleError("cannot resolve target location: " + text);
  }
  throw OracleError("cannot resolve instruction: " + text);
}

}  // namespace llma
