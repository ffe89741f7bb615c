#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "llma/control.hpp"
#include "llma/error.hpp"
#include "llma/perception.hpp"

namespace llma {

// High-level planner output: consequences text per candidate part, affordance
// values in [0,1] keyed by part letter, and the ordered sub-task list.
struct PlannerOutput {
  std::map<std::string, std::string> consequences;
  std::map<std::string, double> affordance;
  std::vector<std::string> subtasks;
  std::vector<std::string> warnings;
};

inline bool operator==(const PlannerOutput& a, const PlannerOutput& b) {
  return a.consequences == b.consequences && a.affordance == b.affordance &&
         a.subtasks == b.subtasks;
}

// Part letter with the highest affordance value; map order breaks ties.
inline std::optional<std::string> argmax_part(
    const std::map<std::string, double>& affordance) {
  std::optional<std::string> best;
  double best_v = -1.0;
  for (const auto& [letter, v] : affordance) {
    if (v > best_v) {
      best_v = v;
      best = letter;
    }
  }
  return best;
}

struct PromptSlots {
  std::string arm_skills;
  std::string guidelines;
  std::string instruction;
};

// The planner is zero-shot; the ablation drops every consequence/affordance
// directive and keeps only a sub-task directive.
enum class PlannerStyle { Affordance, Naive };

namespace detail {

inline void require_slot(const std::string& value, const char* name) {
  if (value.empty())
    throw RenderError(std::string("prompt slot is empty: ") + name);
}

}  // namespace detail

// Renders the sub-task planner prompt. Deterministic: identical inputs give
// byte-identical text. No worked examples are included (zero-shot).
inline std::string render_planner_prompt(const PromptSlots& slots,
                                         const SceneDescription& scene,
                                         PlannerStyle style =
                                             PlannerStyle::Affordance) {
  detail::require_slot(slots.arm_skills, "arm skills");
  detail::require_slot(slots.guidelines, "guidelines");
  detail::require_slot(slots.instruction, "task instruction");
  if (scene.text.empty()) throw RenderError("prompt slot is empty: object parts");

  std::string p;
  p += "You are a robotic arm on the table which can " + slots.arm_skills +
       ".\n";
  p += "You need to accomplish a series of robotic manipulation tasks: " +
       slots.guidelines + "\n";
  p += "The task instruction is: " + slots.instruction + "\n";
  p += "The objects on the table are:\n" + scene.text;
  if (style == PlannerStyle::Affordance) {
    p += "You need to:\n";
    p += "1. output the consequences of potential actions;\n";
    p += "2. output the affordance values of each object parts considering "
         "the potential consequences;\n";
    p += "3. output the decomposed sub-tasks according to the consequences "
         "and affordance values.\n";
    p += "Respond with a single JSON object in a fenced code block with "
         "fields \"consequences\" (object mapping part letters to short "
         "texts), \"affordance\" (object mapping part letters to numbers "
         "between 0 and 1) and \"subtasks\" (non-empty array of strings).\n";
  } else {
    p += "You need to:\n";
    p += "1. output the decomposed sub-tasks to accomplish the task "
         "instruction.\n";
    p += "Respond with a single JSON object in a fenced code block with "
         "field \"subtasks\" (non-empty array of strings).\n";
  }
  return p;
}

// Standard formatting note handed to the motion controller.
inline std::string controller_notes(int k) {
  return "You need to generate the above outputs with JSON format: respond "
         "with a single JSON object in a fenced code block whose "
         "\"waypoints\" field is an array of exactly " +
         std::to_string(k) + " [x, y] coordinate pairs";
}

// The two worked examples the motion controller is prompted with.
inline std::array<std::string, 2> default_controller_examples() {
  return {
      "The chosen part is side A (bottom side) of the red block at (0.400, "
      "0.360). The robot approaches from below, then pushes upward.\n"
      "```json\n"
      "{\"waypoints\": [[0.400, 0.250], [0.400, 0.300], [0.400, 0.340], "
      "[0.400, 0.420], [0.400, 0.500]]}\n"
      "```",
      "The chosen part is side D (right side) of the blue block at (0.640, "
      "0.700). The robot detours around the block to its right side, then "
      "pushes to the left.\n"
      "```json\n"
      "{\"waypoints\": [[0.640, 0.780], [0.720, 0.780], [0.720, 0.700], "
      "[0.660, 0.700], [0.560, 0.700]]}\n"
      "```"};
}

// Renders the motion controller prompt: sub-tasks and affordance values from
// the planner, optional notes, and exactly two worked examples (few-shot).
inline std::string render_controller_prompt(
    const PromptSlots& slots, const SceneDescription& scene,
    const PlannerOutput& planner_out, const std::string& notes,
    const std::array<std::string, 2>& examples, bool include_affordance = true) {
  detail::require_slot(slots.arm_skills, "arm skills");
  detail::require_slot(slots.guidelines, "guidelines");
  detail::require_slot(slots.instruction, "task instruction");
  if (planner_out.subtasks.empty())
    throw RenderError("controller prompt requires planner sub-tasks");
  if (include_affordance && planner_out.affordance.empty())
    throw RenderError("controller prompt requires planner affordance values");
  for (const auto& ex : examples)
    if (ex.empty()) throw RenderError("controller prompt requires two examples");

  std::string p;
  p += "You are a robotic arm on the tabletop which can " + slots.arm_skills +
       ".\n";
  p += "You need to accomplish a series of robotic manipulation tasks: " +
       slots.guidelines + "\n";
  p += "The task instruction is: " + slots.instruction + "\n";
  p += "The objects on the table are:\n" + scene.text;
  if (include_affordance) {
    p += "Given the decomposed sub-tasks and the affordance values, you need "
         "to output the control sequence.\n";
  } else {
    p += "Given the decomposed sub-tasks, you need to output the control "
         "sequence.\n";
  }
  p += "The decomposed sub-tasks are:\n";
  for (std::size_t i = 0; i < planner_out.subtasks.size(); ++i)
    p += std::to_string(i + 1) + ". " + planner_out.subtasks[i] + "\n";
  if (include_affordance) {
    p += "The affordance values are:\n";
    for (const auto& [letter, v] : planner_out.affordance) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", v);
      p += "- part " + letter + ": " + buf + "\n";
    }
  }
  if (!notes.empty()) p += "Note that " + notes + ".\n";
  p += "The examples are as follows:\n";
  p += "Example 1:\n" + examples[0] + "\n";
  p += "Example 2:\n" + examples[1] + "\n";
  return p;
}

// ---------------------------------------------------------------------------
// Response parsing. Tolerates surrounding prose and fenced code blocks;
// every failure is a typed ParseError, never a crash.

namespace detail {

inline std::optional<nlohmann::json> try_parse_object(const std::string& s) {
  nlohmann::json j = nlohmann::json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

// Candidate JSON substrings: the whole text, each fenced code block, then
// each balanced top-level brace region (quote- and escape-aware).
inline std::vector<std::string> json_candidates(const std::string& text) {
  std::vector<std::string> out;
  out.push_back(text);
  std::size_t pos = 0;
  while ((pos = text.find("```", pos)) != std::string::npos) {
    std::size_t body = text.find('\n', pos);
    if (body == std::string::npos) break;
    ++body;
    const std::size_t end = text.find("```", body);
    if (end == std::string::npos) break;
    out.push_back(text.substr(body, end - body));
    pos = end + 3;
  }
  int depth = 0;
  bool in_string = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') {
      if (depth == 0) start = i;
      ++depth;
    } else if (c == '}') {
      if (depth > 0 && --depth == 0)
        out.push_back(text.substr(start, i - start + 1));
    }
  }
  return out;
}

inline std::optional<nlohmann::json> extract_json_object(
    const std::string& text) {
  for (const auto& candidate : json_candidates(text))
    if (auto j = try_parse_object(candidate)) return j;
  return std::nullopt;
}

inline std::optional<double> as_number(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      const double d = std::stod(s, &used);
      if (used == s.size() && std::isfinite(d)) return d;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Extracts consequences / affordance / subtasks. Affordance values are
// clamped into [0,1]; unknown part letters are dropped with a warning. A
// missing affordance map (when required) or an empty sub-task list is a
// ParseError.
inline PlannerOutput parse_planner_response(const std::string& text,
                                            const SceneDescription& scene,
                                            bool require_affordance = true) {
  const auto j = detail::extract_json_object(text);
  if (!j) throw ParseError("planner response contains no JSON object");
  PlannerOutput out;

  if (auto it = j->find("consequences"); it != j->end()) {
    if (it->is_object()) {
      for (const auto& [k, v] : it->items())
        out.consequences[k] = v.is_string() ? v.get<std::string>() : v.dump();
    } else if (it->is_string()) {
      out.consequences["all"] = it->get<std::string>();
    }
  }

  if (auto it = j->find("affordance"); it != j->end() && it->is_object()) {
    for (const auto& [k, v] : it->items()) {
      const auto num = detail::as_number(v);
      if (!num) {
        out.warnings.push_back("non-numeric affordance for part " + k);
        continue;
      }
      if (!scene.part_index.count(k)) {
        out.warnings.push_back("unknown part letter dropped: " + k);
        continue;
      }
      out.affordance[k] = std::clamp(*num, 0.0, 1.0);
    }
  }
  if (require_affordance && out.affordance.empty())
    throw ParseError("planner response has no parseable affordance map");

  if (auto it = j->find("subtasks"); it != j->end()) {
    if (it->is_array()) {
      for (const auto& v : *it)
        out.subtasks.push_back(v.is_string() ? v.get<std::string>()
                                             : v.dump());
    } else if (it->is_string() && !it->get<std::string>().empty()) {
      out.subtasks.push_back(it->get<std::string>());
    }
  }
  if (out.subtasks.empty())
    throw ParseError("planner response has an empty sub-task list");
  return out;
}

// Extracts exactly `k` waypoints from the "waypoints" field. Fewer pairs is
// a ParseError; extra pairs are truncated with a warning.
inline ControlSequence parse_controller_response(const std::string& text,
                                                 int k) {
  if (k < 1) throw ParseError("waypoint count must be >= 1");
  const auto j = detail::extract_json_object(text);
  if (!j) throw ParseError("controller response contains no JSON object");
  const auto it = j->find("waypoints");
  if (it == j->end() || !it->is_array())
    throw ParseError("controller response has no waypoints array");

  ControlSequence seq;
  for (const auto& wp : *it) {
    std::optional<double> x, y;
    if (wp.is_array() && wp.size() == 2) {
      x = detail::as_number(wp[0]);
      y = detail::as_number(wp[1]);
    } else if (wp.is_object()) {
      if (wp.contains("x")) x = detail::as_number(wp["x"]);
      if (wp.contains("y")) y = detail::as_number(wp["y"]);
    }
    if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y))
      throw ParseError("waypoint is not a finite [x, y] pair: " + wp.dump());
    seq.waypoints.push_back({*x, *y});
  }
  if (static_cast<int>(seq.waypoints.size()) < k)
    throw ParseError("expected " + std::to_string(k) + " waypoints, got " +
                     std::to_string(seq.waypoints.size()));
  if (static_cast<int>(seq.waypoints.size()) > k) {
    seq.warnings.push_back("truncated " +
                           std::to_string(seq.waypoints.size() - k) +
                           " extra waypoints");
    seq.waypoints.resize(k);
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Wire serialization used by the scripted oracle backend. Parsing a
// serialized output through the parsers above is the identity.

inline std::string to_wire(const PlannerOutput& out) {
  nlohmann::json j;
  j["consequences"] = out.consequences;
  j["affordance"] = out.affordance;
  j["subtasks"] = out.subtasks;
  if (out.affordance.empty()) j.erase("affordance");
  if (out.consequences.empty()) j.erase("consequences");
  return "```json\n" + j.dump(2) + "\n```\n";
}

inline std::string to_wire(const ControlSequence& seq) {
  nlohmann::json j;
  auto& arr = j["waypoints"] = nlohmann::json::array();
  for (const auto& wp : seq.waypoints)
    arr.push_back(nlohmann::json::array({wp.x, wp.y}));
  return "```json\n" + j.dump(2) + "\n```\n";
}

}  // namespace llma
