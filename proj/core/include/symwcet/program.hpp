#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symwcet/cfg.hpp"
#include "symwcet/param.hpp"

namespace symwcet {

/// Context annotation as written in a program document: `target` names a
/// block (or split variant), `loop` a loop header or "TOP".
struct AnnotationSpec {
  std::string target;
  std::string loop;
  Param max;

  friend bool operator==(const AnnotationSpec&, const AnnotationSpec&) = default;
};

struct VariantSpec {
  struct Constraint {
    std::string loop;
    Param max;
    friend bool operator==(const Constraint&, const Constraint&) = default;
  };

  std::string id;
  Param wcet;
  std::optional<Constraint> annotation;

  friend bool operator==(const VariantSpec&, const VariantSpec&) = default;
};

struct SplitSpec {
  std::string block;
  std::vector<VariantSpec> variants;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

struct Program {
  std::string name;
  Cfg cfg;
  std::map<std::string, Param> loop_bounds;
  std::vector<AnnotationSpec> annotations;
  std::vector<SplitSpec> splits;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Parses the JSON program document. Unknown keys are rejected.
Program parse_program(const std::string& text);
Program load_program(const std::string& path);

/// Inverse of parse_program (two-space indented JSON).
std::string serialize_program(const Program& p);

}  // namespace symwcet
