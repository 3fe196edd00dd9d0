#include "symwcet/program.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "symwcet/error.hpp"

namespace symwcet {

using nlohmann::json;

namespace {

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::Syntax, where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) fail(ErrorKind::Syntax, where + ": unknown key '" + key + "'");
  }
}

const json& required(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Syntax, where + ": missing key '" + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(ErrorKind::Syntax, where + ": expected a string");
  return v.get<std::string>();
}

Param as_param(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return Param(v.get<Cycles>());
  if (v.is_number_integer()) fail(ErrorKind::InvalidValue, where + ": negative value");
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.empty()) fail(ErrorKind::Syntax, where + ": empty identifier");
    return Param::identifier(std::move(s));
  }
  fail(ErrorKind::Syntax, where + ": expected a non-negative integer or an identifier");
}

json to_json(const Param& p) {
  if (p.is_literal()) return p.literal();
  return p.name();
}

}  // namespace

Program parse_program(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Syntax, std::string("malformed JSON: ") + e.what());
  }
  only_keys(doc, {"name", "blocks", "edges", "entry", "exit", "loop_bounds", "annotations", "splits"}, "program");

  std::vector<Block> blocks;
  const auto& jblocks = required(doc, "blocks", "program");
  if (!jblocks.is_array()) fail(ErrorKind::Syntax, "blocks: expected an array");
  for (const auto& b : jblocks) {
    only_keys(b, {"id", "wcet"}, "block");
    auto id = as_string(required(b, "id", "block"), "block.id");
    blocks.push_back({id, as_param(required(b, "wcet", "block " + id), "block " + id + ".wcet")});
  }

  std::vector<EdgeIds> edges;
  const auto& jedges = doc.contains("edges") ? doc["edges"] : json::array();
  if (!jedges.is_array()) fail(ErrorKind::Syntax, "edges: expected an array");
  for (const auto& e : jedges) {
    if (!e.is_array() || e.size() != 2) fail(ErrorKind::Syntax, "edge: expected a [from, to] pair");
    edges.emplace_back(as_string(e[0], "edge"), as_string(e[1], "edge"));
  }

  std::string entry;
  std::string exit;
  if (blocks.empty()) fail(ErrorKind::InvalidProgram, "no entry node");
  entry = as_string(required(doc, "entry", "program"), "entry");
  exit = as_string(required(doc, "exit", "program"), "exit");

  Program p{doc.contains("name") ? as_string(doc["name"], "name") : std::string{},
            Cfg(std::move(blocks), edges, entry, exit),
            {},
            {},
            {}};

  if (doc.contains("loop_bounds")) {
    const auto& jb = doc["loop_bounds"];
    if (!jb.is_object()) fail(ErrorKind::Syntax, "loop_bounds: expected an object");
    for (const auto& [header, value] : jb.items()) {
      p.cfg.index(header);
      p.loop_bounds.emplace(header, as_param(value, "loop_bounds." + header));
    }
  }

  if (doc.contains("annotations")) {
    const auto& ja = doc["annotations"];
    if (!ja.is_array()) fail(ErrorKind::Syntax, "annotations: expected an array");
    for (const auto& a : ja) {
      only_keys(a, {"target", "loop", "max"}, "annotation");
      p.annotations.push_back({as_string(required(a, "target", "annotation"), "annotation.target"),
                               as_string(required(a, "loop", "annotation"), "annotation.loop"),
                               as_param(required(a, "max", "annotation"), "annotation.max")});
    }
  }

  if (doc.contains("splits")) {
    const auto& js = doc["splits"];
    if (!js.is_array()) fail(ErrorKind::Syntax, "splits: expected an array");
    for (const auto& s : js) {
      only_keys(s, {"block", "variants"}, "split");
      SplitSpec spec{as_string(required(s, "block", "split"), "split.block"), {}};
      const auto& jv = required(s, "variants", "split");
      if (!jv.is_array() || jv.empty()) fail(ErrorKind::Syntax, "split.variants: expected a non-empty array");
      for (const auto& v : jv) {
        only_keys(v, {"id", "wcet", "annotation"}, "variant");
        VariantSpec var{as_string(required(v, "id", "variant"), "variant.id"),
                        as_param(required(v, "wcet", "variant"), "variant.wcet"),
                        std::nullopt};
        if (v.contains("annotation") && !v["annotation"].is_null()) {
          const auto& va = v["annotation"];
          only_keys(va, {"loop", "max"}, "variant.annotation");
          var.annotation = VariantSpec::Constraint{as_string(required(va, "loop", "variant.annotation"), "loop"),
                                                   as_param(required(va, "max", "variant.annotation"), "max")};
        }
        spec.variants.push_back(std::move(var));
      }
      p.splits.push_back(std::move(spec));
    }
  }
  return p;
}

Program load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Syntax, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

std::string serialize_program(const Program& p) {
  json doc;
  doc["name"] = p.name;
  doc["blocks"] = json::array();
  for (const auto& b : p.cfg.blocks()) doc["blocks"].push_back({{"id", b.id}, {"wcet", to_json(b.wcet)}});
  doc["edges"] = json::array();
  for (const auto& [u, v] : p.cfg.edges()) doc["edges"].push_back({p.cfg.id(u), p.cfg.id(v)});
  doc["entry"] = p.cfg.id(p.cfg.entry());
  doc["exit"] = p.cfg.id(p.cfg.exit());
  doc["loop_bounds"] = json::object();
  for (const auto& [h, x] : p.loop_bounds) doc["loop_bounds"][h] = to_json(x);
  doc["annotations"] = json::array();
  for (const auto& a : p.annotations)
    doc["annotations"].push_back({{"target", a.target}, {"loop", a.loop}, {"max", to_json(a.max)}});
  doc["splits"] = json::array();
  for (const auto& s : p.splits) {
    json variants = json::array();
    for (const auto& v : s.variants) {
      json jv{{"id", v.id}, {"wcet", to_json(v.wcet)}, {"annotation", nullptr}};
      if (v.annotation) jv["annotation"] = {{"loop", v.annotation->loop}, {"max", to_json(v.annotation->max)}};
      variants.push_back(std::move(jv));
    }
    doc["splits"].push_back({{"block", s.block}, {"variants", std::move(variants)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace symwcet
