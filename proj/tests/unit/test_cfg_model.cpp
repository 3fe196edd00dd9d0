#include <functional>
#include <random>
#include <set>

#include "common.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "symwcet/cfg.hpp"
#include "symwcet/error.hpp"
#include "symwcet/loops.hpp"

using namespace symwcet;
using namespace symwcet::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Syntax;
}

std::vector<bool> reachable_without(const Cfg& g, std::optional<BlockIndex> removed) {
  std::vector<bool> seen(g.size(), false);
  if (removed == g.entry()) return seen;
  std::vector<BlockIndex> stack{g.entry()};
  seen[g.entry()] = true;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : g.successors(u)) {
      if (v == removed || seen[v]) continue;
      seen[v] = true;
      stack.push_back(v);
    }
  }
  return seen;
}

// d dominates v iff every entry-to-v path meets d, i.e. v is cut off once d is gone.
bool brute_dominates(const Cfg& g, BlockIndex d, BlockIndex v) {
  return d == v || !reachable_without(g, d)[v];
}

std::vector<LoopRef> lattice_elements(const LoopLattice& lat) {
  std::vector<LoopRef> out{LoopRef::top(), LoopRef::bottom()};
  for (const auto& l : lat.labels()) out.push_back(LoopRef::loop(l));
  return out;
}

}  // namespace

TEST_SUITE("cfg_model") {
  TEST_CASE("nested parses into six blocks and eight edges") {
    const auto p = load_data("nested");
    CHECK(p.name == "nested");
    CHECK(p.cfg.size() == 6);
    CHECK(p.cfg.edges().size() == 8);
    CHECK(p.cfg.id(p.cfg.entry()) == "b1");
    CHECK(p.cfg.id(p.cfg.exit()) == "b5");
    CHECK(p.loop_bounds.at("b2") == Param(2));
  }

  TEST_CASE("document errors") {
    CHECK(kind_of([] { parse_program(R"({"name":"e","blocks":[],"edges":[],"entry":"a","exit":"a"})"); }) ==
          ErrorKind::InvalidProgram);
    try {
      parse_program(R"({"name":"e","blocks":[],"edges":[],"entry":"a","exit":"a"})");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "no entry node");
    }
    CHECK(kind_of([] { parse_program("{\"name\": "); }) == ErrorKind::Syntax);
    CHECK(kind_of([] {
            parse_program(R"({"name":"x","blocks":[{"id":"a","wcet":1}],"edges":[],"entry":"a","exit":"a","bogus":1})");
          }) == ErrorKind::Syntax);
    CHECK(kind_of([] {
            parse_program(R"({"name":"x","blocks":[{"id":"a","wcet":1},{"id":"a","wcet":2}],"edges":[],
                              "entry":"a","exit":"a"})");
          }) == ErrorKind::DuplicateId);
    CHECK(kind_of([] {
            parse_program(R"({"name":"x","blocks":[{"id":"a","wcet":1}],"edges":[["a","z"]],"entry":"a","exit":"a"})");
          }) == ErrorKind::UnknownBlock);
    CHECK(kind_of([] {
            parse_program(R"({"name":"x","blocks":[{"id":"a","wcet":1},{"id":"b","wcet":1},{"id":"c","wcet":1}],
                              "edges":[["a","b"],["a","c"]],"entry":"a","exit":"b"})");
          }) == ErrorKind::InvalidProgram);
    CHECK(kind_of([] {
            parse_program(R"({"name":"x","blocks":[{"id":"a","wcet":-3}],"edges":[],"entry":"a","exit":"a"})");
          }) == ErrorKind::InvalidValue);
  }

  TEST_CASE("symbolic values survive parsing") {
    const auto p = load_data("nested_symbolic");
    CHECK(p.loop_bounds.at("b2") == Param::identifier("n"));
    const auto d = load_data("diamond");
    CHECK(d.cfg.block(d.cfg.index("c")).wcet == Param::identifier("w"));
  }

  TEST_CASE("dominators of nested") {
    const auto p = load_data("nested");
    const auto idom = dominators(p.cfg);
    CHECK(idom.count("b1") == 0);
    CHECK(idom.at("b3") == "b1");
    CHECK(idom.at("b4") == "b2");
    CHECK(idom.at("b2") == "b1");
    CHECK(idom.at("b5") == "b1");
  }

  TEST_CASE("dominators of a chain") {
    const Cfg g({{"a", 1}, {"b", 1}, {"c", 1}}, {{"a", "b"}, {"b", "c"}}, "a", "c");
    const auto idom = dominators(g);
    CHECK(idom.at("b") == "a");
    CHECK(idom.at("c") == "b");
  }

  TEST_CASE("dominators agree with the cut-off definition on random graphs") {
    std::mt19937_64 rng(11);
    ProgramShape shape;
    shape.max_blocks = 30;
    shape.max_loops = 5;
    for (int i = 0; i < 40; ++i) {
      const auto p = random_program(rng, shape);
      const auto idom = block_idoms(p.cfg);
      for (BlockIndex v = 0; v < p.cfg.size(); ++v) {
        for (BlockIndex d = 0; d < p.cfg.size(); ++d) {
          bool chain = false;
          for (std::optional<BlockIndex> x = v; x; x = idom[*x]) chain = chain || *x == d;
          CHECK(chain == brute_dominates(p.cfg, d, v));
        }
      }
    }
  }

  TEST_CASE("loop forest of nested") {
    const auto p = load_data("nested");
    const auto f = build_loop_forest(p.cfg, p.loop_bounds);
    REQUIRE(f.size() == 2);
    const auto b1 = *f.loop_of_header(p.cfg.index("b1"));
    const auto b2 = *f.loop_of_header(p.cfg.index("b2"));
    CHECK(f.loop(b2).parent == b1);
    CHECK_FALSE(f.loop(b1).parent.has_value());
    std::set<std::string> body;
    for (auto b : f.loop(b1).body) body.insert(p.cfg.id(b));
    CHECK(body == std::set<std::string>{"b1", "b2", "b3", "b4", "b6"});
    const Edge back{p.cfg.index("b3"), p.cfg.index("b1")};
    const Edge exit{p.cfg.index("b1"), p.cfg.index("b5")};
    CHECK(f.loop(b1).back_edges == std::vector<Edge>{back});
    CHECK(f.loop(b1).exit_edges == std::vector<Edge>{exit});
    CHECK(f.lattice().leq(LoopRef::loop("b2"), LoopRef::loop("b1")));
    CHECK(*f.loop(b2).bound == Param(2));
  }

  TEST_CASE("acyclic graphs have no loops") {
    const auto p = load_data("diamond");
    CHECK(build_loop_forest(p.cfg).size() == 0);
  }

  TEST_CASE("the two-entry triangle is irreducible") {
    const auto p = load_data("irreducible");
    CHECK(kind_of([&] { build_loop_forest(p.cfg); }) == ErrorKind::IrreducibleLoop);
    // No block qualifies as a header: none dominates a predecessor it has.
    for (BlockIndex h = 0; h < p.cfg.size(); ++h) {
      for (auto s : p.cfg.predecessors(h)) CHECK_FALSE((h != s && brute_dominates(p.cfg, h, s)));
    }
  }

  TEST_CASE("self loops and multiple back edges") {
    const Cfg g({{"a", 1}, {"h", 1}, {"x", 1}, {"y", 1}, {"z", 1}},
                {{"a", "h"}, {"h", "h"}, {"h", "x"}, {"x", "y"}, {"x", "x"}, {"y", "x"}, {"y", "z"}}, "a", "z");
    const auto f = build_loop_forest(g);
    REQUIRE(f.size() == 2);
    const auto& lx = f.loop(*f.loop_of_header(g.index("x")));
    CHECK(lx.back_edges.size() == 2);
    CHECK(lx.body == std::vector<BlockIndex>{g.index("x"), g.index("y")});
    CHECK(f.loop(*f.loop_of_header(g.index("h"))).body == std::vector<BlockIndex>{g.index("h")});
  }

  TEST_CASE("loop meet and join") {
    const auto p = load_data("nested");
    const auto f = build_loop_forest(p.cfg);
    const auto& lat = f.lattice();
    const auto b1 = LoopRef::loop("b1");
    const auto b2 = LoopRef::loop("b2");
    CHECK(loop_meet(b2, b1, lat) == b2);
    CHECK(loop_join(b2, b1, lat) == b1);
    CHECK(loop_meet(b1, LoopRef::top(), lat) == b1);
    CHECK(loop_meet(b1, LoopRef::bottom(), lat) == LoopRef::bottom());

    LoopLattice siblings;
    siblings.add("p", std::nullopt);
    siblings.add("q", std::nullopt);
    CHECK(loop_meet(LoopRef::loop("p"), LoopRef::loop("q"), siblings) == LoopRef::bottom());
    CHECK(loop_join(LoopRef::loop("p"), LoopRef::loop("q"), siblings) == LoopRef::top());
    CHECK_THROWS_AS(siblings.meet(LoopRef::loop("r"), LoopRef::top()), Error);
  }

  TEST_CASE("loop invariants on random graphs") {
    std::mt19937_64 rng(12);
    ProgramShape shape;
    shape.max_blocks = 12;
    shape.max_loops = 4;
    for (int i = 0; i < 200; ++i) {
      const auto p = random_program(rng, shape);
      const auto f = build_loop_forest(p.cfg);
      const auto idom = block_idoms(p.cfg);
      auto dom = [&](BlockIndex d, BlockIndex v) {
        for (std::optional<BlockIndex> x = v; x; x = idom[*x]) {
          if (*x == d) return true;
        }
        return false;
      };
      for (const auto& l : f.loops()) {
        for (const auto& [s, h] : l.back_edges) CHECK(dom(h, s));
        CHECK(l.contains(l.header));
        // Body: the header plus every block that reaches a back-edge source
        // without passing through the header.
        std::vector<bool> in(p.cfg.size(), false);
        in[l.header] = true;
        std::vector<BlockIndex> stack;
        for (const auto& [s, h] : l.back_edges) {
          if (!in[s]) {
            in[s] = true;
            stack.push_back(s);
          }
        }
        while (!stack.empty()) {
          const auto u = stack.back();
          stack.pop_back();
          for (auto w : p.cfg.predecessors(u)) {
            if (!in[w]) {
              in[w] = true;
              stack.push_back(w);
            }
          }
        }
        for (BlockIndex b = 0; b < p.cfg.size(); ++b) CHECK(in[b] == l.contains(b));
      }
      // Any two loops are nested or disjoint, and nesting matches the lattice.
      for (std::size_t a = 0; a < f.size(); ++a) {
        for (std::size_t b = 0; b < f.size(); ++b) {
          const auto& la = f.loop(a);
          const auto& lb = f.loop(b);
          bool sub = true;
          bool meets = false;
          for (auto x : la.body) {
            sub = sub && lb.contains(x);
            meets = meets || lb.contains(x);
          }
          const auto ra = LoopRef::loop(p.cfg.id(la.header));
          const auto rb = LoopRef::loop(p.cfg.id(lb.header));
          CHECK(sub == f.lattice().leq(ra, rb));
          if (meets) CHECK((sub || f.lattice().leq(rb, ra)));
        }
      }
      // Meet and join are the greatest lower and least upper bounds.
      const auto& lat = f.lattice();
      const auto all = lattice_elements(lat);
      for (const auto& x : all) {
        for (const auto& y : all) {
          const auto m = lat.meet(x, y);
          const auto j = lat.join(x, y);
          CHECK(lat.leq(m, x));
          CHECK(lat.leq(m, y));
          CHECK(lat.leq(x, j));
          CHECK(lat.leq(y, j));
          for (const auto& z : all) {
            if (lat.leq(z, x) && lat.leq(z, y)) CHECK(lat.leq(z, m));
            if (lat.leq(x, z) && lat.leq(y, z)) CHECK(lat.leq(j, z));
          }
        }
      }
    }
  }

  TEST_CASE("documents round-trip through serialization") {
    std::mt19937_64 rng(13);
    ProgramShape shape;
    shape.max_blocks = 50;
    shape.max_loops = 8;
    for (int i = 0; i < 20; ++i) {
      auto p = random_program(rng, shape);
      p = random_annotations(p, rng);
      const auto text = serialize_program(p);
      const auto q = parse_program(text);
      CHECK(q == p);
      CHECK(serialize_program(q) == text);
    }
    const auto persistence = load_data("persistence");
    CHECK(parse_program(serialize_program(persistence)) == persistence);
  }
}
