#include "symwcet/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "symwcet/awcet.hpp"
#include "symwcet/error.hpp"

namespace symwcet {

namespace {

class Meter {
 public:
  explicit Meter(const PathBudget& b) : budget_(b) {}

  void nodes(std::size_t k) {
    nodes_ += k;
    if (nodes_ > budget_.max_nodes)
      fail(ErrorKind::PathBudgetExceeded, "path enumeration exceeded " + std::to_string(budget_.max_nodes) + " nodes");
  }
  void paths(std::size_t count) const {
    if (count > budget_.max_paths)
      fail(ErrorKind::PathBudgetExceeded, "path enumeration exceeded " + std::to_string(budget_.max_paths) + " paths");
  }

 private:
  PathBudget budget_;
  std::size_t nodes_ = 0;
};

Path concat(const Path& a, const Path& b) {
  Path out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::size_t count_in(const Path& pattern, const Path& p) {
  if (pattern.empty() || pattern.size() > p.size()) return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i + pattern.size() <= p.size();) {
    if (std::equal(pattern.begin(), pattern.end(), p.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++n;
      i += pattern.size();
    } else {
      ++i;
    }
  }
  return n;
}

struct Constraint {
  PathSet patterns;
  Cycles limit;
};

PathSet tpaths_impl(const Cft& t, bool exact, Meter& meter, const PathBudget& budget) {
  switch (t.kind()) {
    case CftKind::Leaf:
      meter.nodes(1);
      return {Path{t.label()}};
    case CftKind::Alt: {
      PathSet out;
      for (const auto& c : t.children()) {
        auto s = tpaths_impl(c, exact, meter, budget);
        out.insert(s.begin(), s.end());
        meter.paths(out.size());
      }
      return out;
    }
    case CftKind::Seq: {
      PathSet out{Path{}};
      for (const auto& c : t.children()) {
        const auto s = tpaths_impl(c, exact, meter, budget);
        PathSet next;
        for (const auto& a : out) {
          for (const auto& b : s) {
            meter.nodes(a.size() + b.size());
            next.insert(concat(a, b));
            meter.paths(next.size());
          }
        }
        out = std::move(next);
      }
      return out;
    }
    case CftKind::Loop:
      break;
  }

  const auto body = tpaths_impl(t.body(), exact, meter, budget);
  const auto exit = tpaths_impl(t.exit(), exact, meter, budget);
  const Cycles bound = t.bound().literal();

  std::vector<Constraint> constraints;
  for (const auto& [node, a] : ann_set(t.body())) {
    if (a.loop == LoopRef::loop(t.label())) constraints.push_back({tpaths_impl(node, exact, meter, budget), a.max.literal()});
  }
  const std::vector<Path> members(body.begin(), body.end());
  std::vector<std::vector<std::size_t>> hits(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& c : constraints) hits[i].push_back(occ(c.patterns, members[i]));
  }

  PathSet iterations;
  std::vector<std::size_t> used(constraints.size(), 0);
  Path cur;
  std::function<void(Cycles)> go = [&](Cycles k) {
    if (!exact || k == bound) {
      iterations.insert(cur);
      meter.paths(iterations.size());
    }
    if (k == bound) return;
    for (std::size_t i = 0; i < members.size(); ++i) {
      bool ok = true;
      for (std::size_t c = 0; c < constraints.size(); ++c) ok = ok && used[c] + hits[i][c] <= constraints[c].limit;
      if (!ok) continue;
      for (std::size_t c = 0; c < constraints.size(); ++c) used[c] += hits[i][c];
      const auto mark = cur.size();
      cur.insert(cur.end(), members[i].begin(), members[i].end());
      meter.nodes(members[i].size() + 1);
      go(k + 1);
      cur.resize(mark);
      for (std::size_t c = 0; c < constraints.size(); ++c) used[c] -= hits[i][c];
    }
  };
  go(0);

  PathSet out;
  for (const auto& a : iterations) {
    for (const auto& b : exit) {
      meter.nodes(a.size() + b.size());
      out.insert(concat(a, b));
      meter.paths(out.size());
    }
  }
  return out;
}

// Annotations of `t` whose loop is not a Loop node inside `t`.
std::vector<std::pair<Cft, Annotation>> external_annotations(const Cft& t) {
  const auto inner = loop_labels(t);
  std::vector<std::pair<Cft, Annotation>> out;
  for (auto& [node, a] : ann_set(t)) {
    const bool internal = a.loop.is_loop() && std::find(inner.begin(), inner.end(), a.loop.label()) != inner.end();
    if (!internal) out.emplace_back(node, a);
  }
  return out;
}

std::map<std::string, Cycles> leaf_wcets(const Cft& t) {
  std::map<std::string, Cycles> out;
  std::function<void(const Cft&)> go = [&](const Cft& n) {
    if (n.is_leaf()) out[n.label()] = n.wcet().literal();
    for (const auto& c : n.children()) go(c);
  };
  go(t);
  return out;
}

// Paths summarised by what the checks observe: WCET and, per tracked leaf,
// its occurrence count. Exact when every annotated node is a leaf.
struct Profile {
  Cycles wcet = 0;
  std::vector<std::size_t> counts;
  auto operator<=>(const Profile&) const = default;
};
using ProfileSet = std::set<Profile>;

struct Tracked {
  std::map<std::string, std::size_t> index;  // annotated leaf label -> slot
  std::map<std::string, Annotation> annotation;
};

Tracked tracked_leaves(const Cft& t) {
  Tracked out;
  for (const auto& [node, a] : ann_set(t)) {
    if (!node.is_leaf()) return {};
    out.index.emplace(node.label(), out.index.size());
    out.annotation.emplace(node.label(), a);
  }
  return out;
}

bool leaf_annotations_only(const Cft& t) {
  const auto anns = ann_set(t);
  return std::all_of(anns.begin(), anns.end(), [](const auto& na) { return na.first.is_leaf(); });
}

Profile add(const Profile& a, const Profile& b) {
  Profile out{checked_add(a.wcet, b.wcet), a.counts};
  for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += b.counts[i];
  return out;
}

ProfileSet profiles_impl(const Cft& t, const Tracked& tr, bool exact, Meter& meter) {
  const std::size_t slots = tr.index.size();
  meter.nodes(1);
  switch (t.kind()) {
    case CftKind::Leaf: {
      Profile p{t.wcet().literal(), std::vector<std::size_t>(slots, 0)};
      if (const auto it = tr.index.find(t.label()); it != tr.index.end()) p.counts[it->second] = 1;
      return {p};
    }
    case CftKind::Alt: {
      ProfileSet out;
      for (const auto& c : t.children()) {
        auto s = profiles_impl(c, tr, exact, meter);
        out.insert(s.begin(), s.end());
        meter.paths(out.size());
      }
      return out;
    }
    case CftKind::Seq: {
      ProfileSet out{Profile{0, std::vector<std::size_t>(slots, 0)}};
      for (const auto& c : t.children()) {
        const auto s = profiles_impl(c, tr, exact, meter);
        ProfileSet next;
        for (const auto& a : out) {
          for (const auto& b : s) {
            meter.nodes(1);
            next.insert(add(a, b));
          }
        }
        meter.paths(next.size());
        out = std::move(next);
      }
      return out;
    }
    case CftKind::Loop:
      break;
  }

  const auto body = profiles_impl(t.body(), tr, exact, meter);
  const auto exit = profiles_impl(t.exit(), tr, exact, meter);
  const Cycles bound = t.bound().literal();
  std::vector<std::pair<std::size_t, Cycles>> limits;  // slot, max per entry
  for (const auto& [label, a] : tr.annotation) {
    if (a.loop == LoopRef::loop(t.label())) limits.emplace_back(tr.index.at(label), a.max.literal());
  }
  auto within = [&](const Profile& p) {
    return std::all_of(limits.begin(), limits.end(), [&](const auto& l) { return p.counts[l.first] <= l.second; });
  };

  ProfileSet level{Profile{0, std::vector<std::size_t>(slots, 0)}};
  ProfileSet iterations;
  if (!exact || bound == 0) iterations = level;
  for (Cycles k = 1; k <= bound && !level.empty(); ++k) {
    ProfileSet next;
    for (const auto& a : level) {
      for (const auto& b : body) {
        meter.nodes(1);
        auto c = add(a, b);
        if (within(c)) next.insert(std::move(c));
      }
    }
    meter.paths(next.size());
    level = std::move(next);
    if (!exact || k == bound) iterations.insert(level.begin(), level.end());
  }

  // Counts checked by this loop are not observed further out.
  ProfileSet out;
  for (auto a : iterations) {
    for (const auto& l : limits) a.counts[l.first] = 0;
    for (const auto& b : exit) {
      meter.nodes(1);
      out.insert(add(a, b));
    }
  }
  meter.paths(out.size());
  return out;
}

}  // namespace

PathSet gpaths_bounded(const Cfg& g, const LoopForest& f, std::optional<BlockIndex> end, const PathBudget& budget) {
  const BlockIndex target = end.value_or(g.exit());
  std::vector<Cycles> bounds(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& b = f.loop(i).bound;
    if (!b) fail(ErrorKind::MissingLoopBound, "loop '" + g.id(f.loop(i).header) + "' has no bound");
    bounds[i] = b->literal();
  }
  Meter meter(budget);
  PathSet out;
  Path path;
  std::vector<std::pair<std::size_t, Cycles>> active;  // loop index, back-edges taken

  std::function<void(BlockIndex)> dfs = [&](BlockIndex u) {
    path.push_back(g.id(u));
    meter.nodes(1);
    if (u == target) {
      out.insert(path);
      meter.paths(out.size());
      path.pop_back();
      return;
    }
    for (auto v : g.successors(u)) {
      const auto saved = active;
      while (!active.empty() && !f.loop(active.back().first).contains(v)) active.pop_back();
      bool ok = true;
      if (const auto l = f.loop_of_header(v)) {
        if (!active.empty() && active.back().first == *l) {
          ok = ++active.back().second <= bounds[*l];
        } else {
          active.emplace_back(*l, 0);
        }
      }
      if (ok) dfs(v);
      active = saved;
    }
    path.pop_back();
  };
  if (const auto l = f.loop_of_header(g.entry())) active.emplace_back(*l, 0);
  dfs(g.entry());
  return out;
}

PathSet tpaths(const Cft& t, bool exact, const PathBudget& budget) {
  Meter meter(budget);
  return tpaths_impl(t, exact, meter, budget);
}

std::size_t occ(const PathSet& patterns, const Path& p) {
  std::size_t n = 0;
  for (const auto& q : patterns) n += count_in(q, p);
  return n;
}

PathSet prep(const Cft& t, std::size_t e, std::size_t n, const PathBudget& budget) {
  Meter meter(budget);
  const auto base = tpaths_impl(t, false, meter, budget);
  std::vector<Constraint> constraints;
  for (const auto& [node, a] : external_annotations(t))
    constraints.push_back({tpaths_impl(node, false, meter, budget), checked_mul(e, a.max.literal())});

  PathSet out;
  Path cur;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == n) {
      for (const auto& c : constraints) {
        if (occ(c.patterns, cur) > c.limit) return;
      }
      out.insert(cur);
      meter.paths(out.size());
      return;
    }
    for (const auto& p : base) {
      const auto mark = cur.size();
      cur.insert(cur.end(), p.begin(), p.end());
      meter.nodes(p.size() + 1);
      go(k + 1);
      cur.resize(mark);
    }
  };
  go(0);
  return out;
}

std::optional<Cycles> max_path_wcet(const Cft& t, bool exact, const PathBudget& budget) {
  Meter meter(budget);
  std::optional<Cycles> best;
  if (leaf_annotations_only(t)) {
    for (const auto& p : profiles_impl(t, tracked_leaves(t), exact, meter)) best = std::max(best.value_or(0), p.wcet);
    return best;
  }
  const auto wcets = leaf_wcets(t);
  for (const auto& p : tpaths_impl(t, exact, meter, budget)) {
    Cycles w = 0;
    for (const auto& l : p) w = checked_add(w, wcets.at(l));
    best = std::max(best.value_or(0), w);
  }
  return best;
}

std::optional<Cycles> prep_max_wcet(const Cft& t, std::size_t e, std::size_t n, const PathBudget& budget) {
  Meter meter(budget);
  struct Member {
    Cycles wcet;
    std::vector<std::size_t> hits;
  };
  std::vector<Member> members;
  std::vector<Constraint> constraints;
  const auto external = external_annotations(t);
  if (leaf_annotations_only(t)) {
    const auto tr = tracked_leaves(t);
    std::vector<std::size_t> slots;
    for (const auto& [node, a] : external) {
      slots.push_back(tr.index.at(node.label()));
      constraints.push_back({{}, checked_mul(e, a.max.literal())});
    }
    for (const auto& p : profiles_impl(t, tr, false, meter)) {
      Member m{p.wcet, {}};
      for (auto s : slots) m.hits.push_back(p.counts[s]);
      members.push_back(std::move(m));
    }
  } else {
    const auto base = tpaths_impl(t, false, meter, budget);
    const auto wcets = leaf_wcets(t);
    for (const auto& [node, a] : external)
      constraints.push_back({tpaths_impl(node, false, meter, budget), checked_mul(e, a.max.literal())});
    for (const auto& p : base) {
      Member m{0, {}};
      for (const auto& l : p) m.wcet = checked_add(m.wcet, wcets.at(l));
      for (const auto& c : constraints) m.hits.push_back(occ(c.patterns, p));
      members.push_back(std::move(m));
    }
  }
  std::sort(members.begin(), members.end(), [](const Member& a, const Member& b) { return a.wcet > b.wcet; });

  std::optional<Cycles> best;
  std::vector<std::size_t> used(constraints.size(), 0);
  // Order does not change the WCET or the occurrence counts, so only
  // non-increasing index sequences (multisets of members) are explored.
  std::function<void(std::size_t, std::size_t, Cycles)> go = [&](std::size_t k, std::size_t from, Cycles acc) {
    meter.nodes(1);
    if (k == n) {
      if (!best || acc > *best) best = acc;
      return;
    }
    for (std::size_t i = from; i < members.size(); ++i) {
      const Cycles optimistic = checked_add(acc, checked_mul(members[i].wcet, n - k));
      if (best && optimistic <= *best) return;
      bool ok = true;
      for (std::size_t c = 0; c < constraints.size(); ++c) ok = ok && used[c] + members[i].hits[c] <= constraints[c].limit;
      if (!ok) continue;
      for (std::size_t c = 0; c < constraints.size(); ++c) used[c] += members[i].hits[c];
      go(k + 1, i, acc + members[i].wcet);
      for (std::size_t c = 0; c < constraints.size(); ++c) used[c] -= members[i].hits[c];
    }
  };
  go(0, 0, 0);
  return best;
}

Cycles path_wcet(const Cft& t, const Path& p) {
  const auto wcets = leaf_wcets(t);
  Cycles total = 0;
  for (const auto& l : p) {
    const auto it = wcets.find(l);
    if (it == wcets.end()) fail(ErrorKind::UnknownBlock, "path mentions unknown leaf '" + l + "'");
    total = checked_add(total, it->second);
  }
  return total;
}

InclusionReport check_path_inclusion(const Cfg& g, const LoopForest& f, const Cft& t, const PathBudget& budget) {
  InclusionReport r;
  const auto cfg_paths = gpaths_bounded(g, f, std::nullopt, budget);
  const auto tree_paths = tpaths(t, false, budget);
  std::map<std::string, std::string> origin;
  std::function<void(const Cft&)> go = [&](const Cft& n) {
    if (n.is_leaf()) origin[n.label()] = n.origin();
    for (const auto& c : n.children()) go(c);
  };
  go(t);
  PathSet mapped;
  for (const auto& p : tree_paths) {
    Path q;
    for (const auto& l : p) q.push_back(origin.at(l));
    mapped.insert(std::move(q));
  }
  r.cfg_paths = cfg_paths.size();
  r.tree_paths = tree_paths.size();
  for (const auto& p : cfg_paths) {
    if (!mapped.count(p)) {
      r.ok = false;
      r.counterexample = p;
      break;
    }
  }
  return r;
}

SoundnessReport check_soundness(const Cft& t, const LoopLattice& lat, const PathBudget& budget) {
  SoundnessReport r;
  r.computed = gamma(t, lat).seq()[0];
  r.exact = prep_max_wcet(t, 1, 1, budget).value_or(0);
  if (r.exact > r.computed) {
    r.ok = false;
    r.violations.push_back({to_sexpr(t, true), 1, 1, r.exact, r.computed});
  }
  r.pessimism_percent = r.exact == 0 ? 0.0
                                     : 100.0 * static_cast<double>(r.computed - std::min(r.computed, r.exact)) /
                                           static_cast<double>(r.exact);

  std::function<void(const Cft&)> visit = [&](const Cft& s) {
    const auto w = gamma(s, lat);
    ++r.subtrees_checked;
    for (std::size_t e : {1u, 2u}) {
      for (std::size_t n : {e, 2 * e}) {
        const auto worst = prep_max_wcet(s, e, n, budget);
        const auto bound = eval(w, e, n);
        if (worst && *worst > bound) {
          r.ok = false;
          r.violations.push_back({to_sexpr(s, true), e, n, *worst, bound});
        }
      }
    }
    for (const auto& c : s.children()) visit(c);
  };
  visit(t);
  return r;
}

SoundnessReport check_soundness(const Cft& t, const PathBudget& budget) {
  return check_soundness(t, loop_lattice(t), budget);
}

}  // namespace symwcet
