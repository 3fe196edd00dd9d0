#include "symwcet/multiset.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>

#include "symwcet/error.hpp"

namespace symwcet {

namespace {

constexpr Cycles kInf = std::numeric_limits<Cycles>::max();

// Appends a run, coalescing equal values and absorbing values at or below the tail.
void push_run(std::vector<WcetSeq::Run>& runs, Cycles value, Cycles count, Cycles tail) {
  if (count == 0 || value <= tail) return;
  if (!runs.empty() && runs.back().value == value) {
    runs.back().count = checked_add(runs.back().count, count);
    return;
  }
  runs.push_back({value, count});
}

}  // namespace

WcetSeq::WcetSeq(std::vector<Cycles> elements, Cycles tail) : tail_(tail) {
  std::sort(elements.begin(), elements.end(), std::greater<>());
  for (auto v : elements) {
    if (v < tail) fail(ErrorKind::InvalidValue, "multiset element " + std::to_string(v) + " below its tail " + std::to_string(tail));
    push_run(runs_, v, 1, tail_);
  }
}

WcetSeq WcetSeq::from_runs(std::vector<Run> runs, Cycles tail) {
  WcetSeq out;
  out.tail_ = tail;
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.value > b.value; });
  for (const auto& r : runs) {
    if (r.value < tail) fail(ErrorKind::InvalidValue, "multiset element below its tail");
    push_run(out.runs_, r.value, r.count, tail);
  }
  return out;
}

Cycles WcetSeq::operator[](Cycles n) const {
  for (const auto& r : runs_) {
    if (n < r.count) return r.value;
    n -= r.count;
  }
  return tail_;
}

Cycles WcetSeq::sum_first(Cycles n) const {
  Cycles total = 0;
  for (const auto& r : runs_) {
    if (n == 0) return total;
    const auto take = std::min(n, r.count);
    total = checked_add(total, checked_mul(r.value, take));
    n -= take;
  }
  if (n == 0 || tail_ == 0) return total;
  return checked_add(total, checked_mul(tail_, n));
}

Cycles WcetSeq::prefix_size() const {
  Cycles n = 0;
  for (const auto& r : runs_) n = checked_add(n, r.count);
  return n;
}

std::vector<Cycles> WcetSeq::prefix(Cycles limit) const {
  if (prefix_size() > limit) fail(ErrorKind::InvalidValue, "multiset prefix too long to expand");
  std::vector<Cycles> out;
  for (const auto& r : runs_) out.insert(out.end(), r.count, r.value);
  return out;
}

std::string WcetSeq::to_string() const {
  std::string out = "[";
  bool first = true;
  for (const auto& r : runs_) {
    if (r.count > 8) {
      if (!first) out += ',';
      out += std::to_string(r.value) + "*" + std::to_string(r.count);
      first = false;
      continue;
    }
    for (Cycles i = 0; i < r.count; ++i) {
      if (!first) out += ',';
      out += std::to_string(r.value);
      first = false;
    }
  }
  return out + "|" + std::to_string(tail_) + "]";
}

WcetSeq WcetSeq::parse(const std::string& text) {
  auto bad = [&]() -> WcetSeq { fail(ErrorKind::Syntax, "malformed multiset '" + text + "'"); };
  if (text.size() < 3 || text.front() != '[' || text.back() != ']') return bad();
  const auto bar = text.find('|');
  if (bar == std::string::npos) return bad();
  auto number = [&](std::string_view s) {
    Cycles v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) bad();
    return v;
  };
  const std::string_view body(text.data() + 1, bar - 1);
  const Cycles tail = number(std::string_view(text).substr(bar + 1, text.size() - bar - 2));
  std::vector<Run> runs;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    const auto item = body.substr(pos, comma - pos);
    const auto star = item.find('*');
    if (star == std::string_view::npos)
      runs.push_back({number(item), 1});
    else
      runs.push_back({number(item.substr(0, star)), number(item.substr(star + 1))});
    pos = comma + 1;
    if (comma + 1 == body.size()) bad();
  }
  return from_runs(std::move(runs), tail);
}

WcetSeq ms_merge(const WcetSeq& a, const WcetSeq& b) {
  const Cycles tail = std::max(a.tail(), b.tail());
  std::vector<WcetSeq::Run> runs;
  for (const auto* side : {&a, &b}) {
    for (const auto& r : side->runs()) {
      if (r.value > tail) runs.push_back(r);
    }
  }
  return WcetSeq::from_runs(std::move(runs), tail);
}

WcetSeq ms_mult(const WcetSeq& a, std::optional<Cycles> k) {
  if (!k) return WcetSeq::constant(a[0]);
  if (*k == 0) fail(ErrorKind::InvalidValue, "multiplicity factor must be positive");
  std::vector<WcetSeq::Run> runs = a.runs();
  for (auto& r : runs) r.count = checked_mul(r.count, *k);
  return WcetSeq::from_runs(std::move(runs), a.tail());
}

WcetSeq ms_ranksum(const WcetSeq& a, const WcetSeq& b) {
  const Cycles tail = checked_add(a.tail(), b.tail());
  std::vector<WcetSeq::Run> out;
  std::size_t i = 0;
  std::size_t j = 0;
  Cycles used_a = 0;
  Cycles used_b = 0;
  const auto& ra = a.runs();
  const auto& rb = b.runs();
  while (i < ra.size() || j < rb.size()) {
    const Cycles left_a = i < ra.size() ? ra[i].count - used_a : kInf;
    const Cycles left_b = j < rb.size() ? rb[j].count - used_b : kInf;
    const Cycles va = i < ra.size() ? ra[i].value : a.tail();
    const Cycles vb = j < rb.size() ? rb[j].value : b.tail();
    const Cycles step = std::min(left_a, left_b);
    push_run(out, checked_add(va, vb), step, tail);
    if (i < ra.size()) {
      used_a += step;
      if (used_a == ra[i].count) {
        ++i;
        used_a = 0;
      }
    }
    if (j < rb.size()) {
      used_b += step;
      if (used_b == rb[j].count) {
        ++j;
        used_b = 0;
      }
    }
  }
  return WcetSeq::from_runs(std::move(out), tail);
}

WcetSeq ms_scalar(const WcetSeq& a, Cycles n) {
  if (n == 0) return WcetSeq::zero();
  std::vector<WcetSeq::Run> runs = a.runs();
  for (auto& r : runs) r.value = checked_mul(r.value, n);
  return WcetSeq::from_runs(std::move(runs), checked_mul(a.tail(), n));
}

WcetSeq ms_restrict(const WcetSeq& a, std::optional<Cycles> n) {
  if (!n) return a;
  std::vector<WcetSeq::Run> runs;
  Cycles left = *n;
  for (const auto& r : a.runs()) {
    if (left == 0) break;
    const auto take = std::min(left, r.count);
    runs.push_back({r.value, take});
    left -= take;
  }
  if (left > 0 && a.tail() > 0) runs.push_back({a.tail(), left});
  return WcetSeq::from_runs(std::move(runs), 0);
}

WcetSeq ms_group(const WcetSeq& a, Cycles x) {
  if (x == 0) fail(ErrorKind::InvalidValue, "loop bound must be positive");
  const Cycles explicit_size = checked_add(a.prefix_size(), 1);
  const Cycles groups = explicit_size / x + (explicit_size % x != 0 ? 1 : 0);

  // Run boundaries: [start, end) of each run; the tail runs to infinity.
  std::vector<std::pair<Cycles, Cycles>> spans;
  Cycles start = 0;
  for (const auto& r : a.runs()) {
    spans.emplace_back(start, start + r.count);
    start += r.count;
  }
  spans.emplace_back(start, kInf);

  std::vector<WcetSeq::Run> runs;
  Cycles last = 0;
  Cycles g = 0;
  std::size_t s = 0;
  while (g < groups) {
    const Cycles lo = checked_mul(g, x);
    while (spans[s].second <= lo) ++s;
    const Cycles value_in_span = s < a.runs().size() ? a.runs()[s].value : a.tail();
    Cycles whole = 0;
    if (spans[s].second == kInf)
      whole = groups - g;
    else
      whole = std::min((spans[s].second - lo) / x, groups - g);
    if (whole > 0) {
      const Cycles v = checked_mul(value_in_span, x);
      if (g + whole == groups) {
        if (whole > 1) runs.push_back({v, whole - 1});
        last = v;
      } else {
        runs.push_back({v, whole});
      }
      g += whole;
      continue;
    }
    const Cycles v = a.sum_first(lo + x) - a.sum_first(lo);
    if (g + 1 == groups)
      last = v;
    else
      runs.push_back({v, 1});
    ++g;
  }
  return WcetSeq::from_runs(std::move(runs), last);
}

Cycles ms_eval(const WcetSeq& a, Cycles e, Cycles n) {
  if (e == 0 || n == 0) fail(ErrorKind::InvalidValue, "eval requires positive e and n");
  if (n % e != 0) fail(ErrorKind::NotMultiple, "eval: n=" + std::to_string(n) + " is not a multiple of e=" + std::to_string(e));
  return checked_mul(e, a.sum_first(n / e));
}

}  // namespace symwcet
