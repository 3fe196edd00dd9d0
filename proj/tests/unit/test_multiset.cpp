#include <algorithm>
#include <random>

#include "doctest.h"
#include "symwcet/error.hpp"
#include "symwcet/multiset.hpp"

using namespace symwcet;

namespace {

WcetSeq seq(const std::string& text) { return WcetSeq::parse(text); }

WcetSeq random_seq(std::mt19937_64& rng) {
  std::uniform_int_distribution<Cycles> value(0, 12);
  const Cycles tail = value(rng);
  std::vector<Cycles> prefix;
  for (auto k = std::uniform_int_distribution<int>(0, 5)(rng); k > 0; --k) prefix.push_back(tail + value(rng));
  return WcetSeq(prefix, tail);
}

constexpr Cycles kWindow = 40;

std::vector<Cycles> expand(const WcetSeq& s) {
  std::vector<Cycles> out;
  for (Cycles i = 0; i < kWindow; ++i) out.push_back(s[i]);
  return out;
}

}  // namespace

TEST_SUITE("multiset") {
  TEST_CASE("text form") {
    CHECK(seq("[9,8,8,8|4]").to_string() == "[9,8,8,8|4]");
    CHECK(seq("[|5]") == WcetSeq::constant(5));
    CHECK(seq("[5,5|5]") == WcetSeq::constant(5));
    CHECK(seq("[7*20|1]").prefix_size() == 20);
    CHECK(seq("[7*20|1]").to_string() == "[7*20|1]");
    CHECK(seq("[7,7|1]").to_string() == "[7,7|1]");
    CHECK_THROWS_AS(seq("[1|4]"), Error);
    CHECK_THROWS_AS(seq("[3,"), Error);
    const WcetSeq s({3, 9, 5}, 1);
    CHECK(s.to_string() == "[9,5,3|1]");
    CHECK(s[0] == 9);
    CHECK(s[2] == 3);
    CHECK(s[100] == 1);
    CHECK(s.sum_first(5) == 19);
  }

  TEST_CASE("merge example") {
    CHECK(ms_merge(seq("[8,8|4]"), seq("[9,8,3|2]")) == seq("[9,8,8,8|4]"));
  }

  TEST_CASE("alt and seq examples") {
    CHECK(ms_merge(seq("[5,4,2|1]"), seq("[6|2]")) == seq("[6,5,4|2]"));
    CHECK(ms_ranksum(seq("[5|4]"), seq("[2|1]")) == seq("[7|5]"));
  }

  TEST_CASE("grouping examples") {
    CHECK(ms_group(seq("[5,4,3|2]"), 2) == seq("[9|5]"));
    CHECK(ms_group(seq("[5,4|3]"), 2) == seq("[9|6]"));
    CHECK(ms_group(seq("[|3]"), 4) == seq("[|12]"));
    CHECK(ms_group(seq("[9,8,7,6,5|1]"), 2) == seq("[17,13|6]"));
  }

  TEST_CASE("large multiplicities stay compact") {
    const auto big = ms_mult(seq("[9,2|1]"), Cycles{1} << 40);
    CHECK(big.runs().size() == 2);
    CHECK(big[(Cycles{1} << 40) - 1] == 9);
    CHECK(big[Cycles{1} << 40] == 2);
    CHECK(big.sum_first(Cycles{1} << 41) == 11 * (Cycles{1} << 40));
    CHECK(ms_mult(seq("[9,2|1]"), std::nullopt) == WcetSeq::constant(9));
    CHECK_THROWS_AS(ms_mult(seq("[9|1]"), 0), Error);
  }

  TEST_CASE("operations agree with the expanded sequences") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<Cycles> small(1, 4);
    for (int i = 0; i < 500; ++i) {
      const auto a = random_seq(rng);
      const auto b = random_seq(rng);
      const auto ea = expand(a);
      const auto eb = expand(b);

      const auto m = ms_merge(a, b);
      CHECK(m == ms_merge(b, a));
      const auto tail = std::max(a.tail(), b.tail());
      std::vector<Cycles> merged;
      for (auto v : a.prefix()) {
        if (v > tail) merged.push_back(v);
      }
      for (auto v : b.prefix()) {
        if (v > tail) merged.push_back(v);
      }
      CHECK(m == WcetSeq(merged, tail));

      const auto s = ms_ranksum(a, b);
      const auto k = small(rng);
      const auto mk = ms_mult(a, k);
      const auto sc = ms_scalar(a, k);
      const auto r = ms_restrict(a, k);
      for (Cycles j = 0; j < kWindow; ++j) {
        CHECK(s[j] == ea[j] + eb[j]);
        CHECK(mk[j] == ea[j / k]);
        CHECK(sc[j] == ea[j] * k);
        CHECK(r[j] == (j < k ? ea[j] : 0));
      }
      CHECK(ms_restrict(a, std::nullopt) == a);

      // Grouping never undercuts the rank-wise sum of consecutive groups.
      const auto g = ms_group(a, k);
      for (Cycles j = 0; j < kWindow / k; ++j) {
        Cycles pure = 0;
        for (Cycles q = 0; q < k; ++q) pure += ea[j * k + q];
        CHECK(g[j] >= pure);
        if (j == 0) CHECK(g[j] == pure);
      }
      if (a.is_constant()) CHECK(g == WcetSeq::constant(a.tail() * k));

      const auto e = small(rng);
      const auto n = e * small(rng);
      Cycles expected = 0;
      const auto me = ms_mult(a, e);
      for (Cycles j = 0; j < n; ++j) expected += me[j];
      CHECK(ms_eval(a, e, n) == expected);
    }
  }

  TEST_CASE("merge is associative and ranksum is commutative") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
      const auto a = random_seq(rng);
      const auto b = random_seq(rng);
      const auto c = random_seq(rng);
      CHECK(ms_merge(ms_merge(a, b), c) == ms_merge(a, ms_merge(b, c)));
      CHECK(ms_ranksum(a, b) == ms_ranksum(b, a));
      CHECK(ms_ranksum(ms_ranksum(a, b), c) == ms_ranksum(a, ms_ranksum(b, c)));
      CHECK(WcetSeq::parse(a.to_string()) == a);
    }
  }

  TEST_CASE("evaluation preconditions") {
    CHECK(ms_eval(seq("[5,4|1]"), 1, 1) == 5);
    CHECK(ms_eval(seq("[5,4|1]"), 2, 4) == 5 + 5 + 4 + 4);
    CHECK_THROWS_AS(ms_eval(seq("[5|1]"), 2, 3), Error);
    CHECK_THROWS_AS(ms_eval(seq("[5|1]"), 0, 0), Error);
  }
}
