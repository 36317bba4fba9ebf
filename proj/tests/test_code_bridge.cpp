#include <doctest.h>

#include <filesystem>

#include "minihyper/code_bridge.hpp"
#include "minihyper/families.hpp"

using namespace minihyper;

namespace {

const std::string data_dir = MINIHYPER_TEST_DATA;

// Minimum weight over all q^k - 1 nonzero messages, no shortcuts.
std::int64_t naive_distance(const GeneratorMatrix& g) {
  std::int64_t total = 1;
  for (int i = 0; i < g.k(); ++i) total *= g.q();
  std::int64_t best = g.n();
  std::vector<int> msg(g.k(), 0);
  for (std::int64_t m = 1; m < total; ++m) {
    std::int64_t x = m;
    for (int i = 0; i < g.k(); ++i) {
      msg[i] = static_cast<int>(x % g.q());
      x /= g.q();
    }
    std::int64_t wt = 0;
    for (int c = 0; c < g.n(); ++c) {
      int s = 0;
      for (int i = 0; i < g.k(); ++i) s += msg[i] * g(i, c);
      wt += s % g.q() != 0;
    }
    best = std::min(best, wt);
  }
  return best;
}

std::int64_t naive_griesmer(int q, int k, std::int64_t d) {
  std::int64_t s = 0, p = 1;
  for (int i = 0; i < k; ++i) {
    s += (d + p - 1) / p;
    p *= q;
  }
  return s;
}

}  // namespace

TEST_CASE("Griesmer bound") {
  CHECK(griesmer_bound(3, 5, 114) == 172);
  CHECK(griesmer_bound(3, 4, 33) == 50);
  CHECK(griesmer_bound(2, 1, 1) == 1);
  for (int q : {2, 3, 5})
    for (int k = 1; k <= 6; ++k)
      for (std::int64_t d = 1; d <= 200; d += 7) CHECK(griesmer_bound(q, k, d) == naive_griesmer(q, k, d));
}

TEST_CASE("arc from generator") {
  const GeneratorMatrix id(3, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const Multiset a = arc_from_generator(id);
  CHECK(a.cardinality() == 3);
  CHECK(a.is_projective());
  CHECK(parameters(a, Mode::arc) == Parameters{3, 2, Mode::arc});

  const GeneratorMatrix prop(2, 3, 3, {1, 2, 0, 1, 2, 1});  // columns (1,1) and (2,2) are proportional
  const Multiset b = arc_from_generator(prop);
  CHECK(b.max_point_multiplicity() == 2);
  CHECK(b.cardinality() == 3);

  const GeneratorMatrix cap = read_generator_file(data_dir + "/cap_10_4_6.gen");
  const Multiset c = arc_from_generator(cap);
  CHECK(parameters(c, Mode::arc) == Parameters{10, 4, Mode::arc});
  CHECK(is_cap(c.geometry(), [&] {
    std::vector<int> pts;
    for (int p = 0; p < static_cast<int>(c.size()); ++p)
      if (c[p]) pts.push_back(p);
    return pts;
  }()));
  CHECK(parameters(complement(c, 1), Mode::minihyper) == Parameters{30, 9, Mode::minihyper});
}

TEST_CASE("invalid generator matrices are rejected") {
  CHECK_THROWS_AS(GeneratorMatrix(2, 2, 3, {1, 0, 0, 0}), std::invalid_argument);  // zero column
  CHECK_THROWS_AS(GeneratorMatrix(2, 2, 3, {1, 1, 2, 2}), std::invalid_argument);  // rank 1
  CHECK_THROWS_AS(GeneratorMatrix(2, 2, 3, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorMatrix(2, 2, 4, {1, 0, 0, 1}), std::invalid_argument);
  CHECK_THROWS(parse_generator("2 2 3\n1 0\n"));
  CHECK_THROWS(parse_generator("2 2 3\n1 0\n0 5\n"));
  CHECK_THROWS(parse_generator(""));
}

TEST_CASE("generator round trip through the arc") {
  const Multiset k = construct_family("oval-complement");
  const GeneratorMatrix g = generator_from_arc(k);
  CHECK(g.n() == k.cardinality());
  CHECK(arc_from_generator(g) == k);
  CHECK(parse_generator(to_text(g)).n() == g.n());
  CHECK(arc_from_generator(parse_generator(to_text(g))) == k);
  // packed digits are accepted too
  const GeneratorMatrix p = parse_generator("2 3 3\n101\n011\n");
  CHECK(p(0, 2) == 1);
  CHECK(p(1, 2) == 1);
}

TEST_CASE("code parameters and Griesmer codes") {
  const Multiset lp = construct_family("line-plus-point");
  const Multiset arc = complement(lp, 1);
  CHECK(parameters(arc, Mode::arc) == Parameters{8, 3, Mode::arc});
  const CodeParams cp = code_parameters(arc);
  CHECK(cp == CodeParams{8, 3, 5, 3});
  CHECK(meets_griesmer_bound(cp));
  CHECK_FALSE(meets_griesmer_bound(CodeParams{9, 3, 5, 3}));

  // complement of a (70,22) witness with max multiplicity 2 at s = 2
  const Multiset f = construct_family("70-22-A-a");
  const CodeParams w = code_parameters(complement(f, 2));
  CHECK(w == CodeParams{172, 5, 114, 3});
  CHECK(meets_griesmer_bound(w));
}

TEST_CASE("minimum distance: both routes agree with naive enumeration on every fixture") {
  const std::map<std::string, std::int64_t> expected{
      {"cap_10_4_6.gen", 6},      {"complement_8_3_5.gen", 5}, {"golay_11_6_5.gen", 5},
      {"hamming_4_2_3.gen", 3},   {"identity_3_3_1.gen", 1},   {"repetition_3_1_3.gen", 3}};
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir)) {
    if (entry.path().extension() != ".gen") continue;
    const std::string name = entry.path().filename().string();
    INFO(name);
    const GeneratorMatrix g = read_generator_file(entry.path().string());
    const auto routes = min_distance_routes(g);
    const std::int64_t naive = naive_distance(g);
    CHECK(routes.by_enumeration == naive);
    CHECK(routes.by_arc == naive);
    CHECK(min_distance(g) == naive);
    REQUIRE(expected.count(name));
    CHECK(naive == expected.at(name));
    ++seen;
  }
  CHECK(seen == static_cast<int>(expected.size()));
}

TEST_CASE("minimum distance refuses oversized enumeration") {
  const GeneratorMatrix g = read_generator_file(data_dir + "/golay_11_6_5.gen");
  CHECK_THROWS_AS(min_distance_routes(g, 100), std::length_error);
  CHECK_THROWS(read_generator_file("/nonexistent.gen"));
}
