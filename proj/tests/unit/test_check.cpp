#include <doctest.h>

#include <algorithm>
#include <cctype>

#include "corpus.hpp"
#include "helpers.hpp"
#include "qg/check.hpp"
#include "qg/mcr.hpp"
#include "qg/tp.hpp"

using namespace qg;
using namespace qg::testing;

namespace {

bool has_negative_min_loop(const Arena& a) {
  for (const Edge& e : a.edges()) {
    if (e.src == e.dst && e.weight < 0 && a.owner(e.src) == Player::Min) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("cross validation finds no mismatch") {
  for (const Arena& a : random_corpus(Objective::TP, 150, 5, 3, 301)) CHECK_FALSE(cross_validate(a));
  for (const Arena& a : random_corpus(Objective::MCR, 150, 5, 3, 302)) CHECK_FALSE(cross_validate(a));
  CHECK_FALSE(cross_validate(generate({Family::Fig1a})));
  CHECK_FALSE(cross_validate(generate({Family::LspFig5})));
}

TEST_CASE("minimizer keeps the failure and shrinks") {
  for (const Arena& a : random_corpus(Objective::TP, 200, 7, 3, 303)) {
    if (!has_negative_min_loop(a)) continue;
    Arena m = minimize_counterexample(a, has_negative_min_loop);
    CHECK(has_negative_min_loop(m));
    CHECK(m.num_vertices() == 1);
    CHECK(m.edges().size() == 1);
    CHECK(m.edges()[0].weight == -1);
  }
  for (const Arena& raw : random_corpus(Objective::MCR, 100, 6, 3, 304)) {
    auto fails = [](const Arena& x) {
      ValueVector v = solve_arena(x, AccelMode::None).values;
      return std::any_of(v.begin(), v.end(), [](const ExtValue& y) { return y.is_neg_inf(); });
    };
    if (!fails(raw)) continue;
    Arena m = minimize_counterexample(raw, fails);
    CHECK(fails(m));
    CHECK(m.num_vertices() <= raw.num_vertices());
    CHECK(m.objective() == Objective::MCR);
  }
}

TEST_CASE("values hash") {
  Arena a = generate({Family::Fig2a, 50});
  ValueVector v = solve_mcr(a).values;
  std::string h = values_hash(a, v);
  CHECK(h.size() == 16);
  CHECK(std::all_of(h.begin(), h.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) && !std::isupper(static_cast<unsigned char>(c)); }));
  CHECK(values_hash(a, v) == h);
  ValueVector w = v;
  w[0] = ExtValue(-49);
  CHECK(values_hash(a, w) != h);
  w[0] = kNegInf;
  CHECK(values_hash(a, w) != h);
  Arena single = game("objective tp\nvertex a max\nedge a a 0\n");
  // FNV-1a of "a=0;".
  std::uint64_t x = 14695981039346656037ULL;
  for (char c : std::string("a=0;")) {
    x ^= static_cast<unsigned char>(c);
    x *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  CHECK(values_hash(single, ValueVector{ExtValue(0)}) == buf);
}

TEST_CASE("acceleration mode names") {
  for (AccelMode m : {AccelMode::None, AccelMode::Scc, AccelMode::SccPaths}) CHECK(parse_accel(to_string(m)) == m);
  CHECK(std::string(to_string(AccelMode::SccPaths)) == "scc+paths");
  CHECK(error_of([] { parse_accel("fast"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bench cells") {
  FamilySpec spec{Family::Layered, 50, 100};
  BenchRow none = run_bench_cell(spec, AccelMode::None);
  BenchRow scc = run_bench_cell(spec, AccelMode::Scc);
  BenchRow paths = run_bench_cell(spec, AccelMode::SccPaths);
  CHECK(none.k_e == 151);
  CHECK(none.k_i == 12603);
  CHECK(scc.k_e == 5302);
  CHECK(paths.k_e == 402);
  CHECK(paths.k_i == 804);
  CHECK(none.values_hash == scc.values_hash);
  CHECK(none.values_hash == paths.values_hash);
  BenchRow row{"layered", 50, 100, "scc+paths", 402, 804, 1.25, "00ff"};
  CHECK(to_csv(row) == "layered,50,100,scc+paths,402,804,1.2,00ff");
  CHECK(std::string(kBenchHeader) == "family,W,n,accel,k_e,k_i,wall_ms,values_hash");
}

TEST_CASE("solve_arena returns values of the original vertices") {
  Arena a = game(
      "objective mcr\nvertex a min\nvertex s max target\nvertex u max target\n"
      "edge a s 2\nedge a u 1\nedge s a 5\nedge u u 0\n");
  for (AccelMode m : {AccelMode::None, AccelMode::Scc, AccelMode::SccPaths}) {
    Solved s = solve_arena(a, m);
    CHECK(s.values == ValueVector{1, 0, 0});
  }
  Solved t = solve_arena(a, AccelMode::None, {}, true);
  REQUIRE(t.trace);
  CHECK(t.trace->front().size() == 4);
  Arena f1 = generate({Family::Fig1a});
  CHECK(solve_arena(f1, AccelMode::SccPaths).values == solve_tp(f1).values);
}
