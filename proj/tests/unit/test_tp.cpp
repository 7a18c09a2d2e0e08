#include <doctest.h>

#include "corpus.hpp"
#include "helpers.hpp"
#include "qg/mcr.hpp"
#include "qg/oracle.hpp"
#include "qg/tp.hpp"

using namespace qg;
using namespace qg::testing;

TEST_CASE("fig1a values") {
  CHECK(solve_tp(generate({Family::Fig1a})).values == ValueVector{2, 0, 1, -1, 0});
}

TEST_CASE("fig2b outer passes grow linearly in W") {
  TpResult r10 = solve_tp(generate({Family::Fig2b, 10}));
  CHECK(r10.values == ValueVector{0, 10, 0});
  CHECK(r10.values == tp_oracle(generate({Family::Fig2b, 10})));
  std::vector<std::uint64_t> outer;
  for (Weight W : {10, 20, 40}) outer.push_back(solve_tp(generate({Family::Fig2b, W})).stats.outer_iterations);
  CHECK(outer[1] - outer[0] == 10);
  CHECK(outer[2] - outer[1] == 20);
}

TEST_CASE("single-vertex loops") {
  CHECK(solve_tp(game("objective tp\nvertex a max\nedge a a 2\n")).values == ValueVector{kPosInf});
  CHECK(solve_tp(game("objective tp\nvertex a min\nedge a a -1\n")).values == ValueVector{kNegInf});
  CHECK(solve_tp(game("objective tp\nvertex a min\nedge a a 0\n")).values == ValueVector{0});
}

TEST_CASE("layered values follow the (0, 0, W) pattern") {
  Arena a = generate({Family::Layered, 50, 100});
  TpResult r = solve_tp(a);
  CHECK(r.stats.outer_iterations == 151);
  CHECK(r.stats.inner_iterations == 12603);
  for (std::size_t k = 0; k < 100; ++k) {
    CHECK(r.values[3 * k] == ExtValue(0));
    CHECK(r.values[3 * k + 1] == ExtValue(0));
    CHECK(r.values[3 * k + 2] == ExtValue(50));
  }
}

TEST_CASE("k_bound") {
  CHECK(k_bound(generate({Family::Fig2a, 50, 1, Objective::TP})) == 603);
  CHECK(k_bound(game("objective tp\nvertex a max\nedge a a 9\n")) == 1);
  Arena five = game(
      "objective tp\nvertex a max\nvertex b min\nvertex c max\nvertex d min\nvertex e max\n"
      "edge a b 2\nedge b c 0\nedge c d 0\nedge d e 0\nedge e a 0\n");
  CHECK(k_bound(five) == 85);
}

TEST_CASE("G_Y construction") {
  Arena f1 = generate({Family::Fig1a});
  const std::size_t n = f1.num_vertices();
  Arena minus = build_game_Y(f1, ValueVector(n, kNegInf));
  CHECK(minus.num_vertices() == 2 * n + 1);
  const auto t = static_cast<VertexId>(2 * n);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    CHECK(minus.edge_weight(interior_of(f1, v), t) == Weight{0});
    CHECK(minus.edge_weight(interior_of(f1, v), v) == Weight{0});
    CHECK(minus.owner(interior_of(f1, v)) == Player::Min);
    CHECK(minus.owner(v) == f1.owner(v));
  }
  CHECK(minus.edge_weight(0, interior_of(f1, 1)) == Weight{2});

  Arena plus = build_game_Y(f1, ValueVector(n, kPosInf));
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) CHECK_FALSE(plus.edge_weight(interior_of(f1, v), t));
  ValueVector pv = solve_mcr(plus).values;
  for (std::size_t v = 0; v < n; ++v) CHECK(pv[v] == kPosInf);

  ValueVector y{3, -2, 0, kNegInf, kPosInf};
  Arena mixed = build_game_Y(f1, y);
  CHECK(mixed.edge_weight(interior_of(f1, 0), t) == Weight{3});
  CHECK(mixed.edge_weight(interior_of(f1, 1), t) == Weight{0});
  CHECK_FALSE(mixed.edge_weight(interior_of(f1, 4), t));
}

TEST_CASE("final TP values are a fixed point of the G_Y step") {
  auto check = [](const Arena& a) {
    ValueVector val = solve_tp(a).values;
    ValueVector h = solve_mcr(build_game_Y(a, val)).values;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
      if (val[v].is_finite()) CHECK(h[v] == val[v]);
    }
  };
  check(generate({Family::Fig2a, 6, 1, Objective::TP}));
  check(generate({Family::Fig1a}));
  for (const Arena& a : random_corpus(Objective::TP, 300, 5, 3, 41)) check(a);
}

TEST_CASE("unfolding structure") {
  Arena f2 = generate({Family::Fig2a, 4, 1, Objective::TP});
  Unfolding u3 = build_unfolding(f2, 3);
  CHECK(u3.arena.num_vertices() == 28);
  CHECK(u3.arena.objective() == Objective::MCR);
  CHECK(u3.top.size() == 3);
  CHECK(is_normalized(u3.arena));

  Unfolding u1 = build_unfolding(f2, 1);
  CHECK(u1.arena.num_vertices() == 10);
  const VertexId t = target_of(u1.arena);
  for (VertexId v = 0; v < 3; ++v) {
    VertexId ex = 6 + v;
    CHECK(u1.arena.owner(ex) == Player::Max);
    CHECK(u1.arena.owner(3 + v) == Player::Min);
    CHECK(u1.arena.successors(ex).size() == 1);
    CHECK(u1.arena.successors(ex)[0] == t);
  }

  ::setenv("QG_MAX_VERTICES", "20", 1);
  auto code = error_of([&] { build_unfolding(f2, 3); });
  ::unsetenv("QG_MAX_VERTICES");
  CHECK(code == ErrorCode::CapExceeded);
}

TEST_CASE("unfolding at K reproduces TP values") {
  for (const Arena& a : random_corpus(Objective::TP, 30, 3, 2, 52)) {
    ValueVector val = solve_tp(a).values;
    Unfolding u = build_unfolding(a, k_bound(a));
    ValueVector g = solve_mcr(u.arena).values;
    const std::int64_t threshold = static_cast<std::int64_t>(a.num_vertices() - 1) * max_abs_weight(a) + 1;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
      const ExtValue& top = g[static_cast<std::size_t>(u.top[v])];
      if (val[v].is_finite()) CHECK(top == val[v]);
      CHECK(val[v].is_pos_inf() == (top >= ExtValue(threshold)));
    }
  }
}

TEST_CASE("solve_tp matches the oracle and the bounds") {
  auto check = [](const Arena& a) {
    TpResult r = solve_tp(a);
    CHECK(r.values == tp_oracle(a));
    CHECK(r.stats.outer_iterations <= k_bound(a) + 1);
    const std::int64_t bound = static_cast<std::int64_t>(a.num_vertices() - 1) * max_abs_weight(a);
    for (const ExtValue& x : r.values) {
      if (x.is_finite()) {
        CHECK(x.raw() >= -bound);
        CHECK(x.raw() <= bound);
      }
    }
  };
  for_each_exhaustive({Objective::TP, 2, 2, 2}, check);
  for (const Arena& a : random_corpus(Objective::TP, 300, 5, 3, 61)) check(a);
}

TEST_CASE("weight scaling multiplies TP values") {
  for (const Arena& a : random_corpus(Objective::TP, 150, 5, 3, 6)) {
    ValueVector base = solve_tp(a).values;
    ValueVector big = solve_tp(scaled(a, 3)).values;
    for (std::size_t v = 0; v < base.size(); ++v) {
      CHECK(big[v] == (base[v].is_finite() ? ExtValue(base[v].raw() * 3) : base[v]));
    }
  }
}

TEST_CASE("infinity classification") {
  CHECK(classify_tp_infinities(generate({Family::Fig1a})) == std::vector<TpClass>(5, TpClass::Finite));
  CHECK(classify_tp_infinities(game("objective tp\nvertex a max\nedge a a 1\n")) == std::vector<TpClass>{TpClass::PosInf});
  CHECK(classify_tp_infinities(game("objective tp\nvertex a max\nedge a a -1\n")) == std::vector<TpClass>{TpClass::NegInf});
  for (const Arena& a : random_corpus(Objective::TP, 300, 5, 3, 71)) {
    ValueVector v = solve_tp(a).values;
    std::vector<TpClass> c = classify_tp_infinities(a);
    for (std::size_t i = 0; i < v.size(); ++i) {
      TpClass expected = v[i].is_pos_inf() ? TpClass::PosInf : v[i].is_neg_inf() ? TpClass::NegInf : TpClass::Finite;
      CHECK(c[i] == expected);
    }
  }
}
