#include <doctest.h>

#include "corpus.hpp"
#include "helpers.hpp"
#include "qg/attractor.hpp"
#include "qg/mcr.hpp"
#include "qg/oracle.hpp"

using namespace qg;
using namespace qg::testing;

TEST_CASE("fig2a(50) values, trace and sweep count") {
  Arena a = generate({Family::Fig2a, 50});
  McrResult r = solve_mcr(a, {true, Exec::Serial});
  CHECK(r.values == ValueVector{-50, -50, 0});
  REQUIRE(r.trace);
  const IterationTrace& x = *r.trace;
  REQUIRE(x.size() >= 5);
  CHECK(x[0] == ValueVector{kPosInf, kPosInf, 0});
  CHECK(x[1] == ValueVector{kPosInf, 0, 0});
  CHECK(x[2] == ValueVector{-1, 0, 0});
  CHECK(x[3] == ValueVector{-1, -1, 0});
  CHECK(x[4] == ValueVector{-2, -1, 0});
  CHECK(r.stats.sweeps == 102);
  CHECK(r.stats.inner_iterations == r.stats.sweeps);
  CHECK(r.stats.outer_iterations == 1);
  CHECK(x.size() == r.stats.sweeps + 1);
  CHECK(x[x.size() - 1] == x[x.size() - 2]);
}

TEST_CASE("lsp_fig5 values") {
  CHECK(solve_mcr(generate({Family::LspFig5})).values == ValueVector{2, 3, 1, kPosInf, 0});
}

TEST_CASE("a Min vertex pumping a negative cycle gets -inf") {
  Arena a = game("objective mcr\nvertex m min\nvertex t max target\nedge m m -1\nedge m t 0\nedge t t 0\n");
  CHECK(solve_mcr(a).values == ValueVector{kNegInf, 0});
}

TEST_CASE("unnormalized input is rejected") {
  Arena a = game("objective mcr\nvertex m min target\nvertex n max target\nedge m n 0\nedge n m 0\n");
  CHECK(error_of([&] { solve_mcr(a); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bounds") {
  Arena a = generate({Family::Fig2a, 50});
  CHECK(cutoff_threshold(a) == 100);
  CHECK(mcr_sweep_bound(a) == 5 * 50 * 3 + 6);
}

TEST_CASE("parallel and serial sweeps agree") {
  for (const Arena& raw : random_corpus(Objective::MCR, 200, 6, 3, 3)) {
    Arena a = normalize_target(raw);
    McrResult s = solve_mcr(a, {true, Exec::Serial});
    McrResult p = solve_mcr(a, {true, Exec::Parallel});
    CHECK(s.values == p.values);
    CHECK(s.stats.sweeps == p.stats.sweeps);
    CHECK(*s.trace == *p.trace);
  }
  Arena big = normalize_target(generate({Family::Layered, 7, 2000, Objective::MCR}));
  CHECK(solve_mcr(big, {false, Exec::Serial}).values == solve_mcr(big, {false, Exec::Parallel}).values);
}

TEST_CASE("iteration properties on random arenas") {
  for (const Arena& raw : random_corpus(Objective::MCR, 400, 6, 3, 17)) {
    Arena a = normalize_target(raw);
    McrResult r = solve_mcr(a, {true, Exec::Serial});
    const IterationTrace& x = *r.trace;
    const std::size_t n = a.num_vertices();
    const Weight W = max_abs_weight(a);
    for (std::size_t i = 1; i < x.size(); ++i) {
      for (std::size_t v = 0; v < n; ++v) {
        CHECK(x[i][v] <= x[i - 1][v]);
        if (i >= n && x[i][v].is_finite()) {
          CHECK(x[i][v].raw() >= -static_cast<std::int64_t>(n - 1) * W);
          CHECK(x[i][v].raw() <= static_cast<std::int64_t>(n) * W);
        }
      }
    }
    CHECK(r.stats.sweeps <= mcr_sweep_bound(a));
    // Finite values form a fixed point of the operator.
    ValueVector f = mcr_operator(a, r.values);
    for (std::size_t v = 0; v < n; ++v) {
      if (r.values[v].is_finite()) CHECK(f[v] == r.values[v]);
    }
    // +inf exactly outside the attractor.
    AttractorResult att = compute_attractor(a, a.targets());
    for (std::size_t v = 0; v < n; ++v) CHECK(r.values[v].is_pos_inf() == !att.contains(static_cast<VertexId>(v)));
  }
}

TEST_CASE("solve_mcr matches the oracle on small arenas") {
  std::uint64_t count = 0;
  auto check = [&](const Arena& a) {
    CHECK(head(solve_mcr(normalize_target(a)).values, a.num_vertices()) == mcr_oracle(a));
    ++count;
  };
  for_each_exhaustive({Objective::MCR, 2, 2, 2}, check);
  for (const Arena& a : random_corpus(Objective::MCR, 200, 6, 3, 99)) check(a);
  CHECK(count > 200);
}

TEST_CASE("weight scaling multiplies finite values") {
  for (const Arena& raw : random_corpus(Objective::MCR, 200, 5, 3, 4)) {
    Arena a = normalize_target(raw);
    ValueVector base = solve_mcr(a).values;
    ValueVector big = solve_mcr(scaled(a, 7)).values;
    for (std::size_t v = 0; v < base.size(); ++v) {
      if (base[v].is_finite()) {
        CHECK(big[v] == ExtValue(base[v].raw() * 7));
      } else {
        CHECK(big[v] == base[v]);
      }
    }
  }
}

TEST_CASE("mp_sign examples") {
  CHECK(mp_sign(game("objective tp\nvertex a max\nedge a a 3\n")) == std::vector<Sign>{Sign::Positive});
  CHECK(mp_sign(game("objective tp\nvertex a max\nedge a a 0\n")) == std::vector<Sign>{Sign::Zero});
  CHECK(mp_sign(game("objective tp\nvertex a min\nedge a a -2\n")) == std::vector<Sign>{Sign::Negative});
  CHECK(mp_sign(generate({Family::Fig1a})) == std::vector<Sign>(5, Sign::Zero));
}

TEST_CASE("mp_sign refuses oversized horizons") {
  ArenaBuilder b(Objective::TP);
  VertexId x = b.add_vertex("x", Player::Max);
  b.add_edge(x, x, 1'000'000);
  CHECK_NOTHROW(mp_sign(b.build()));
  ArenaBuilder c(Objective::TP);
  std::vector<VertexId> vs;
  for (int i = 0; i < 400; ++i) vs.push_back(c.add_vertex("v" + std::to_string(i), Player::Max));
  for (int i = 0; i < 400; ++i) c.add_edge(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>((i + 1) % 400)], 1'000'000'000);
  CHECK(error_of([&] { mp_sign(c.build()); }) == ErrorCode::CapExceeded);
}

TEST_CASE("mp_sign matches the mean-payoff oracle") {
  for (const Arena& a : random_corpus(Objective::TP, 300, 5, 3, 8)) {
    std::vector<Sign> s = mp_sign(a);
    std::vector<Rational> mp = mp_oracle(a);
    for (std::size_t v = 0; v < s.size(); ++v) CHECK(static_cast<int>(s[v]) == mp[v].sign());
  }
}

TEST_CASE("bipartite relay and mean-payoff reduction") {
  Arena loop = game("objective tp\nvertex a min\nedge a a -1\n");
  Arena img = mp_to_mcr(loop);
  CHECK(solve_mcr(normalize_target(img)).values[0] == kNegInf);

  Arena pos = game("objective tp\nvertex a max\nedge a a 1\n");
  Arena bip = make_bipartite(pos);
  CHECK(bip.num_vertices() == 2);
  CHECK(bip.owner(1) == Player::Min);
  for (const Edge& e : bip.edges()) CHECK(bip.owner(e.src) != bip.owner(e.dst));
  Arena pos_img = mp_to_mcr(bip);
  CHECK_FALSE(solve_mcr(normalize_target(pos_img)).values[0].is_neg_inf());

  for (const Arena& a : random_corpus(Objective::TP, 500, 5, 3, 12)) {
    Arena b = make_bipartite(a);
    ValueVector v = solve_mcr(normalize_target(mp_to_mcr(b))).values;
    std::vector<Rational> mp = mp_oracle(a);
    for (std::size_t i = 0; i < a.num_vertices(); ++i) CHECK((mp[i].sign() < 0) == v[i].is_neg_inf());
  }
}

TEST_CASE("-inf vertices are the negative mean-payoff vertices of the attractor") {
  for (const Arena& raw : random_corpus(Objective::MCR, 300, 6, 3, 31)) {
    Arena a = normalize_target(raw);
    ValueVector v = solve_mcr(a).values;
    std::vector<VertexId> expected;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_neg_inf()) expected.push_back(static_cast<VertexId>(i));
    }
    CHECK(classify_minus_infinity(a) == expected);
  }
}
