#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "qg/accel.hpp"
#include "qg/attractor.hpp"
#include "qg/gamefile.hpp"
#include "qg/mcr.hpp"
#include "qg/oracle.hpp"
#include "qg/strategies.hpp"
#include "qg/tp.hpp"

using namespace qg;
using qg::testing::ExhaustiveSpec;
using qg::testing::for_each_exhaustive;
using qg::testing::random_corpus;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s %d %s: %s", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  if (!o.pass) std::printf(" [first failure: %s]", o.first_failure.c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string show(const ValueVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + ")";
}

std::string describe(const Arena& a) { return serialize(a); }

ValueVector ints(std::initializer_list<ExtValue> xs) { return ValueVector(xs); }

Outcome criterion1() {
  Outcome o;
  Arena a = generate({Family::Fig2a, 50, 1, std::nullopt});
  auto start = Clock::now();
  McrResult r = solve_mcr(a, {true, Exec::Serial});
  const double ms = ms_since(start);
  const ExtValue inf = ExtValue::pos_inf();
  if (r.values != ints({-50, -50, 0})) o.fail("values " + show(r.values));
  const std::vector<std::pair<ExtValue, ExtValue>> head{{inf, inf}, {inf, 0}, {-1, 0}, {-1, -1}, {-2, -1}};
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (r.trace->size() <= i || (*r.trace)[i][0] != head[i].first || (*r.trace)[i][1] != head[i].second) {
      o.fail("trace step " + std::to_string(i));
    }
  }
  const auto sweeps = static_cast<std::int64_t>(r.stats.sweeps);
  if (std::llabs(sweeps - 102) > 2) o.fail("sweeps " + std::to_string(sweeps));
  if (ms >= 100) o.fail("runtime " + std::to_string(ms) + " ms");
  char buf[160];
  std::snprintf(buf, sizeof buf, "values %s, sweeps %lld (target 102 +-2), %.2f ms", show(r.values).c_str(),
                static_cast<long long>(sweeps), ms);
  o.detail = buf;
  return o;
}

Outcome criterion2() {
  Outcome o;
  Arena a = generate({Family::LspFig5, 1, 1, std::nullopt});
  ValueVector v = solve_mcr(a).values;
  ValueVector head(v.begin(), v.begin() + 4);
  if (head != ints({2, 3, 1, ExtValue::pos_inf()})) o.fail("values " + show(head));
  o.detail = "(v1,v2,v3,v4) = " + show(head);
  return o;
}

Outcome criterion3() {
  Outcome o;
  ValueVector v = solve_tp(generate({Family::Fig1a, 1, 1, std::nullopt})).values;
  if (v != ints({2, 0, 1, -1, 0})) o.fail("values " + show(v));
  o.detail = "(v1..v5) = " + show(v);
  return o;
}

Outcome criterion4() {
  struct Cell {
    Weight W;
    std::size_t n;
    std::uint64_t ke, ki, ake, aki;
  };
  const Cell cells[] = {{50, 100, 151, 12603, 402, 1404},
                        {50, 500, 551, 53003, 2002, 7004},
                        {200, 100, 301, 80103, 402, 1404},
                        {200, 500, 701, 240503, 2002, 7004}};
  Outcome o;
  std::vector<std::int64_t> offsets_e, offsets_i;
  for (const Cell& c : cells) {
    Arena a = generate({Family::Layered, c.W, c.n, std::nullopt});
    auto t0 = Clock::now();
    TpResult plain = solve_tp(a);
    const double plain_ms = ms_since(t0);
    t0 = Clock::now();
    TpResult accel = solve_tp_accelerated(a);
    const double accel_ms = ms_since(t0);

    const std::string cell = "(W=" + std::to_string(c.W) + ",n=" + std::to_string(c.n) + ")";
    for (std::size_t k = 0; k < c.n; ++k) {
      if (plain.values[3 * k] != ExtValue(0) || plain.values[3 * k + 1] != ExtValue(0) ||
          plain.values[3 * k + 2] != ExtValue(c.W)) {
        o.fail(cell + " value pattern at layer " + std::to_string(k));
        break;
      }
    }
    const auto de = static_cast<std::int64_t>(plain.stats.outer_iterations) - static_cast<std::int64_t>(c.ke);
    const auto di = static_cast<std::int64_t>(plain.stats.inner_iterations) - static_cast<std::int64_t>(c.ki);
    offsets_e.push_back(de);
    offsets_i.push_back(di);
    if (std::llabs(de) > 2) o.fail(cell + " plain k_e " + std::to_string(plain.stats.outer_iterations));
    if (std::llabs(di) > static_cast<std::int64_t>(c.ke) + 2) o.fail(cell + " plain k_i " + std::to_string(plain.stats.inner_iterations));
    auto within5 = [](std::uint64_t got, std::uint64_t want) {
      return std::llabs(static_cast<std::int64_t>(got) - static_cast<std::int64_t>(want)) * 100 <=
             5 * static_cast<std::int64_t>(want);
    };
    if (!within5(accel.stats.outer_iterations, c.ake)) {
      o.fail(cell + " accelerated k_e " + std::to_string(accel.stats.outer_iterations) + " vs " + std::to_string(c.ake));
    }
    if (!within5(accel.stats.inner_iterations, c.aki)) {
      o.fail(cell + " accelerated k_i " + std::to_string(accel.stats.inner_iterations) + " vs " + std::to_string(c.aki));
    }
    if (accel.values != plain.values) o.fail(cell + " accelerated values differ");
    if (plain_ms > 60'000) o.fail(cell + " plain wall " + std::to_string(plain_ms) + " ms");
    if (accel_ms > 2'000) o.fail(cell + " accelerated wall " + std::to_string(accel_ms) + " ms");

    char buf[200];
    std::snprintf(buf, sizeof buf, "%s plain %llu/%llu (%.0f ms) accel %llu/%llu (%.0f ms); ", cell.c_str(),
                  static_cast<unsigned long long>(plain.stats.outer_iterations),
                  static_cast<unsigned long long>(plain.stats.inner_iterations), plain_ms,
                  static_cast<unsigned long long>(accel.stats.outer_iterations),
                  static_cast<unsigned long long>(accel.stats.inner_iterations), accel_ms);
    o.detail += buf;
  }
  auto constant = [](const std::vector<std::int64_t>& xs) {
    return std::all_of(xs.begin(), xs.end(), [&](std::int64_t x) { return x == xs.front(); });
  };
  if (!constant(offsets_e) || !constant(offsets_i)) o.fail("plain count offset is not constant across cells");
  o.detail += "plain offset " + std::to_string(offsets_e.front()) + "/" + std::to_string(offsets_i.front());
  return o;
}

// Criteria 5, 7, 8 and 9 share one pass over the corpus.
struct CorpusOutcomes {
  Outcome c5, c7, c8, c9;
  std::uint64_t mcr = 0, tp = 0, strategy_arenas = 0;
};

void check_mcr(const Arena& raw, CorpusOutcomes& out) {
  ++out.mcr;
  const std::size_t n = raw.num_vertices();
  Arena a = normalize_target(raw);
  McrResult r = solve_mcr(a, {true, Exec::Serial});
  ValueVector plain(r.values.begin(), r.values.begin() + static_cast<std::ptrdiff_t>(n));

  if (plain != mcr_oracle(raw)) out.c5.fail("solve_mcr vs mcr_oracle on\n" + describe(raw));

  for (OracleKind k : {OracleKind::NoClamp, OracleKind::SimplePaths}) {
    if (solve_mcr_accelerated(a, {k}).values != r.values) out.c8.fail("accelerated MCR on\n" + describe(raw));
  }

  AttractorResult att = compute_attractor(a, a.targets());
  std::vector<VertexId> index;
  Arena sub = induced_subarena(a, att.attracted, &index);
  std::vector<Sign> sign = mp_sign(sub);
  std::vector<std::uint8_t> negative(a.num_vertices(), 0);
  for (std::size_t i = 0; i < index.size(); ++i) negative[static_cast<std::size_t>(index[i])] = sign[i] == Sign::Negative;
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    if (r.values[v].is_neg_inf() != (negative[v] != 0)) {
      out.c9.fail("MCR -inf set vs mp_sign on\n" + describe(raw));
      break;
    }
  }

  if (std::any_of(r.values.begin(), r.values.end(), [](const ExtValue& x) { return x.is_neg_inf(); })) return;
  ++out.strategy_arenas;
  MemorylessStrategy mx = extract_max_memoryless(a, r.values);
  MemorylessMachine max_machine(mx);
  if (best_response(a, max_machine) != r.values) out.c7.fail("Max argmax best response on\n" + describe(raw));
  MinMcrStrategies mn = extract_min_mcr(a, r);
  auto sw = make_switching(mn.sigma1, mn.sigma2, r.values, a);
  if (best_response(a, *sw) != r.values) out.c7.fail("switching best response on\n" + describe(raw));
  for (VertexId v = 0; v < static_cast<VertexId>(a.num_vertices()); ++v) {
    if (!r.values[static_cast<std::size_t>(v)].is_finite()) continue;
    PlayOutcome play = play_out(a, max_machine, *sw, v, Objective::MCR);
    std::vector<VertexId> seen = play.lasso.prefix;
    std::sort(seen.begin(), seen.end());
    if (!play.reached_target || play.payoff != r.values[static_cast<std::size_t>(v)] ||
        std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      out.c7.fail("optimal profile outcome loops from " + a.name(v) + " on\n" + describe(raw));
    }
  }
  MemorylessEnumerator e(a, Player::Max);
  do {
    for (VertexId v = 0; v < static_cast<VertexId>(a.num_vertices()); ++v) {
      if (!r.values[static_cast<std::size_t>(v)].is_finite()) continue;
      std::vector<VertexId> flat = lasso_vertices(memoryless_lasso(a, e.current(), mn.sigma2, v));
      auto hit = std::find_if(flat.begin(), flat.end(), [&](VertexId x) { return a.is_target(x); });
      if (hit == flat.end() || static_cast<std::size_t>(hit - flat.begin()) >= a.num_vertices()) {
        out.c7.fail("sigma2 misses the target from " + a.name(v) + " on\n" + describe(raw));
      }
    }
  } while (e.next());
}

void check_tp(const Arena& a, CorpusOutcomes& out) {
  ++out.tp;
  ValueVector plain = solve_tp(a).values;
  if (plain != tp_oracle(a)) out.c5.fail("solve_tp vs tp_oracle on\n" + describe(a));
  for (OracleKind k : {OracleKind::NoClamp, OracleKind::SimplePaths}) {
    if (solve_tp_accelerated(a, {k}).values != plain) out.c8.fail("accelerated TP on\n" + describe(a));
  }
  std::vector<Rational> mp = mp_oracle(a);
  for (std::size_t v = 0; v < plain.size(); ++v) {
    const int cls = plain[v].is_pos_inf() ? 1 : plain[v].is_neg_inf() ? -1 : 0;
    if (cls != mp[v].sign()) {
      out.c9.fail("TP class vs mean-payoff sign on\n" + describe(a));
      break;
    }
  }
}

void check_layered_instances(CorpusOutcomes& out) {
  for (auto [W, n] : {std::pair<Weight, std::size_t>{50, 100}, {50, 500}, {200, 100}, {200, 500}}) {
    Arena tp = generate({Family::Layered, W, n, std::nullopt});
    ValueVector plain = solve_tp(tp).values;
    for (OracleKind k : {OracleKind::NoClamp, OracleKind::SimplePaths}) {
      if (solve_tp_accelerated(tp, {k}).values != plain) out.c8.fail("accelerated TP on layered W=" + std::to_string(W));
    }
    Arena mcr = normalize_target(generate({Family::Layered, W, n, Objective::MCR}));
    ValueVector pm = solve_mcr(mcr).values;
    for (OracleKind k : {OracleKind::NoClamp, OracleKind::SimplePaths}) {
      if (solve_mcr_accelerated(mcr, {k}).values != pm) out.c8.fail("accelerated MCR on layered W=" + std::to_string(W));
    }
  }
}

Outcome criterion6() {
  Outcome o;
  std::size_t finite = 0, pos = 0, neg = 0;
  for (const Arena& a : random_corpus(Objective::TP, 100, 4, 3, 6006)) {
    ValueVector val = solve_tp(a).values;
    Unfolding u = build_unfolding(a, k_bound(a));
    ValueVector g = solve_mcr(u.arena).values;
    const std::int64_t big = static_cast<std::int64_t>(a.num_vertices() - 1) * max_abs_weight(a) + 1;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
      const ExtValue& top = g[static_cast<std::size_t>(u.top[v])];
      if (val[v].is_finite()) {
        ++finite;
        if (top != val[v]) o.fail("finite value differs on\n" + describe(a));
      } else {
        ++(val[v].is_pos_inf() ? pos : neg);
      }
      if (val[v].is_pos_inf() != (top >= ExtValue(big))) o.fail("+inf threshold differs on\n" + describe(a));
    }
  }
  o.detail = "100 arenas; vertices finite " + std::to_string(finite) + ", +inf " + std::to_string(pos) + ", -inf " +
             std::to_string(neg);
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  report(1, "fig2a W=50 values, trace and sweep count", criterion1());
  report(2, "lsp_fig5 values", criterion2());
  report(3, "fig1a TP values", criterion3());
  report(4, "layered family values and iteration counts", criterion4());

  CorpusOutcomes out;
  auto t0 = Clock::now();
  const std::uint64_t mcr_exhaustive =
      for_each_exhaustive(ExhaustiveSpec{Objective::MCR, 3, 2, 2}, [&](const Arena& a) { check_mcr(a, out); });
  const std::uint64_t tp_exhaustive =
      for_each_exhaustive(ExhaustiveSpec{Objective::TP, 3, 2, 2}, [&](const Arena& a) { check_tp(a, out); });
  for (const Arena& a : random_corpus(Objective::MCR, 500, 6, 3, 5005)) check_mcr(a, out);
  for (const Arena& a : random_corpus(Objective::TP, 500, 5, 3, 5006)) check_tp(a, out);
  const double corpus_ms = ms_since(t0);
  check_layered_instances(out);

  char buf[240];
  std::snprintf(buf, sizeof buf, "%llu MCR + %llu TP arenas (exhaustive %llu + %llu, random 500 + 500), %.1f s",
                static_cast<unsigned long long>(out.mcr), static_cast<unsigned long long>(out.tp),
                static_cast<unsigned long long>(mcr_exhaustive), static_cast<unsigned long long>(tp_exhaustive),
                corpus_ms / 1000);
  out.c5.detail = buf;
  if (corpus_ms > 600'000) out.c5.fail("runtime over 10 min");
  report(5, "oracle equivalence", out.c5);

  report(6, "unfolding reduction at k = K", criterion6());

  out.c7.detail = std::to_string(out.strategy_arenas) + " MCR arenas without -inf";
  report(7, "strategy suite", out.c7);
  out.c8.detail = "corpus and layered cells, both objectives, both oracles";
  report(8, "accelerated solver soundness", out.c8);
  out.c9.detail = "TP classes vs mp_oracle sign, MCR -inf set vs mp_sign on the target attractor";
  report(9, "infinity trichotomy", out.c9);

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
