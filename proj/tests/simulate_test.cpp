// kwproto tests :: witnesses, skeleton, search trees, size accounting and the simulations

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace kwproto;
using kwtest::bits;
using kwtest::make_function;

namespace {

// Placeholder tables for trees whose labels are never evaluated.
TablePair dummy_pair() {
  static const KeySet keys = make_keys({bits("0")});
  return {make_table(ValueTable::constant(Side::x, keys, 0)), make_table(ValueTable::constant(Side::y, keys, 0))};
}

std::vector<Candidate> inner_candidates(std::size_t p, std::size_t c) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < p; ++i) out.push_back(Candidate::inner(static_cast<VertexId>(i), std::vector<TablePair>(c, dummy_pair())));
  return out;
}

// First index where a and b differ, read as a strict comparison, computed
// from the integer values.
std::optional<std::size_t> reference_witness(std::uint64_t a, std::uint64_t b, std::size_t w) {
  if (a >= b) return std::nullopt;
  for (std::size_t i = 1; i <= w; ++i) {
    const std::uint64_t mask = std::uint64_t{1} << (w - i);
    if ((a & mask) != (b & mask)) return i;
  }
  return std::nullopt;
}

}  // namespace

TEST(Decompose, Examples) {
  EXPECT_EQ(decompose_inequality(bits("10"), bits("11")), 2u);
  EXPECT_EQ(decompose_inequality(bits("01"), bits("10")), 1u);
  EXPECT_FALSE(decompose_inequality(bits("11"), bits("11")));
  EXPECT_THROW(decompose_inequality(bits("1"), bits("11")), InputError);
  EXPECT_THROW(decompose_inequality(bits(""), bits("")), InputError);
}

TEST(Decompose, ExhaustiveUpToFiveBits) {
  for (std::size_t w = 1; w <= 5; ++w)
    for (const auto& a : all_bitstrings(w))
      for (const auto& b : all_bitstrings(w))
        EXPECT_EQ(decompose_inequality(a, b), reference_witness(a.to_uint(), b.to_uint(), w)) << a << ' ' << b;
}

TEST(Witness, AllTuplesInLexOrder) {
  auto t = all_witness_tuples(2, 3);
  ASSERT_EQ(t.size(), 9u);
  EXPECT_EQ(t.front().entries, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(t[1].entries, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(t.back().entries, (std::vector<std::size_t>{3, 3}));
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
}

TEST(Witness, SingleAndFailingConjuncts) {
  auto f = make_function(1, {"0"}, {"1"});
  auto tab = [&](Side s, int v) { return make_table(ValueTable::constant(s, f.keys(s), v)); };
  TablePair one{tab(Side::x, 1), tab(Side::y, 2)};  // 01 < 10
  auto I = witnesses({one}, 2, bits("0"), bits("1"));
  ASSERT_TRUE(I);
  EXPECT_EQ(I->entries, (std::vector<std::size_t>{1}));
  TablePair second_bit{tab(Side::x, 2), tab(Side::y, 3)};
  TablePair fails{tab(Side::x, 3), tab(Side::y, 3)};
  EXPECT_FALSE(witnesses({second_bit, fails}, 2, bits("0"), bits("1")));
}

TEST(Witness, PhiLabelShape) {
  auto f = make_function(1, {"0"}, {"1"});
  TablePair tp{make_table(ValueTable::constant(Side::x, f.zero_keys(), 1)),
               make_table(ValueTable::constant(Side::y, f.one_keys(), 2))};
  auto phi = phi_label({tp}, 2, WitnessTuple{{1}});
  ASSERT_EQ(phi.size(), 2u);
  EXPECT_EQ(phi.terms()[0].lhs, BitTerm::table_bit(tp.q, 2, 1));
  EXPECT_EQ(phi.terms()[0].rhs, BitTerm::constant(false));
  EXPECT_EQ(phi.terms()[1].lhs, BitTerm::constant(true));
  EXPECT_EQ(phi.terms()[1].rhs, BitTerm::table_bit(tp.r, 2, 1));
  EXPECT_EQ(phi_label({tp}, 4, WitnessTuple{{4}}).size(), 3u + 2u);
  EXPECT_THROW(phi_label({tp}, 2, WitnessTuple{{3}}), InputError);
  EXPECT_THROW(phi_label({tp}, 2, WitnessTuple{{1, 1}}), InputError);
}

// Φ^I holds exactly for the witness tuple of (x, y), over random conjunctions.
TEST(Witness, PhiTrueOnlyForTheWitness) {
  kwtest::Rng rng(3);
  const std::size_t n = 3, w = 3;
  auto keys = make_keys(all_bitstrings(n));
  std::uniform_int_distribution<int> val(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TablePair> pairs;
    for (int j = 0; j < 2; ++j) {
      std::vector<Value> q, r;
      for (std::size_t k = 0; k < keys->size(); ++k) q.emplace_back(val(rng)), r.emplace_back(val(rng));
      pairs.push_back({make_table(ValueTable(Side::x, keys, q)), make_table(ValueTable(Side::y, keys, r))});
    }
    for (const auto& x : *keys)
      for (const auto& y : *keys) {
        auto I = witnesses(pairs, w, x, y);
        bool all_less = true;
        for (const auto& tp : pairs) all_less = all_less && less_than(tp.q->at(x), tp.r->at(y));
        EXPECT_EQ(I.has_value(), all_less);
        for (const auto& J : all_witness_tuples(2, w)) EXPECT_EQ(phi_label(pairs, w, J).eval(x, y), I && *I == J);
      }
  }
}

TEST(Skeleton, CountsAndLabels) {
  auto f = make_function(2, {"00"}, {"11"});
  auto norm = rank_normalize(fact_degree_n(f), 2);
  auto s = build_skeleton(norm.protocol, 2);
  EXPECT_EQ(s.vertices.size(), 2u + 2u);
  EXPECT_EQ(s.arity, 1u);
  EXPECT_EQ(s.at(1, {}).sink_index, 1u);
  EXPECT_EQ(s.at(0, WitnessTuple{{2}}).witness->entries, (std::vector<std::size_t>{2}));

  Protocol lone(2, 1);
  lone.add_sink(2);
  auto t = build_skeleton(lone, 3);
  ASSERT_EQ(t.vertices.size(), 1u);
  EXPECT_EQ(t.vertices[0].label, canonical_sink_conjunction(2));
}

TEST(Skeleton, FeasibleVertexHasExactlyOneFeasibleCopy) {
  kwtest::Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = kwtest::random_function(rng, 4, 6);
    auto norm = rank_normalize(fact_chain(f));
    auto s = build_skeleton(norm.protocol, norm.width);
    for (VertexId v = 0; v < norm.protocol.size(); ++v) {
      if (norm.protocol.vertex(v).is_sink()) continue;
      for (const auto& x : f.zeros())
        for (const auto& y : f.ones()) {
          std::size_t count = 0;
          for (const auto& I : all_witness_tuples(s.arity, s.width)) count += s.at(v, I).label.eval(x, y);
          EXPECT_EQ(count, eval_vertex(norm.protocol, v, x, y) ? 1u : 0u);
        }
    }
  }
}

TEST(Skeleton, RequiresNormalizedIntegers) {
  auto f = make_function(2, {"00"}, {"11"});
  auto p = fact_degree_n(f);  // values 0 and 1 fit one bit
  EXPECT_NO_THROW(require_normalized(p, 1));
  auto chain = fact_chain(make_function(3, {"100"}, {"111"}));  // −x_1 is −1
  EXPECT_THROW(require_normalized(chain, 4), PreconditionError);
}

TEST(SearchTree, PositionOneSizes) {
  for (std::size_t w = 2; w <= 6; ++w)
    for (std::size_t j = 1; j <= 3; ++j)
      for (std::size_t k = 2; k <= w; ++k) {
        auto t = build_stage_tree(inner_candidates(1, 3), 3, w, 1, j, k);
        EXPECT_EQ(Integer(t.size()), position_one_size(j, k, w)) << "w=" << w << " j=" << j << " k=" << k;
        StageSizes sizes({1, 0}, 3, w);
        EXPECT_EQ(sizes.stage(1, j, k), position_one_size(j, k, w));
      }
  EXPECT_EQ(build_stage_tree(inner_candidates(1, 1), 1, 2, 1, 1, 2).size(), 3u);
}

TEST(SearchTree, OneInequalityHasTwoKMinusOne) {
  for (std::size_t k = 2; k <= 9; ++k) EXPECT_EQ(build_tree({}, inner_candidates(1, 1), 1, k).size(), 2 * k - 1);
}

TEST(SearchTree, RecursionMatchesConstruction) {
  for (std::size_t w = 1; w <= 4; ++w)
    for (std::size_t c = 1; c <= 2; ++c)
      for (std::size_t inner = 0; inner <= 3; ++inner)
        for (std::size_t sinks = 0; sinks <= 2; ++sinks) {
          if (inner + sinks == 0) continue;
          auto cands = inner_candidates(inner, c);
          for (std::size_t s = 0; s < sinks; ++s) cands.push_back(Candidate::sink(static_cast<VertexId>(10 + s), s + 1));
          auto t = build_tree({}, cands, c, w);
          EXPECT_EQ(Integer(t.size()), StageSizes({inner, sinks}, c, w).tree())
              << "w=" << w << " c=" << c << " inner=" << inner << " sinks=" << sinks;
        }
}

TEST(SearchTree, ExactRecursionUnderBound) {
  EXPECT_LE(StageSizes({2, 0}, 1, 10).tree(), 2000);
  EXPECT_EQ(StageSizes({2, 0}, 1, 10).tree(), 239);
}

TEST(SearchTree, LeavesCoverEveryWitnessOnce) {
  auto t = build_tree({}, inner_candidates(2, 2), 2, 3);
  std::map<std::pair<VertexId, WitnessTuple>, int> seen;
  for (const auto& n : t.nodes())
    if (n.is_leaf()) ++seen[{t.leaf_candidate(n).vertex, t.leaf_witness(n)}];
  // Position 1 always ends in a leaf; position 2 may be refuted, but every
  // tuple of every candidate is reachable.
  EXPECT_EQ(seen.size(), 2u * 9u);
}

TEST(SearchTree, DegenerateSingleLeafGetsARoot) {
  std::vector<Candidate> one{Candidate::sink(5, 2)};
  auto t = build_tree({}, one, 1, 3);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.node(t.root()).child_count, 1u);
  EXPECT_FALSE(t.node(t.root()).is_leaf());

  auto w1 = build_tree({}, inner_candidates(1, 2), 2, 1);
  EXPECT_EQ(w1.size(), 2u);
  EXPECT_EQ(w1.leaf_witness(w1.node(w1.node(w1.root()).children[0])).entries, (std::vector<std::size_t>{1, 1}));
}

TEST(SearchTree, RejectsBadCandidates) {
  std::vector<Candidate> sink_first{Candidate::sink(1, 1), inner_candidates(1, 1)[0]};
  EXPECT_THROW(build_tree({}, sink_first, 1, 2), PreconditionError);
  EXPECT_THROW(build_tree({}, {}, 1, 2), InputError);
  EXPECT_THROW(build_tree({}, inner_candidates(1, 2), 1, 2), InputError);
  EXPECT_THROW(build_tree({}, inner_candidates(1, 1), 1, 0), InputError);
}

TEST(SizeAccounting, ClosedFormsAndValidity) {
  EXPECT_EQ(position_one_size(1, 2, 5), 3);
  EXPECT_EQ(tree_bound(2, 1, 10), 2000);
  auto r = size_accounting(4, 10, 1, 3, {CandidateShape{0, 3}}, {1, 0}, 3);
  EXPECT_TRUE(r.closed_form_valid);
  EXPECT_EQ(r.skeleton, 10 + 3);
  EXPECT_EQ(r.exact_total, r.top_tree + r.vertex_trees);
  EXPECT_LE(r.exact_total, r.closed_form_total);
  EXPECT_FALSE(size_accounting(4, 3, 1, 3, {CandidateShape{0, 3}}).closed_form_valid);
  EXPECT_THROW(size_accounting(4, 3, 1, 2, {CandidateShape{0, 3}}), InputError);
}

TEST(Simulate, FactOneAtWidthThree) {
  auto f = make_function(3, {"000", "010", "100"}, {"011", "111"});
  auto norm = rank_normalize(fact_degree_n(f), 3);
  ASSERT_EQ(norm.width, 3u);
  auto res = simulate_with_stats(norm.protocol, f, norm.width, {true, 1});
  const Protocol& out = res.protocol;
  EXPECT_TRUE(verify_solves(out, f).passed());
  EXPECT_TRUE(kwtest::solves_reference(out, f));
  EXPECT_LE(out.max_out_degree(), 2u);
  EXPECT_EQ(out.degree(), 2u);
  for (const auto& v : out.vertices())
    if (!v.is_sink()) {
      EXPECT_TRUE(std::holds_alternative<EqualityLabel>(v.inner().label));
    }
  auto acc = size_accounting(norm.protocol, norm.width);
  EXPECT_EQ(res.tree_vertices, acc.exact_total);
  EXPECT_LE(Integer(out.size()), acc.exact_total + acc.skeleton + 1);
  EXPECT_LE(Integer(out.size()), acc.closed_form_total);
}

TEST(Simulate, SourcePlusSinksAtWidthOne) {
  auto f = make_function(2, {"00"}, {"11"});
  auto norm = rank_normalize(fact_degree_n(f));
  EXPECT_EQ(norm.width, 1u);
  auto out = simulate_conj_to_eq(norm.protocol, f, norm.width);
  EXPECT_TRUE(verify_solves(out, f).passed());
  EXPECT_LE(out.max_out_degree(), 2u);
}

TEST(Simulate, FactChainRandom) {
  kwtest::Rng rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    auto f = kwtest::random_function(rng, 4, 5);
    auto norm = rank_normalize(fact_chain(f));
    auto res = simulate_with_stats(norm.protocol, f, norm.width);
    EXPECT_TRUE(verify_solves(res.protocol, f).passed());
    EXPECT_EQ(res.arity, 2u);
    EXPECT_EQ(res.tree_vertices, size_accounting(norm.protocol, norm.width).exact_total);
  }
}

TEST(Simulate, OutputIsDeterministic) {
  auto f = make_function(3, {"000", "010"}, {"011", "111"});
  auto norm = rank_normalize(fact_degree_n(f), 3);
  std::ostringstream a, b;
  io::write_protocol(a, simulate_conj_to_eq(norm.protocol, f, 3));
  io::write_protocol(b, simulate_conj_to_eq(norm.protocol, f, 3));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Simulate, Preconditions) {
  auto f = make_function(3, {"100"}, {"111"});
  auto p = fact_degree_n(f);
  EXPECT_THROW(simulate_conj_to_eq(fact_chain(f), f, 3), PreconditionError);  // not normalized
  EXPECT_THROW(simulate_conj_to_eq(p, make_function(2, {"00"}, {"11"}), 1), PreconditionError);

  auto g = make_function(3, {"100"}, {"110"});
  Protocol bad(3, 3);
  auto root = bad.add_inner(fact_degree_n(g).vertex(0).inner().label);
  bad.add_edge(root, bad.add_sink(1));
  EXPECT_THROW(simulate_conj_to_eq(bad, g, 1, {true, 1}), PreconditionError);
  EXPECT_NO_THROW(simulate_conj_to_eq(bad, g, 1));
}

TEST(EqToConj, ExamplesFromValues) {
  auto f = make_function(1, {"0"}, {"1"});
  auto eq = [&](int q, int r) {
    Protocol p(1, 1);
    auto root = p.add_inner(EqualityLabel{detail::constant_pair(f, q, r)});
    p.add_edge(root, p.add_sink(1));
    return eq_to_conj2(p);
  };
  auto five = eq(5, 5);
  const auto& l = std::get<ConjunctionLabel>(five.vertex(0).inner().label);
  ASSERT_EQ(l.pairs.size(), 2u);
  EXPECT_EQ(l.pairs[0].q->at(bits("0")), Value(5));
  EXPECT_EQ(l.pairs[0].r->at(bits("1")), Value(6));
  EXPECT_EQ(l.pairs[1].q->at(bits("0")), Value(-5));
  EXPECT_EQ(l.pairs[1].r->at(bits("1")), Value(-4));
  EXPECT_TRUE(eval_vertex(five, 0, bits("0"), bits("1")));
  EXPECT_FALSE(eval_vertex(eq(4, 5), 0, bits("0"), bits("1")));
  EXPECT_FALSE(eval_vertex(eq(6, 5), 0, bits("0"), bits("1")));
}

TEST(EqToConj, RejectsOtherLabelsAndFractions) {
  auto f = make_function(1, {"0"}, {"1"});
  EXPECT_THROW(eq_to_conj2(fact_degree_n(f)), PreconditionError);
  Protocol p(1, 1);
  auto root = p.add_inner(EqualityLabel{detail::constant_pair(f, Value(Rational(1, 2)), 0)});
  p.add_edge(root, p.add_sink(1));
  EXPECT_THROW(eq_to_conj2(p), InputError);
}

TEST(EqToConj, FeasibleSetsPreserved) {
  kwtest::Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = kwtest::random_function(rng, 3, 5);
    auto p = kwtest::random_equality_protocol(rng, f, 9);
    auto q = eq_to_conj2(p);
    for (VertexId v = 0; v < p.size(); ++v) EXPECT_EQ(feasible_set(p, v, f), feasible_set(q, v, f));
  }
}

TEST(DegreeReduce, SplitterProtocols) {
  kwtest::Rng rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    auto f = kwtest::random_function(rng, 3, 3);
    auto p = kwtest::splitter_protocol(rng, f);
    ASSERT_TRUE(verify_solves(p, f).passed());
    ASSERT_EQ(p.max_out_degree(), 3u);
    auto red = degree_reduce_with_stats(p, f, 0, {true, 1});
    const Protocol& out = red.simulation.protocol;
    EXPECT_TRUE(verify_solves(out, f).passed());
    EXPECT_LE(out.max_out_degree(), 2u);
    auto acc = size_accounting(red.conjunction, red.simulation.width);
    EXPECT_EQ(acc.c, 2u);
    EXPECT_EQ(red.simulation.tree_vertices, acc.exact_total);
  }
}

TEST(DegreeReduce, AlreadyDegreeTwo) {
  auto f = make_function(2, {"00", "01"}, {"10", "11"});
  Protocol p(2, 2);
  auto root = p.add_inner(EqualityLabel{detail::constant_pair(f, 0, 0)});
  p.add_edge(root, p.add_sink(1));
  p.add_edge(root, p.add_sink(2));
  ASSERT_TRUE(verify_solves(p, f).passed());
  auto out = degree_reduce_eq(p, f);
  EXPECT_TRUE(verify_solves(out, f).passed());
  EXPECT_LE(out.max_out_degree(), 2u);
}
