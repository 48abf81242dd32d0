// kwproto tests :: text formats, round trips, error locations, DOT output

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace kwproto;
using kwtest::bits;
using kwtest::make_function;

namespace {

std::string dump(const Protocol& p) {
  std::ostringstream os;
  io::write_protocol(os, p);
  return os.str();
}

std::string dot(const Protocol& p) {
  std::ostringstream os;
  io::export_dot(os, p);
  return os.str();
}

template <class Fn>
ParseError parse_error(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError(0, 0, "");
}

PartialMonotoneFunction parse_fn(const std::string& text) {
  std::istringstream in(text);
  return io::parse_function(in);
}

}  // namespace

TEST(FunctionIo, ParseAndWrite) {
  auto f = parse_fn("n=2\nzeros:\n00\nones:\n11\n");
  EXPECT_EQ(f, make_function(2, {"00"}, {"11"}));
  std::ostringstream os;
  io::write_function(os, f);
  EXPECT_EQ(os.str(), "n=2\nzeros:\n00\nones:\n11\n");
  EXPECT_EQ(parse_fn("n=2\n\nzeros:\n  00\nones:\n"), PartialMonotoneFunction(2, {bits("00")}, {}));
}

TEST(FunctionIo, MalformedBitStringLocation) {
  auto e = parse_error([] { parse_fn("n=3\nzeros:\n102\nones:\n111\n"); });
  EXPECT_EQ(e.line, 3u);
  EXPECT_EQ(e.column, 3u);
  auto e2 = parse_error([] { parse_fn("n=3\nzeros:\n  000\n  01\n"); });
  EXPECT_EQ(e2.line, 4u);
  EXPECT_EQ(e2.column, 3u);
  auto e3 = parse_error([] { parse_fn("n=2\n00\n"); });
  EXPECT_EQ(e3.line, 2u);
  auto e4 = parse_error([] { parse_fn("m=2\n"); });
  EXPECT_EQ(e4.line, 1u);
  EXPECT_THROW(parse_fn("n=1\nzeros:\n0\nones:\n0\n"), ParseError);
  EXPECT_THROW(parse_fn(""), ParseError);
}

TEST(ProtocolIo, FactOneRoundTrip) {
  auto f = make_function(3, {"000", "010"}, {"011", "111"});
  auto p = fact_degree_n(f);
  const std::string text = dump(p);
  EXPECT_EQ(text.rfind("n 3\ndegree 3\nvertex 0 inner ineq\n", 0), 0u);
  EXPECT_NE(text.find("edge 0 3\n"), std::string::npos);
  EXPECT_EQ(dump(io::parse_protocol(text)), text);
}

TEST(ProtocolIo, ConjunctionAndRationalRoundTrip) {
  auto f = make_function(3, {"000", "010"}, {"011", "111"});
  auto p = fact_chain(f);
  auto text = dump(p);
  EXPECT_NE(text.find("inner conj 1\n  pair 1\n"), std::string::npos);
  EXPECT_EQ(dump(io::parse_protocol(text)), text);

  Protocol q(1, 1);
  auto g = make_function(1, {"0"}, {"1"});
  auto root = q.add_inner(InequalityLabel{detail::constant_pair(g, Value(Rational(-3, 2)), Value(Rational(7, 4)))});
  q.add_edge(root, q.add_sink(1));
  auto qt = dump(q);
  EXPECT_NE(qt.find("q 0 -3/2"), std::string::npos);
  auto back = io::parse_protocol(qt);
  EXPECT_EQ(std::get<InequalityLabel>(back.vertex(0).inner().label).tables.r->at(bits("1")), Value(Rational(7, 4)));
}

TEST(ProtocolIo, BitValuesKeepTheirLength) {
  auto f = make_function(3, {"000", "010"}, {"011", "111"});
  auto norm = rank_normalize(fact_degree_n(f), 2);
  auto out = simulate_conj_to_eq(norm.protocol, f, 2);
  auto text = dump(out);
  EXPECT_NE(text.find("#0:"), std::string::npos);
  auto back = io::parse_protocol(text);
  EXPECT_EQ(dump(back), text);
  EXPECT_TRUE(verify_solves(back, f).passed());

  // 0001 and 001 share a hex digit but are different values.
  auto v4 = io::parse_protocol("n 1\ndegree 1\nvertex 0 inner eq\n  q 0 #4:1\n  r 1 #3:1\nvertex 1 sink 1\nedge 0 1\n");
  EXPECT_FALSE(eval_vertex(v4, 0, bits("0"), bits("1")));
  auto same = io::parse_protocol("n 1\ndegree 1\nvertex 0 inner eq\n  q 0 #3:1\n  r 1 #3:1\nvertex 1 sink 1\nedge 0 1\n");
  EXPECT_TRUE(eval_vertex(same, 0, bits("0"), bits("1")));
}

TEST(ProtocolIo, BitConjunctionWithTableTerms) {
  auto keys_x = make_keys({bits("00"), bits("01")});
  auto keys_y = make_keys({bits("11")});
  auto tq = make_table(ValueTable(Side::x, keys_x, {Value(1), Value(2)}));
  auto tr = make_table(ValueTable(Side::y, keys_y, {Value(3)}));
  BitEqualityConjunction c;
  c.add(BitTerm::table_bit(tq, 2, 2), BitTerm::table_bit(tr, 2, 1, true));
  c.add(BitTerm::input(Side::x, 1, true), BitTerm::constant(true));
  c.add(BitTerm::constant(false), BitTerm::input(Side::y, 2));
  Protocol p(2, 1);
  auto root = p.add_inner(BitConjunctionLabel{c});
  p.add_edge(root, p.add_sink(1, BitConjunctionLabel{canonical_sink_conjunction(1)}));
  auto text = dump(p);
  EXPECT_NE(text.find("table 0 x\n  v 00 1\n  v 01 2\n"), std::string::npos);
  EXPECT_NE(text.find("  term t0[2/2] !t1[1/2]\n"), std::string::npos);
  EXPECT_NE(text.find("  term !x1 1\n"), std::string::npos);
  EXPECT_NE(text.find("vertex 1 sink 1 bits 2\n"), std::string::npos);
  auto back = io::parse_protocol(text);
  EXPECT_EQ(dump(back), text);
  for (const auto& x : *keys_x)
    for (const auto& y : *keys_y) EXPECT_EQ(eval_vertex(back, 0, x, y), c.eval(x, y));
}

TEST(ProtocolIo, ErrorLocations) {
  auto e = parse_error([] { io::parse_protocol("n 1\ndegree 1\nvertex 1 sink 1\n"); });
  EXPECT_EQ(e.line, 3u);
  EXPECT_EQ(e.column, 8u);
  auto e2 = parse_error([] { io::parse_protocol("n 1\ndegree 1\nvertex 0 sink 1\nedge 0 4\n"); });
  EXPECT_EQ(e2.line, 4u);
  EXPECT_EQ(e2.column, 8u);
  auto e3 = parse_error([] { io::parse_protocol("n 1\ndegree 1\nvertex 0 inner eq\n  q 2 1\n"); });
  EXPECT_EQ(e3.line, 4u);
  EXPECT_EQ(e3.column, 5u);
  auto e4 = parse_error([] { io::parse_protocol("n 1\ndegree 1\nvertex 0 inner eq\n  q 0 #2:7\n"); });
  EXPECT_EQ(e4.line, 4u);
  auto e5 = parse_error([] { io::parse_protocol("n 1\ndegree 1\nvertex 0 inner bits 1\n  term y1 x1\n"); });
  EXPECT_EQ(e5.line, 4u);
  auto e6 = parse_error([] { io::parse_protocol("n 1\ndegree 1\nvertex 0 inner frob\n"); });
  EXPECT_EQ(e6.column, 16u);
  EXPECT_THROW(io::parse_protocol(""), ParseError);
  EXPECT_THROW(io::parse_protocol("n 1\n"), ParseError);
  EXPECT_THROW(io::parse_protocol("n 1\ndegree 1\nvertex 0 inner conj 2\n  pair 1\n  q 0 0\n  r 1 1\n"), ParseError);
}

TEST(RlinIo, RoundTripAndDerivedClauses) {
  const std::string text =
      "line 1 axiom {1+x1}\n"
      "line 2 axiom {x1}\n"
      "line 3 add 2 1 x1 1+x1\n"
      "line 4 contract 3 0\n";
  std::istringstream in(text);
  auto proof = io::parse_rlin(in);
  ASSERT_EQ(proof.size(), 4u);
  EXPECT_EQ(proof.lines()[2].clause.str(), "{0}");
  EXPECT_TRUE(proof.lines()[3].clause.empty());
  std::ostringstream os;
  io::write_rlin(os, proof);
  EXPECT_EQ(os.str(), text);
}

TEST(RlinIo, Errors) {
  auto parse = [](const std::string& t) {
    std::istringstream in(t);
    return io::parse_rlin(in);
  };
  auto e = parse_error([&] { parse("line 1 axiom {x1; 1+y2}\n"); });
  EXPECT_EQ(e.line, 1u);
  EXPECT_EQ(e.column, 21u);
  auto e2 = parse_error([&] { parse("line 1 axiom {x1}\nline 2 contract 5 0\n"); });
  EXPECT_EQ(e2.line, 2u);
  EXPECT_EQ(e2.column, 17u);
  EXPECT_THROW(parse("line 1 axiom {x1}\nline 1 axiom {x1}\n"), ParseError);
  EXPECT_THROW(parse("line 1 axiom x1\n"), ParseError);
  EXPECT_THROW(parse("line 1 frob\n"), ParseError);
  EXPECT_EQ(parse("line 1 axiom {}\n").lines()[0].clause, RlinClause());
  EXPECT_EQ(parse("line 1 axiom { x2 ;1+x1 }\n").lines()[0].clause.str(), "{1+x1; x2}");
}

TEST(ResolutionIo, RoundTrip) {
  const std::string text = "res 1 axiom 1 0\nres 2 axiom -1 0\nres 3 resolve 1 2 1\n";
  std::istringstream in(text);
  auto proof = io::parse_resolution(in);
  ASSERT_EQ(proof.lines.size(), 3u);
  EXPECT_TRUE(proof.lines[2].clause.empty());
  std::ostringstream os;
  io::write_resolution(os, proof);
  EXPECT_EQ(os.str(), text);
}

TEST(DimacsIo, RoundTripWithRoles) {
  auto enc = selection_encode(make_function(2, {"00"}, {"11"}));
  std::ostringstream os;
  io::write_dimacs(os, enc.formula);
  EXPECT_EQ(os.str(),
            "c roles x 1 2\nc roles y 3\nc roles z 4\nc phi 3\np cnf 4 6\n3 0\n-3 -1 0\n-3 -2 0\n4 0\n-4 1 0\n-4 2 0\n");
  std::istringstream in(os.str());
  auto back = io::parse_dimacs(in);
  EXPECT_EQ(back.clauses, enc.formula.clauses);
  EXPECT_EQ(back.phi_count, 3u);
  EXPECT_EQ(back.roles.z, (std::vector<VarId>{4}));
}

TEST(DimacsIo, Errors) {
  auto parse = [](const std::string& t) {
    std::istringstream in(t);
    return io::parse_dimacs(in);
  };
  EXPECT_THROW(parse("1 0\n"), ParseError);
  EXPECT_THROW(parse("p cnf 1 1\n2 0\n"), ParseError);
  EXPECT_THROW(parse("p cnf 1 2\n1 0\n"), ParseError);
  EXPECT_THROW(parse("p cnf 1 1\n1\n"), ParseError);
  EXPECT_THROW(parse("c roles x 1\nc roles y 1\np cnf 1 1\n1 0\n"), ParseError);
  auto multi = parse("p cnf 2 2\n1 -2 0 2\n0\n");
  EXPECT_EQ(multi.clauses, (std::vector<LiteralClause>{{1, -2}, {2}}));
}

TEST(Dot, FactOneTwoBits) {
  auto p = fact_degree_n(make_function(2, {"00"}, {"11"}));
  auto d = dot(p);
  EXPECT_EQ(d,
            "digraph protocol {\n"
            "  v0 [label=\"0: ineq\"];\n"
            "  v1 [label=\"1: sink x1\", shape=box];\n"
            "  v2 [label=\"2: sink x2\", shape=box];\n"
            "  v0 -> v1;\n"
            "  v0 -> v2;\n"
            "}\n");
  EXPECT_EQ(d, dot(p));
}

TEST(Dot, SingleSink) {
  Protocol p(1, 1);
  p.add_sink(1);
  auto d = dot(p);
  EXPECT_EQ(std::count(d.begin(), d.end(), '\n'), 3);
  EXPECT_EQ(d.find("->"), std::string::npos);
}
