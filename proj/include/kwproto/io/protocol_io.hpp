// kwproto :: protocol files
//
//   n 3
//   degree 2
//   table 0 x               value tables referenced by bit terms
//     v 000 5
//   vertex 0 inner ineq     ineq | eq | conj <c> | bits <count>
//     q 000 0
//     r 111 1
//   vertex 1 inner conj 2
//     pair 1
//     q 000 0
//     r 111 1
//     pair 2
//     ...
//   vertex 2 inner bits 2
//     term x3 !y2
//     term t0[2/3] 1
//   vertex 3 sink 1         optionally followed by a label kind and its entries
//   edge 0 3                child order is file order
//
// Values are rationals ("5", "-3/2") or bit strings "#<length>:<hex>".

#pragma once

#include <map>
#include <ostream>

#include "kwproto/io/function_io.hpp"
#include "kwproto/protocol.hpp"

namespace kwproto::io {

inline Value parse_value(Cursor& c) {
  auto w = c.word();
  const std::size_t col = c.last_column();
  if (!w.empty() && w.front() == '#') {
    auto colon = w.find(':');
    if (colon == std::string_view::npos) c.fail("bit-string value needs '#<length>:<hex>'", col);
    std::size_t len = 0;
    auto lw = w.substr(1, colon - 1);
    auto [p, ec] = std::from_chars(lw.data(), lw.data() + lw.size(), len);
    if (ec != std::errc() || p != lw.data() + lw.size()) c.fail("bad bit-string length", col);
    auto hex = w.substr(colon + 1);
    if (hex.size() != (len + 3) / 4) c.fail("bit-string value of length " + std::to_string(len) + " needs " + std::to_string((len + 3) / 4) + " hex digits", col);
    BitString all;
    for (char ch : hex) {
      int d = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0' : (ch >= 'a' && ch <= 'f') ? ch - 'a' + 10 : -1;
      if (d < 0) c.fail(std::string("bad hex digit '") + ch + "'", col);
      for (int k = 3; k >= 0; --k) all.push_back((d >> k) & 1);
    }
    const std::size_t pad = all.size() - len;
    for (std::size_t i = 0; i < pad; ++i)
      if (all[i]) c.fail("bit-string value has bits beyond its length", col);
    BitString out(len);
    for (std::size_t i = 0; i < len; ++i) out.set(i, all[pad + i]);
    return Value(std::move(out));
  }
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  };
  auto slash = w.find('/');
  auto num = w.substr(0, slash);
  if (!valid_int(num, true)) c.fail("malformed number '" + std::string(w) + "'", col);
  Integer numerator{std::string(num)};
  Integer denominator = 1;
  if (slash != std::string_view::npos) {
    auto den = w.substr(slash + 1);
    if (!valid_int(den, false)) c.fail("malformed number '" + std::string(w) + "'", col);
    denominator = Integer(std::string(den));
    if (denominator == 0) c.fail("zero denominator", col);
  }
  return Value(Rational(numerator, denominator));
}

namespace detail {

struct TableNames {
  std::map<const ValueTable*, std::size_t> id;
  std::vector<TablePtr> order;

  void note(const TablePtr& t) {
    if (id.emplace(t.get(), order.size()).second) order.push_back(t);
  }
};

inline std::string term_string(const BitTerm& t, const TableNames& names) {
  switch (t.kind()) {
    case BitTerm::Kind::constant:
      return t.constant_value() ? "1" : "0";
    case BitTerm::Kind::input:
      return std::string(t.negated() ? "!" : "") + side_name(*t.side()) + std::to_string(t.position());
    case BitTerm::Kind::table:
      return std::string(t.negated() ? "!" : "") + "t" + std::to_string(names.id.at(t.table().get())) + "[" +
             std::to_string(t.position()) + "/" + std::to_string(t.width()) + "]";
  }
  return "?";
}

inline void write_entries(std::ostream& os, char tag, const ValueTable& t) {
  for (std::size_t i = 0; i < t.size(); ++i) os << "  " << tag << ' ' << t.keys()[i] << ' ' << to_string(t.values()[i]) << '\n';
}

inline void write_label(std::ostream& os, const FeasibilityLabel& label, const TableNames& names) {
  std::visit(
      [&](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, InequalityLabel> || std::is_same_v<L, EqualityLabel>) {
          os << '\n';
          write_entries(os, 'q', *l.tables.q);
          write_entries(os, 'r', *l.tables.r);
        } else if constexpr (std::is_same_v<L, ConjunctionLabel>) {
          os << ' ' << l.pairs.size() << '\n';
          for (std::size_t j = 0; j < l.pairs.size(); ++j) {
            os << "  pair " << j + 1 << '\n';
            write_entries(os, 'q', *l.pairs[j].q);
            write_entries(os, 'r', *l.pairs[j].r);
          }
        } else {
          os << ' ' << l.conj.size() << '\n';
          for (const auto& t : l.conj.terms()) os << "  term " << term_string(t.lhs, names) << ' ' << term_string(t.rhs, names) << '\n';
        }
      },
      label);
}

}  // namespace detail

inline void write_protocol(std::ostream& os, const Protocol& p) {
  detail::TableNames names;
  auto note_bits = [&](const FeasibilityLabel& l) {
    if (auto* b = std::get_if<BitConjunctionLabel>(&l))
      for (const auto& t : b->conj.terms())
        for (const BitTerm* bt : {&t.lhs, &t.rhs})
          if (bt->kind() == BitTerm::Kind::table) names.note(bt->table());
  };
  for (const auto& v : p.vertices()) {
    if (!v.is_sink())
      note_bits(v.inner().label);
    else if (v.sink().label)
      note_bits(*v.sink().label);
  }

  os << "n " << p.n() << "\ndegree " << p.degree() << '\n';
  for (std::size_t i = 0; i < names.order.size(); ++i) {
    os << "table " << i << ' ' << side_name(names.order[i]->side()) << '\n';
    detail::write_entries(os, 'v', *names.order[i]);
  }
  for (VertexId id = 0; id < p.size(); ++id) {
    const Vertex& v = p.vertex(id);
    os << "vertex " << id;
    if (v.is_sink()) {
      os << " sink " << v.sink().index;
      if (v.sink().label) {
        os << ' ' << label_kind(*v.sink().label);
        detail::write_label(os, *v.sink().label, names);
      } else {
        os << '\n';
      }
    } else {
      os << " inner " << label_kind(v.inner().label);
      detail::write_label(os, v.inner().label, names);
    }
  }
  for (VertexId id = 0; id < p.size(); ++id)
    for (VertexId c : p.vertex(id).children) os << "edge " << id << ' ' << c << '\n';
}

namespace detail {

class ProtocolParser {
 public:
  explicit ProtocolParser(std::vector<Cursor> lines) : lines_(std::move(lines)) {}

  Protocol run() {
    if (lines_.empty()) throw ParseError(1, 1, "empty protocol file");
    Cursor& h1 = next_line();
    h1.expect("n");
    std::size_t n = h1.number();
    h1.expect_end();
    if (at_end()) h1.fail("missing 'degree' line");
    Cursor& h2 = next_line();
    h2.expect("degree");
    std::size_t degree = h2.number();
    h2.expect_end();
    Protocol p(n, degree);

    while (!at_end()) {
      Cursor& c = next_line();
      if (c.indented()) c.fail("unexpected indented line", 1);
      auto kw = c.word();
      if (kw == "table") {
        parse_table(c);
      } else if (kw == "vertex") {
        std::size_t id = c.number();
        if (id != p.size()) c.fail("expected vertex " + std::to_string(p.size()) + ", vertex ids must be dense and in order", c.last_column());
        auto role = c.word();
        if (role == "inner") {
          p.add_inner(parse_label(c, c.word()));
        } else if (role == "sink") {
          std::size_t index = c.number();
          if (auto kind = c.maybe_word())
            p.add_sink(index, parse_label(c, *kind));
          else
            p.add_sink(index);
        } else {
          c.fail("expected 'inner' or 'sink'", c.last_column());
        }
      } else if (kw == "edge") {
        std::size_t a = c.number(), a_col = c.last_column();
        std::size_t b = c.number(), b_col = c.last_column();
        c.expect_end();
        if (a >= p.size()) c.fail("edge from unknown vertex " + std::to_string(a), a_col);
        if (b >= p.size()) c.fail("edge to unknown vertex " + std::to_string(b), b_col);
        p.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
      } else {
        c.fail("unknown keyword '" + std::string(kw) + "'", c.last_column());
      }
    }
    return p;
  }

 private:
  bool at_end() const { return next_ >= lines_.size(); }
  Cursor& next_line() { return lines_[next_++]; }
  bool entry_follows() const { return !at_end() && lines_[next_].indented(); }

  // Consumes indented "<tag> <bits> <value>" lines with tag in `tags`.
  std::map<char, std::vector<std::pair<BitString, Value>>> entries(std::string_view tags) {
    std::map<char, std::vector<std::pair<BitString, Value>>> out;
    while (entry_follows()) {
      Cursor& c = lines_[next_];
      auto save = c;
      auto w = c.word();
      if (w.size() != 1 || tags.find(w[0]) == std::string_view::npos) {
        c = save;
        break;
      }
      ++next_;
      BitString key = parse_bits(c);
      Value v = parse_value(c);
      c.expect_end();
      out[w[0]].emplace_back(std::move(key), std::move(v));
    }
    return out;
  }

  TablePair parse_pair(Cursor& at) {
    auto e = entries("qr");
    try {
      return {make_table(ValueTable(Side::x, std::move(e['q']))), make_table(ValueTable(Side::y, std::move(e['r'])))};
    } catch (const InputError& err) {
      at.fail(err.what(), 1);
    }
  }

  void parse_table(Cursor& c) {
    std::size_t id = c.number();
    auto side = c.word();
    if (side != "x" && side != "y") c.fail("table side must be x or y", c.last_column());
    c.expect_end();
    if (tables_.count(id)) c.fail("duplicate table " + std::to_string(id));
    auto e = entries("v");
    try {
      tables_[id] = make_table(ValueTable(side == "x" ? Side::x : Side::y, std::move(e['v'])));
    } catch (const InputError& err) {
      c.fail(err.what(), 1);
    }
  }

  BitTerm parse_term(Cursor& c) {
    auto w = c.word();
    const std::size_t col = c.last_column();
    std::string_view s = w;
    bool neg = false;
    if (!s.empty() && s.front() == '!') {
      neg = true;
      s.remove_prefix(1);
    }
    auto read_num = [&](std::string_view t) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || p != t.data() + t.size() || t.empty()) c.fail("malformed term '" + std::string(w) + "'", col);
      return v;
    };
    if (!neg && (s == "0" || s == "1")) return BitTerm::constant(s == "1");
    if (!s.empty() && (s.front() == 'x' || s.front() == 'y'))
      return BitTerm::input(s.front() == 'x' ? Side::x : Side::y, read_num(s.substr(1)), neg);
    if (!s.empty() && s.front() == 't') {
      auto open = s.find('['), slash = s.find('/'), close = s.find(']');
      if (open == std::string_view::npos || slash == std::string_view::npos || close != s.size() - 1 || !(open < slash && slash < close))
        c.fail("malformed table term '" + std::string(w) + "'", col);
      std::size_t id = read_num(s.substr(1, open - 1));
      std::size_t pos = read_num(s.substr(open + 1, slash - open - 1));
      std::size_t width = read_num(s.substr(slash + 1, close - slash - 1));
      auto it = tables_.find(id);
      if (it == tables_.end()) c.fail("unknown table " + std::to_string(id), col);
      try {
        return BitTerm::table_bit(it->second, width, pos, neg);
      } catch (const InputError& e) {
        c.fail(e.what(), col);
      }
    }
    c.fail("malformed term '" + std::string(w) + "'", col);
  }

  FeasibilityLabel parse_label(Cursor& c, std::string_view kind) {
    const std::size_t kind_col = c.last_column();
    if (kind == "ineq" || kind == "eq") {
      c.expect_end();
      TablePair tp = parse_pair(c);
      if (kind == "ineq") return InequalityLabel{tp};
      return EqualityLabel{tp};
    }
    if (kind == "conj") {
      std::size_t count = c.number();
      c.expect_end();
      ConjunctionLabel out;
      for (std::size_t j = 1; j <= count; ++j) {
        if (!entry_follows()) c.fail("conjunction declares " + std::to_string(count) + " pairs but has " + std::to_string(j - 1));
        Cursor& pc = next_line();
        pc.expect("pair");
        if (pc.number() != j) pc.fail("expected pair " + std::to_string(j), pc.last_column());
        pc.expect_end();
        out.pairs.push_back(parse_pair(pc));
      }
      return out;
    }
    if (kind == "bits") {
      std::size_t count = c.number();
      c.expect_end();
      BitConjunctionLabel out;
      for (std::size_t j = 0; j < count; ++j) {
        if (!entry_follows()) c.fail("bit conjunction declares " + std::to_string(count) + " terms but has " + std::to_string(j));
        Cursor& tc = next_line();
        tc.expect("term");
        std::size_t col = tc.column();
        BitTerm lhs = parse_term(tc);
        BitTerm rhs = parse_term(tc);
        tc.expect_end();
        try {
          out.conj.add(lhs, rhs);
        } catch (const InputError& e) {
          tc.fail(e.what(), col);
        }
      }
      return out;
    }
    c.fail("unknown label kind '" + std::string(kind) + "'", kind_col);
  }

  std::vector<Cursor> lines_;
  std::size_t next_ = 0;
  std::map<std::size_t, TablePtr> tables_;
};

}  // namespace detail

inline Protocol parse_protocol(std::istream& in) { return detail::ProtocolParser(read_lines(in)).run(); }

inline Protocol parse_protocol(std::string_view text) { return detail::ProtocolParser(read_lines(text)).run(); }

}  // namespace kwproto::io
