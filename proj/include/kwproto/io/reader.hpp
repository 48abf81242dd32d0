// kwproto :: line/column-aware tokenizing for the text formats

#pragma once

#include <cctype>
#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kwproto/error.hpp"

namespace kwproto::io {

// One line of input with a read position. Columns are 1-based.
class Cursor {
 public:
  Cursor(std::string text, std::size_t line) : text_(std::move(text)), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }
  const std::string& text() const { return text_; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  // Leading whitespace width of the line (to tell indented entry lines apart).
  bool indented() const { return !text_.empty() && (text_[0] == ' ' || text_[0] == '\t'); }

  [[noreturn]] void fail(const std::string& msg, std::optional<std::size_t> col = std::nullopt) const {
    throw ParseError(line_, col.value_or(column()), msg);
  }

  // Next whitespace-delimited token; its column is left in last_column().
  std::string_view word() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of line");
    last_ = pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string_view(text_).substr(start, pos_ - start);
  }

  std::optional<std::string_view> maybe_word() {
    if (at_end()) return std::nullopt;
    return word();
  }

  std::size_t last_column() const { return last_ + 1; }

  void expect(std::string_view keyword) {
    auto w = word();
    if (w != keyword) fail("expected '" + std::string(keyword) + "', found '" + std::string(w) + "'", last_column());
  }

  std::size_t number() {
    auto w = word();
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) fail("expected a non-negative integer, found '" + std::string(w) + "'", last_column());
    return v;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing text");
  }

  // The rest of the line, trimmed; pos moves to the end.
  std::string_view rest() {
    skip_space();
    last_ = pos_;
    std::string_view r = std::string_view(text_).substr(pos_);
    while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.remove_suffix(1);
    pos_ = text_.size();
    return r;
  }

 private:
  std::string text_;
  std::size_t line_;
  std::size_t pos_ = 0;
  std::size_t last_ = 0;
};

// Non-blank lines of a stream, numbered from 1 as in the file.
inline std::vector<Cursor> read_lines(std::istream& in) {
  std::vector<Cursor> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    out.emplace_back(line, number);
  }
  return out;
}

inline std::vector<Cursor> read_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_lines(in);
}

}  // namespace kwproto::io
