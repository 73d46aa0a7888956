#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "graphonlab/rational.hpp"

namespace graphonlab::detail {

// Line-oriented reader for the strict text formats. Every failure is an
// InputError naming the line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Tokens of the next line; throws at end of input.
  std::vector<std::string> next(std::string_view what);
  // Tokens of the next line, requiring exactly `count` of them.
  std::vector<std::string> next(std::string_view what, std::size_t count);
  // Throws if anything other than blank lines remains.
  void expect_end();

  std::size_t line_number() const { return line_; }
  [[noreturn]] void fail(std::string_view message) const;

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::uint64_t parse_count(std::string_view token);

}  // namespace graphonlab::detail
