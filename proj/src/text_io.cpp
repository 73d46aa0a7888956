#include "text_io.hpp"

#include <charconv>
#include <sstream>

#include "graphonlab/errors.hpp"

namespace graphonlab::detail {

std::vector<std::string> LineReader::next(std::string_view what) {
  std::string line;
  if (!std::getline(in_, line)) {
    throw InputError("unexpected end of input, expected " + std::string(what));
  }
  ++line_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream tokens(line);
  std::vector<std::string> out;
  for (std::string token; tokens >> token;) out.push_back(token);
  return out;
}

std::vector<std::string> LineReader::next(std::string_view what, std::size_t count) {
  auto tokens = next(what);
  if (tokens.size() != count) {
    fail("expected " + std::to_string(count) + " fields for " + std::string(what) + ", got " +
         std::to_string(tokens.size()));
  }
  return tokens;
}

void LineReader::expect_end() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") != std::string::npos) fail("unexpected trailing content");
  }
}

void LineReader::fail(std::string_view message) const {
  throw InputError("line " + std::to_string(line_) + ": " + std::string(message));
}

std::uint64_t parse_count(std::string_view token) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw InputError("not a non-negative integer: " + std::string(token));
  }
  return value;
}

}  // namespace graphonlab::detail
