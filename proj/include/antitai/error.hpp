#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antitai {

// Raised for node ids outside the owning tree or DAG.
class InvalidNode : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exhaustive solvers refuse instances above a configured pair count.
class SizeLimitError : public std::runtime_error {
 public:
  SizeLimitError(std::size_t pairs, std::size_t cap)
      : std::runtime_error("instance has " + std::to_string(pairs) +
                           " pairs, exceeding the cap of " + std::to_string(cap)),
        pairs_(pairs),
        cap_(cap) {}

  std::size_t pairs() const { return pairs_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t pairs_;
  std::size_t cap_;
};

// Malformed input text. `offset` is a byte offset for Newick input and a
// 1-based line number for the line-oriented formats.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace antitai
