#pragma once

// Line-oriented ring description:
//
//   # comment
//   p 2
//   ext 2 t^2+t+1
//   vars x y z
//   ideal J = z^4 + x*y*z^2, x + y
//   precision 12
//
// `p` and `vars` are required and come before any `ideal` line. Expressions
// may use the field generator only after an `ext` line.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hk/poly.hpp"

namespace hk {

struct RingFile {
  FieldPtr field;
  RingPtr ring;
  std::vector<std::pair<std::string, std::vector<Polynomial>>> ideals;
  std::optional<std::uint32_t> precision;

  // Throws PreconditionError for an unknown label.
  const std::vector<Polynomial>& ideal(const std::string& label) const;
  std::string to_string() const;
};

// ParseError offsets are byte offsets into text.
RingFile parse_ring_file(std::string_view text);
RingFile load_ring_file(const std::string& path);

}  // namespace hk
