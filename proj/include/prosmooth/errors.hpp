#pragma once
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace prosmooth {

// Base class for all recoverable input/domain errors raised by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word grammar violation; `offset` is the byte position in the input text.
struct syntax_error : error {
  std::size_t offset;
  syntax_error(const std::string& what, std::size_t off)
      : error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct unknown_generator : error {
  explicit unknown_generator(const std::string& name)
      : error("unknown generator '" + name + "'") {}
};

struct zero_exponent : error {
  zero_exponent() : error("exponent 0 is not allowed") {}
};

// Mixing values from different prime/precision contexts or generator tables.
struct ctx_mismatch : error {
  using error::error;
};

// theta does not evaluate to 1 on some relator at the working precision.
struct invalid_orientation : error {
  std::size_t relator_index;
  invalid_orientation(std::size_t idx, const std::string& rel)
      : error("orientation is not 1 on relator #" + std::to_string(idx) +
              " (" + rel + ")"),
        relator_index(idx) {}
};

struct not_a_cocycle : error {
  not_a_cocycle() : error("target values are not a mod-p cocycle") {}
};

struct not_in_kernel : error {
  explicit not_in_kernel(const std::string& word)
      : error("word '" + word + "' is not in the kernel of theta") {}
};

struct bad_parameters : error {
  using error::error;
};

struct sweep_too_large : error {
  unsigned long long count, cap;
  sweep_too_large(unsigned long long c, unsigned long long limit)
      : error("orientation sweep of " + std::to_string(c) +
              " candidates exceeds cap " + std::to_string(limit)),
        count(c), cap(limit) {}
};

// Brute-force oracle or word expansion beyond the configured size guard.
struct too_large : error {
  using error::error;
};

// Internal consistency failure (e.g. the two Kummerian criteria disagree).
// Never expected at runtime; indicates an implementation defect.
struct internal_defect : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace prosmooth
