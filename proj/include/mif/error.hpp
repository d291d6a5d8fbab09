#pragma once

#include <stdexcept>
#include <string>

namespace mif {

enum class Errc {
  argument = 1,
  domain,
  degenerate_direction,
  numeric_breakdown,
  ambiguous_match,
  symmetry_violation,
  frontier_exhausted,
  catalog_integrity,
  syntax,
  io,
};

const char* errc_name(Errc code) noexcept;

// Single exception type for the library; the C API maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mif
