#include "mif/error.hpp"

namespace mif {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::argument: return "argument";
    case Errc::domain: return "domain";
    case Errc::degenerate_direction: return "degenerate_direction";
    case Errc::numeric_breakdown: return "numeric_breakdown";
    case Errc::ambiguous_match: return "ambiguous_match";
    case Errc::symmetry_violation: return "symmetry_violation";
    case Errc::frontier_exhausted: return "frontier_exhausted";
    case Errc::catalog_integrity: return "catalog_integrity";
    case Errc::syntax: return "syntax";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace mif
