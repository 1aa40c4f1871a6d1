#ifndef FERMISPEC_SERIES_IO_HPP
#define FERMISPEC_SERIES_IO_HPP

#include <string>

#include "fermispec/series.hpp"

namespace fermispec {

/// Shortest round-trip decimal form of a double (locale independent).
std::string format_double(double v);

/// One term per line, `re im : a1 a2 b1 b2 m l` with z-basis exponents, in
/// canonical graded-lex order.  Lines starting with '#' are comments.
std::string serialize_series(const Series& s);

/// Inverse of serialize_series; ignores blank and '#' lines.
Series parse_series(const std::string& text);

}  // namespace fermispec

#endif
