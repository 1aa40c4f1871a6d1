#include "fermispec/series_io.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fermispec {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string serialize_series(const Series& s) {
  std::string out;
  out += "# re im : a1 a2 b1 b2 m l\n";
  for (const auto& [m, c] : s.terms()) {
    out += format_double(c.real());
    out += ' ';
    out += format_double(c.imag());
    out += " : ";
    out += std::to_string(m.alpha[0]) + ' ' + std::to_string(m.alpha[1]) + ' ' +
           std::to_string(m.beta[0]) + ' ' + std::to_string(m.beta[1]) + ' ' +
           std::to_string(m.eps) + ' ' + std::to_string(m.hbar);
    out += '\n';
  }
  return out;
}

Series parse_series(const std::string& text) {
  Series s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re, im;
    char colon;
    Monomial m;
    if (!(ls >> re >> im >> colon >> m.alpha[0] >> m.alpha[1] >> m.beta[0] >>
          m.beta[1] >> m.eps >> m.hbar) ||
        colon != ':')
      throw std::invalid_argument("malformed series line: " + line);
    s.add_term(m, {re, im});
  }
  return s;
}

}  // namespace fermispec
