#pragma once

#include <string>
#include <string_view>

#include "opfactor/comm_poly.hpp"
#include "opfactor/errors.hpp"
#include "opfactor/ore_poly.hpp"

namespace opfactor {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
/// factor := atom ('^' nat)?; atom := rat | gen | '(' expr ')' | '-' atom.
/// Generators are x1..xn and d1..dn (s1..sn in the shift algebra); "∂" is accepted for d.
OrePoly parse(std::string_view input, const AlgebraSpec& algebra);

/// Same grammar over a commutative ring whose generators are the names in vars.
CommPoly parse_comm(std::string_view input, const VarSet& vars);

/// Degree-lex terms (x1 > ... > xn > d1 > ... > dn), "*" between atoms, "^k" for k > 1.
std::string print_canonical(const OrePoly& p);

}  // namespace opfactor
