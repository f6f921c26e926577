#include "kdon/lambda_poly.hpp"

#include <sstream>

namespace kdon {

std::string LambdaPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : t_) {
    std::string cs = c.str();
    if (!first) {
      if (!cs.empty() && cs[0] == '-') {
        os << " - ";
        cs = cs.substr(1);
      } else {
        os << " + ";
      }
    }
    first = false;
    if (d == 0) {
      os << cs;
    } else {
      if (cs == "1")
        ;
      else if (cs == "-1")
        os << "-";
      else
        os << cs << "*";
      os << "L";
      if (d != 1) os << "^" << d;
    }
  }
  return os.str();
}

}  // namespace kdon
