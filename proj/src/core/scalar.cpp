#include "lipext/core/scalar.hpp"

namespace lipext {

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace lipext
