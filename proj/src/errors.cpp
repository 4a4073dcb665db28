#include "kissbound/errors.hpp"

#include <sstream>

namespace kissbound {

OverlapError::OverlapError(std::size_t first, std::size_t second, double penetration)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "balls " << first << " and " << second << " overlap (penetration depth "
            << penetration << ")";
        return msg.str();
      }()),
      first_(first),
      second_(second),
      penetration_(penetration) {}

}  // namespace kissbound
