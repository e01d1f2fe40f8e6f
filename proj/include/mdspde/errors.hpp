#pragma once

#include <stdexcept>
#include <string>

namespace mdspde {

// Invalid configuration (bad parameters, incompatible model/basis combinations).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mdspde
