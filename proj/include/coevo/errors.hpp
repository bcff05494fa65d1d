#pragma once

#include <stdexcept>
#include <string>

namespace coevo {

// Invalid scenario, roster, formation or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chromosome length does not match the parameter range table.
class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No enemy left to anchor an influence-map target on.
class UndefinedTargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coevo
