#ifndef PSALINK_ERRORS_HPP
#define PSALINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psalink {

/// Invalid configuration, detected before any computation starts.
/// The CLI maps this to exit code 2; anything else non-zero maps to 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psalink

#endif
