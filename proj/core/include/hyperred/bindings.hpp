#ifndef HYPERRED_BINDINGS_HPP
#define HYPERRED_BINDINGS_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperred {

/// Named parameter values, e.g. {"a": 0.7, "b": 1.9}. Ordered so that
/// iteration (and therefore every report) is deterministic.
using Bindings = std::map<std::string, double, std::less<>>;

/// A binding is missing or violates an identity's validity constraints.
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline double slot(const Bindings& bindings, std::string_view name) {
  auto it = bindings.find(name);
  if (it == bindings.end()) {
    throw ConstraintError("missing parameter binding '" + std::string(name) + "'");
  }
  return it->second;
}

}  // namespace hyperred

#endif  // HYPERRED_BINDINGS_HPP
