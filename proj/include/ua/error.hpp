#pragma once

#include <stdexcept>
#include <string>

namespace ua {

// Bad input: malformed documents, out-of-range elements, arity mismatches.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closure or enumeration exceeded its configured cap.
struct CapExceeded : std::runtime_error {
  std::string cap_name;
  CapExceeded(const std::string& name, std::size_t limit)
      : std::runtime_error("cap exceeded: " + name + " > " + std::to_string(limit)),
        cap_name(name) {}
};

// Two independent computations disagreed; always a bug in this library.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require_input(bool ok, const std::string& msg) {
  if (!ok) throw InputError(msg);
}

inline void require_pre(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

inline void require_internal(bool ok, const std::string& msg) {
  if (!ok) throw InternalError(msg);
}

}  // namespace ua
