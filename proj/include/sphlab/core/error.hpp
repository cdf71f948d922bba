#pragma once

#include <stdexcept>
#include <string>

namespace sphlab {

enum class ErrorKind {
  parameter,   // argument outside its documented domain
  domain,      // evaluation point outside the admissible region
  index,       // spectral index invalid for the manifold
  precision,   // quadrature or sampling cannot resolve the request
  degenerate,  // zero input where a normalisation is required
  config,      // experiment configuration rejected
  blow_up,     // solver produced non-finite values
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::domain: return "domain";
    case ErrorKind::index: return "index";
    case ErrorKind::precision: return "precision";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::config: return "config";
    case ErrorKind::blow_up: return "blow-up";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

/// A computed value together with the under-resolution flag raised by
/// quadrature bookkeeping. Callers decide whether a flagged value is usable.
template <typename T>
struct Flagged {
  T value{};
  bool under_resolved = false;
};

}  // namespace sphlab
