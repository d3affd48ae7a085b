#ifndef FRACCFT_ERRORS_HPP
#define FRACCFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fraccft {

/// Operands live in algebras (or spaces) of different dimension.
class dimension_mismatch : public std::invalid_argument {
 public:
  explicit dimension_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A parameter falls outside the domain a routine supports.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// The requested evaluation route does not exist for these parameters
/// (odd dimension for a closed form, exceptional angle for an integral route, ...).
class unsupported : public std::logic_error {
 public:
  explicit unsupported(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fraccft

#endif  // FRACCFT_ERRORS_HPP
