#pragma once

#include <stdexcept>
#include <string>

namespace tropbn {

// A length ratio (or a step-rule collision that only a bad ratio can cause)
// violates the genericity requirement on the chain.
class GenericityViolation : public std::runtime_error {
  public:
    explicit GenericityViolation(const std::string& what) : std::runtime_error(what) {}
};

// A translate tuple fails the transversality/distinctness requirements of a
// stable intersection.
class DegenerateIntersection : public std::runtime_error {
  public:
    explicit DegenerateIntersection(const std::string& what) : std::runtime_error(what) {}
};

// Brute-force enumeration in the discrete oracle would exceed its configured
// budget.
class ComplexityCapExceeded : public std::runtime_error {
  public:
    explicit ComplexityCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tropbn
