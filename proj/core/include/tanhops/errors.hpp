#pragma once

#include <stdexcept>
#include <string>

namespace tanhops {

// Thrown when a moment order exceeds the supported range.
class OrderTooHigh : public std::invalid_argument {
 public:
  explicit OrderTooHigh(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a test function lacks the analytic derivative an operation needs.
class OrderUnavailable : public std::invalid_argument {
 public:
  explicit OrderUnavailable(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an evaluation point lies outside the operation's domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Thrown by rate fitting when fewer than three usable rows remain.
class InsufficientData : public std::invalid_argument {
 public:
  explicit InsufficientData(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace tanhops
