// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_ERROR_HPP
#define SECRISK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace secrisk {

// Base for every error the library raises on bad domain input.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invariant violation on a whole document; carries one finding per problem.
class ValidationError : public DomainError {
 public:
  explicit ValidationError(std::vector<std::string> findings)
      : DomainError(join(findings)), findings_(std::move(findings)) {}

  const std::vector<std::string>& findings() const noexcept { return findings_; }

 private:
  static std::string join(const std::vector<std::string>& findings) {
    std::string out = "validation failed";
    for (const auto& f : findings) {
      out += "; ";
      out += f;
    }
    return out;
  }

  std::vector<std::string> findings_;
};

class NotFoundError : public DomainError {
 public:
  using DomainError::DomainError;
};

class VersionConflictError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace secrisk

#endif  // SECRISK_ERROR_HPP
