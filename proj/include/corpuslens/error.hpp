// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace corpuslens {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Config,    // bad parameters, missing resource for a requested feature
  Resource,  // IO, parse and encoding failures on input files
  Numeric,   // non-convergence and singular systems that cannot be rescued
  Domain,    // argument outside an operation's domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::Resource, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

/// A value that is mathematically undefined for the given input
/// (zero-vector cosine, Jaccard of two empty documents).
class UndefinedError : public DomainError {
 public:
  explicit UndefinedError(const std::string& what) : DomainError(what) {}
};

class EmptyDocumentError : public ResourceError {
 public:
  explicit EmptyDocumentError(const std::string& id)
      : ResourceError("document '" + id + "' is empty") {}
};

class EncodingError : public ResourceError {
 public:
  explicit EncodingError(std::size_t byte_offset)
      : ResourceError("invalid UTF-8 at byte offset " + std::to_string(byte_offset)),
        offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed line/row in an input file. `line` is 1-based.
class ParseError : public ResourceError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ResourceError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Collects non-fatal warnings. Operations that may warn take an optional
/// pointer; passing nullptr discards them.
class Diagnostics {
 public:
  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  bool empty() const noexcept { return warnings_.empty(); }
  void merge(const Diagnostics& other) {
    warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
  }

 private:
  std::vector<std::string> warnings_;
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag != nullptr) diag->warn(std::move(message));
}

}  // namespace corpuslens
