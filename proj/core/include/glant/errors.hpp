// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glant {

// Root of every error thrown by the library. Subclasses only narrow the
// category; the message always carries the detail.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string &what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string &path() const noexcept { return path_; }

 private:
  std::string path_;
};

class InstabilityError : public Error {
 public:
  InstabilityError(long step, std::size_t cell, const std::string &what)
      : Error(what + " at step " + std::to_string(step) + ", cell " +
              std::to_string(cell)),
        step_(step),
        cell_(cell) {}

  long step() const noexcept { return step_; }
  std::size_t cell() const noexcept { return cell_; }

 private:
  long step_;
  std::size_t cell_;
};

class ExtractionError : public Error {
 public:
  using Error::Error;
};

class MetricsError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace glant
