#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skq {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionCap : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  NotCoprime(long long a, long long b, long long gcd)
      : Error("arguments " + std::to_string(a) + " and " + std::to_string(b) +
              " are not coprime (gcd=" + std::to_string(gcd) + ")"),
        gcd_(gcd) {}

  long long gcd() const noexcept { return gcd_; }

 private:
  long long gcd_;
};

class PeriodMismatch : public Error {
 public:
  using Error::Error;
};

class EvenN : public Error {
 public:
  using Error::Error;
};

class NotProductState : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIndex : public ParseError {
 public:
  DuplicateIndex(std::size_t line, long long index)
      : ParseError(line, "duplicate index " + std::to_string(index)) {}
};

class MissingHeader : public ParseError {
 public:
  MissingHeader(std::size_t line, const std::string& key)
      : ParseError(line, "missing header '" + key + "'") {}
};

}  // namespace skq
