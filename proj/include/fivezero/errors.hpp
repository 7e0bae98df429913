#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fivezero {

/// Base error carrying a short machine-checkable name ("NotPrime", ...)
/// in addition to the human-readable message.
class Error : public std::runtime_error {
   public:
    Error(std::string name, const std::string& msg) : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

   private:
    std::string name_;
};

/// Invalid inputs or refused budgets. The CLI maps these to exit code 2.
class ParameterError : public Error {
   public:
    using Error::Error;
};

/// A mathematical identity that must hold failed. CLI exit code 1.
class CheckError : public Error {
   public:
    using Error::Error;
};

}  // namespace fivezero
