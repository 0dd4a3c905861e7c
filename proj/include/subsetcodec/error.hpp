#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subsetcodec {

enum class ErrorKind {
    window,                      // index outside [0, horizon)
    parameter,                   // argument outside its documented domain
    source_exhausted,            // message too short for the requested encoding
    insufficient_sample,         // sample carries no decodable element
    invalid_sample,              // sample elements disagree
    inconsistent_sample,         // both 2n and 2n+1 present in an even/odd sample
    invalid_threshold,           // threshold sequence violates its scheme constraints
    threshold_search_exhausted,  // no threshold found below the search limit
    horizon,                     // construction does not fit the window
    invalid_partition,
    precondition,
    budget,                      // enumeration would exceed the declared budget
    io,
    format,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace subsetcodec
