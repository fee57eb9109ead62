#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotgraph {

enum class ErrorCode {
  Input,          // unparseable or invalid user input
  Domain,         // argument outside the operation's domain
  Malformed,      // structurally invalid curve or map
  Unsupported,    // orientation-reversing or otherwise out of scope
  Inapplicable,   // route or bound does not apply to this input
  NonGeneric,     // tangency or overlapping segments
  Resolution,     // sampled image curve failed validation
  Divergence,     // iterate left the representable range
  Internal,
};

std::string_view to_string(ErrorCode code);

// Process exit status used by the command-line tool.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace rotgraph
