#pragma once

#include <stdexcept>
#include <string>

namespace topo {

// Exit-code classes for the CLI; each error category maps to one code.
enum class ErrorCode : int {
  Usage = 2,    // bad flags, bad config values
  Io = 3,       // missing files, malformed manifests or blobs
  Data = 4,     // invariant violations in loaded or constructed data
  Numeric = 5,  // undefined results (e.g. correlation with constant truths)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

inline Error usage_error(const std::string& msg) { return Error(ErrorCode::Usage, msg); }
inline Error io_error(const std::string& msg) { return Error(ErrorCode::Io, msg); }
inline Error data_error(const std::string& msg) { return Error(ErrorCode::Data, msg); }
inline Error numeric_error(const std::string& msg) { return Error(ErrorCode::Numeric, msg); }

}  // namespace topo
