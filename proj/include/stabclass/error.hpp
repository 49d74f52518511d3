#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stabclass {

// Domain failure with a stable machine-readable code alongside the human
// message.  Codes are part of the external interface (the CLI forwards them
// verbatim in its error JSON), so they never change spelling:
//
//   invalid-argument            mismatched or malformed operands
//   parity-violation            characteristic/evenness constraint broken
//   boundary-not-standard-sphere   divisibility hypothesis on alpha*beta fails
//   factorial-divisibility      (2k)! does not divide 2ab
//   not-characteristic-square   spin-c square not divisible by 8
//   hypothesis-violation        input outside a theorem's stated range
//   factorization-incomplete    effort bound hit before a full factorization
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& message) {
    throw Error(code, message);
}

} // namespace stabclass
