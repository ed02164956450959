#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace javelin {

/// Failure of a numerical procedure (no root bracket, trajectory blow-up at
/// the requested start, wrong rigid-mode count, ...).  Carries a short
/// machine-readable code and a JSON record so callers can report the failure
/// without string-parsing the human message.
class numerical_error : public std::runtime_error {
public:
    numerical_error(std::string code, const std::string& what, std::string record_json)
        : std::runtime_error(what), code_(std::move(code)), record_json_(std::move(record_json)) {}

    /// Stable identifier, e.g. "no-bracket", "blow-up-at-guess", "rigid-mode-count".
    const std::string& code() const noexcept { return code_; }

    /// JSON object describing the failure (always at least {"error": code}).
    const std::string& record_json() const noexcept { return record_json_; }

private:
    std::string code_;
    std::string record_json_;
};

/// Convenience builder: {"error": <code>, "detail": <what>} with no external
/// JSON dependency in public headers.
std::string make_error_record(const std::string& code, const std::string& detail);

}  // namespace javelin
