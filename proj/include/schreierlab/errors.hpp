#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace schreierlab {

// Machine-readable error kinds; the CLI maps these to exit code 2 with a
// JSON error record on stderr.
enum class errc {
    malformed_input,
    out_of_window,
    boundary_escape,
    capacity,
    precondition,
    mismatch,
    strategy_unavailable,
    unsupported_input,
    overflow,
    io
};

inline const char* errc_name(errc k) {
    switch (k) {
    case errc::malformed_input: return "malformed-input";
    case errc::out_of_window: return "out-of-window";
    case errc::boundary_escape: return "boundary-escape";
    case errc::capacity: return "capacity";
    case errc::precondition: return "precondition";
    case errc::mismatch: return "mismatch";
    case errc::strategy_unavailable: return "strategy-unavailable";
    case errc::unsupported_input: return "unsupported-input";
    case errc::overflow: return "overflow";
    case errc::io: return "io";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

// Raised when a word evaluation walks a point out of the declared window.
// Carries the already-applied suffix of the word so callers can report or
// skip the offending point.
class boundary_escape : public error {
public:
    boundary_escape(std::int64_t start, std::int64_t last, const std::string& applied_prefix)
        : error(errc::boundary_escape,
                "orbit of " + std::to_string(start) + " leaves window after \"" + applied_prefix +
                    "\" (reached " + std::to_string(last) + ")"),
          start_point(start),
          last_point(last),
          prefix(applied_prefix) {}

    std::int64_t start_point;
    std::int64_t last_point;
    std::string prefix;
};

} // namespace schreierlab
