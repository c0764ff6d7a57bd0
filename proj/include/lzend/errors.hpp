#pragma once

#include <stdexcept>
#include <string>

namespace lzend {

// Input bytes are structurally not an archive (bad magic/version, trailing data).
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Archive contents violate the representation invariants (bad back-reference,
// truncated record, impossible copy window).
class corruption_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A generator could not meet its calibration window.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lzend
