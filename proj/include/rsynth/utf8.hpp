#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsynth {

/// Raised on malformed UTF-8 input or on code points outside the scalar range.
class Utf8Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::u32string from_utf8(std::string_view bytes);
std::string to_utf8(std::u32string_view text);

}  // namespace rsynth
