#include "hltasep/io.hpp"

#include <charconv>

namespace hltasep {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace hltasep
