#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hltasep::cli {

// Exit codes: 0 success, 1 usage or domain error, 2 tolerance failure (verify-all).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace hltasep::cli
