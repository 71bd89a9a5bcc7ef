#pragma once

#include <string>
#include <vector>

namespace eegclass::cli {

// Exit codes: 0 ok, 1 validation error, 2 runtime error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace eegclass::cli
