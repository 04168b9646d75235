/**
 * @file cli.hpp
 * @brief Command-line entry point (refine, check, mutate, eval, generate).
 *
 * Exit codes: 0 success / all assertions pass, 1 assertion failure,
 * 2 parse error, 3 analysis error.
 */

#pragma once

#include <string>
#include <vector>

namespace qaref {

int runCli(const std::vector<std::string>& args);

} // namespace qaref
