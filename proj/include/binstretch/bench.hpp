#pragma once

#include "binstretch/core.hpp"

#include <span>
#include <string_view>

namespace binstretch {

/// One row of the published timing table: the game, whether t/g was a valid lower
/// bound there, and the reported single-thread time.
struct BenchCase
{
    GameParams params;
    bool expected_proven;
    std::string_view reference_time;
};

/// "paper-small" or "paper-full". Throws std::invalid_argument for other names.
std::span<const BenchCase> bench_suite(std::string_view name);

} // namespace binstretch
