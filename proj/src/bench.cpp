#include "binstretch/bench.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace binstretch {

namespace {

constexpr std::array<BenchCase, 10> reference_cases{{
    {{3, 14, 19}, true, "<0.1s"},
    {{3, 22, 30}, false, "0.1s"},
    {{3, 40, 55}, false, "5s"},
    {{3, 41, 56}, false, "13s"},
    {{4, 14, 19}, true, "0.1s"},
    {{4, 22, 30}, false, "18s"},
    {{4, 25, 34}, false, "2min 24s"},
    {{6, 11, 15}, true, "14s"},
    {{7, 11, 15}, true, "1min 52s"},
    {{8, 11, 15}, true, "1h"},
}};

} // namespace

std::span<const BenchCase> bench_suite(std::string_view name)
{
    std::span<const BenchCase> all(reference_cases);
    if (name == "paper-small")
        return all.first(8);
    if (name == "paper-full")
        return all;
    throw std::invalid_argument("unknown bench suite \"" + std::string(name) + "\" (expected paper-small or paper-full)");
}

} // namespace binstretch
