#pragma once

#include <optional>

#include "doctest.h"
#include "sieveconst/error.hpp"

// kind of the sieveconst::Error thrown by fn, or nothing when it returns normally
template <class Fn>
std::optional<sieveconst::ErrorKind> error_kind(Fn&& fn)
{
    try {
        fn();
    } catch (const sieveconst::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

#define CHECK_ERROR_KIND(expr, expected) CHECK(error_kind([&] { (void)(expr); }) == std::optional(expected))
