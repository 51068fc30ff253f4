#pragma once

#include <filesystem>
#include <random>
#include <string>

#include <doctest.h>

#include "scrollmat/errors.hpp"

// Self-cleaning scratch directory for tests that touch the filesystem.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{0x5eedULL};
        path = std::filesystem::temp_directory_path() /
               ("scrollmat-test-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

// Expect `expr` to throw scrollmat::Error with the given kind.
#define CHECK_ERROR_KIND(expr, kind_)                            \
    do {                                                         \
        try {                                                    \
            (void)(expr);                                        \
            FAIL_CHECK("expected an error, none thrown");        \
        } catch (const scrollmat::Error& e) {                    \
            CHECK(e.kind() == (kind_));                          \
        }                                                        \
    } while (0)

// Same, but also require a substring of the message.
#define CHECK_ERROR_MSG(expr, kind_, substr_)                            \
    do {                                                                 \
        try {                                                            \
            (void)(expr);                                                \
            FAIL_CHECK("expected an error, none thrown");                \
        } catch (const scrollmat::Error& e) {                            \
            CHECK(e.kind() == (kind_));                                  \
            CHECK(std::string(e.what()).find(substr_) != std::string::npos); \
        }                                                                \
    } while (0)
