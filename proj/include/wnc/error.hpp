#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wnc {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed operation tables or a construction whose result is not a ring.
class construction_error : public error {
public:
    using error::error;
};

/// The construction would exceed the configured element budget.
class capacity_error : public error {
public:
    using error::error;
};

/// Misuse of the API: out-of-range element, elements or subsets of a different ring.
class usage_error : public error {
public:
    using error::error;
};

class invalid_module : public error {
public:
    using error::error;
};

class invalid_idempotent : public error {
public:
    using error::error;
};

class invalid_endomorphism : public error {
public:
    using error::error;
};

class invalid_ideal : public error {
public:
    using error::error;
};

/// A prescribed idempotent pool S that is not contained in Idem(R).
class invalid_subset : public error {
public:
    using error::error;
};

class syntax_error : public error {
public:
    syntax_error(const std::string& what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace wnc
