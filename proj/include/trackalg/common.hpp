#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackalg {

// Dense residue vector; component i lives in Z/d_i for the orders of the
// owning group.
using Elem = std::vector<int64_t>;
using Mat = std::vector<std::vector<int64_t>>;

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class RingMismatchError : public InputError {
public:
    explicit RingMismatchError(const std::string& msg) : InputError(msg) {}
};

class ComposabilityError : public std::runtime_error {
public:
    explicit ComposabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

class EnumerationLimitError : public std::runtime_error {
public:
    explicit EnumerationLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a construction's stated preconditions fail (torsion, generating
// graph, equivalence of restrictions, ...).
class RefusalError : public std::runtime_error {
public:
    explicit RefusalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int64_t checked_mul(int64_t a, int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw std::overflow_error("integer overflow in exact arithmetic");
    return static_cast<int64_t>(p);
}

inline int64_t checked_add(int64_t a, int64_t b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN)
        throw std::overflow_error("integer overflow in exact arithmetic");
    return static_cast<int64_t>(s);
}

inline int64_t mod_reduce(int64_t v, int64_t d) {
    if (d <= 0) throw std::invalid_argument("modulus must be positive");
    int64_t r = v % d;
    return r < 0 ? r + d : r;
}

std::string elem_to_string(const Elem& e);

} // namespace trackalg
