// caps.hpp -- resource guards and error types shared across the library.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gogauto {

// Thrown when user-supplied input (files, words, parameters) is malformed.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a configurable resource guard trips before an answer is known.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant fails; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Guards for every unbounded enumeration. Defaults are desk-scale generous.
struct Caps {
    std::size_t coset_rows = 1'000'000;   // coset/element enumeration limit
    std::size_t ball_elements = 5'000'000; // Cayley-ball BFS limit
    std::size_t enum_words = 5'000'000;   // language enumeration output limit
    std::size_t multiplier_states = 2'000'000;
    std::size_t departure_configs = 20'000'000;
    int departure_horizon = 0;            // 0 = choose automatically
};

} // namespace gogauto
