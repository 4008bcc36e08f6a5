#pragma once

#include <stdexcept>
#include <string>

namespace steiner_ecc {

// Distinct failure kinds so callers (and tests) can tell rejection reasons apart.
enum class errc {
    vertex_out_of_range,
    self_loop,
    duplicate_edge,
    wrong_edge_count,
    disconnected,
    not_a_path,
    empty_terminal_set,
    k_out_of_range,
    subset_cap_exceeded,
    invalid_site,
    invalid_parameters,
    parse_error,
};

class error : public std::runtime_error {
public:
    error(errc kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& message) {
    throw error(kind, message);
}

}  // namespace steiner_ecc
