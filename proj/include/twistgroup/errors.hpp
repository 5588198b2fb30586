#pragma once

#include <stdexcept>
#include <string>

namespace twistgroup {

enum class errc {
    ring_mismatch,
    dim_mismatch,
    non_unit,
    singular,
    not_a_field,
    no_tits_endo,
    not_a_pth_power,
    wrong_characteristic,
    not_orthogonal,
    not_symplectic,
    not_in_scliff,
    not_in_lie_algebra,
    param_not_in_subring,
    element_not_in_group,
    limit_exceeded,
    parse_error,
    bad_argument,
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::ring_mismatch: return "ring_mismatch";
    case errc::dim_mismatch: return "dim_mismatch";
    case errc::non_unit: return "non_unit";
    case errc::singular: return "singular";
    case errc::not_a_field: return "not_a_field";
    case errc::no_tits_endo: return "no_tits_endo";
    case errc::not_a_pth_power: return "not_a_pth_power";
    case errc::wrong_characteristic: return "wrong_characteristic";
    case errc::not_orthogonal: return "not_orthogonal";
    case errc::not_symplectic: return "not_symplectic";
    case errc::not_in_scliff: return "not_in_scliff";
    case errc::not_in_lie_algebra: return "not_in_lie_algebra";
    case errc::param_not_in_subring: return "param_not_in_subring";
    case errc::element_not_in_group: return "element_not_in_group";
    case errc::limit_exceeded: return "limit_exceeded";
    case errc::parse_error: return "parse_error";
    case errc::bad_argument: return "bad_argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg)
{
    throw Error(code, msg);
}

/// Thrown by bfs_closure when the exploration cap is hit; carries the
/// number of distinct elements found before giving up.
class LimitError : public Error {
public:
    LimitError(std::size_t found, std::size_t limit)
        : Error(errc::limit_exceeded,
                "found " + std::to_string(found) + " elements, limit " + std::to_string(limit)),
          found_(found)
    {
    }

    std::size_t found() const noexcept { return found_; }

private:
    std::size_t found_;
};

} // namespace twistgroup
