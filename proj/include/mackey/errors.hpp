#pragma once

#include <stdexcept>
#include <string>

namespace mackey {

enum class errc {
    order_cap_exceeded,
    parent_mismatch,
    not_normal,
    shape_mismatch,
    diagram_error,
    compose_error,
    not_injective,
    not_surjective,
    unverified_functor,
    not_natural,
    not_torsion,
    cocone_failure,
    zigzag_mismatch,
    square_error,
    parse_error,
    axiom_error,
    internal,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace mackey
