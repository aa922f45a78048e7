#pragma once

#include <stdexcept>
#include <string>

namespace tracelift {

// Exact division by a zero field element.
struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in Q(sqrt2)") {}
};

// A divide_out / M / S precondition failed: the polynomial does not vanish
// to the requested order at the requested point.
struct InsufficientVanishing : std::domain_error {
    explicit InsufficientVanishing(const std::string& what) : std::domain_error(what) {}
};

// sup of b(t)/t^m on (0,1] is infinite for the requested m.
struct UnboundedWeight : std::domain_error {
    explicit UnboundedWeight(const std::string& what) : std::domain_error(what) {}
};

// Boundary data fails a vertex compatibility condition; the message names the
// vertex, edge and pipeline stage that detected it.
struct IncompatibleData : std::runtime_error {
    explicit IncompatibleData(const std::string& what) : std::runtime_error(what) {}
};

// (s, q) outside the admissible index set for the requested trace order.
struct InadmissibleIndex : std::invalid_argument {
    explicit InadmissibleIndex(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed scalar / polynomial / boundary-data text.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tracelift
