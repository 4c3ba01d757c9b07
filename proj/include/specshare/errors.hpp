#pragma once

#include <stdexcept>
#include <string>

namespace specshare {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Allocation with i_l <= 0 where transport ratios are required.
class degenerate_allocation_error : public error {
public:
    using error::error;
};

/// Money-flow specification inconsistent with the allocation
/// (reservation fee marked not-significant while i_f > 0).
class flow_spec_error : public error {
public:
    using error::error;
};

/// Operation called outside the preference regime it covers
/// (interior formulas need |delta| < 1, corner formulas need |delta| >= 1).
class regime_error : public error {
public:
    using error::error;
};

/// Corner price selected outside the admissible interval.
class invalid_selection_error : public error {
public:
    using error::error;
};

/// Outside-option stage-2 formulas evaluated where the marginal user
/// would sit at a corner (i_l >= 4/b).
class non_interior_error : public error {
public:
    using error::error;
};

/// Violated operation precondition (e.g. s_market <= gamma in the
/// corner disagreement branch).
class precondition_error : public error {
public:
    using error::error;
};

/// Numerical search failed to converge at the requested resolution.
class resolution_error : public error {
public:
    using error::error;
};

/// Search region empty or demand levels negative where a solution was required.
class infeasible_error : public error {
public:
    using error::error;
};

/// Malformed parameter file or sweep specification.
class config_error : public error {
public:
    using error::error;
};

} // namespace specshare
