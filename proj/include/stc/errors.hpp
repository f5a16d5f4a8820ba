#pragma once

#include <stdexcept>
#include <string>

namespace stc {

// Input is readable but the requested computation cannot apply to it
// (disconnected graph, missing connectivity, failed generation budget, ...).
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct connectivity_error : infeasible_error {
    using infeasible_error::infeasible_error;
};

// Complete graphs have no vertex cut.
struct no_cut_error : infeasible_error {
    using infeasible_error::infeasible_error;
};

struct generation_error : infeasible_error {
    using infeasible_error::infeasible_error;
};

// Raised by grow_tree when Phase 1 has no applicable action; the message
// names the stuck state.
struct expanding_violation_error : infeasible_error {
    using infeasible_error::infeasible_error;
};

struct disconnected_error : infeasible_error {
    using infeasible_error::infeasible_error;
};

// A size cap was exceeded (oracle called beyond its configured limit).
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A contract the implementation is supposed to uphold was violated; seeing
// one of these means a bug, not bad input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace stc
