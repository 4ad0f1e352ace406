#pragma once

#include <stdexcept>
#include <string>

namespace ra {

// bad argument: negative time, u above u_max, mu <= 0 ...
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// a requested point cannot be reached at the requested time
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the attacker can take the target, it should go straight for it
struct AttackerWins : std::runtime_error {
    explicit AttackerWins(const std::string& why = "target lies inside the attacker dominance region") : std::runtime_error(why) {}
};

// no usable capture point: L is empty or none of it bounds the ADR
struct NoCapture : std::runtime_error {
    explicit NoCapture(const std::string& why = "boundary L is empty") : std::runtime_error(why) {}
};

// reach-time gradient does not exist at the queried point
struct Indeterminate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ra
