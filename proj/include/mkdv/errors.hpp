#pragma once

#include <stdexcept>
#include <string>

namespace mkdv {

struct OrderingViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonRealLambda : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Derivative formulas with 1/K factors lose meaning once Ktilde ~ 0;
// callers have to switch to the branch chart instead.
struct NearBranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CollisionSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TripleCollision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExpansionDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field(field) {}
    std::string field;
};

} // namespace mkdv
