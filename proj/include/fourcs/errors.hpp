#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fourcs {

enum class Errc {
    not_prime,
    limit_exceeded,
    zero_argument,
    bad_order,
    no_witness,
    not_admissible,
    gdd_unavailable,
    unsupported,
    budget_exhausted,
    infeasible,
    parse_error,
    validation_failed,
    duplicate_vertex,
    duplicate_point,
    ingredient_mismatch,
    wrong_type,
    not_edge_disjoint,
    precondition_violated,
    bad_cprime,
    bad_argument,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::not_prime: return "NotPrime";
        case Errc::limit_exceeded: return "LimitExceeded";
        case Errc::zero_argument: return "ZeroArgument";
        case Errc::bad_order: return "BadOrder";
        case Errc::no_witness: return "NoWitness";
        case Errc::not_admissible: return "NotAdmissible";
        case Errc::gdd_unavailable: return "GddUnavailable";
        case Errc::unsupported: return "Unsupported";
        case Errc::budget_exhausted: return "BudgetExhausted";
        case Errc::infeasible: return "Infeasible";
        case Errc::parse_error: return "ParseError";
        case Errc::validation_failed: return "ValidationFailed";
        case Errc::duplicate_vertex: return "DuplicateVertex";
        case Errc::duplicate_point: return "DuplicatePoint";
        case Errc::ingredient_mismatch: return "IngredientMismatch";
        case Errc::wrong_type: return "WrongType";
        case Errc::not_edge_disjoint: return "NotEdgeDisjoint";
        case Errc::precondition_violated: return "PreconditionViolated";
        case Errc::bad_cprime: return "BadCPrime";
        case Errc::bad_argument: return "BadArgument";
    }
    return "UnknownError";
}

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace fourcs
