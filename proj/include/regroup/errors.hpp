#pragma once

#include <stdexcept>
#include <string>

namespace regroup {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
struct ParseError : Error {
    using Error::Error;
};

/// A value claimed to belong to a group does not.
struct MembershipError : Error {
    using Error::Error;
};

/// Two objects built over different group descriptors were mixed.
struct DescriptorMismatchError : Error {
    using Error::Error;
};

/// Constructor-time invariant violation (bad piece list, non-bijective
/// table, closure failure, ...).
struct InvariantError : Error {
    using Error::Error;
};

/// An operation's documented precondition does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// A map coincides with the identity on a whole piece or tail, so its
/// fixed-point set is not finite.
struct InfiniteFixedPointsError : Error {
    using Error::Error;
};

/// Shift transport requires a non-neutral shift constant.
struct NeutralShiftError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Input is outside the classes this library constructs for.
struct UnsupportedError : Error {
    using Error::Error;
};

/// A lazily grown map was queried outside the resolved window.
struct WindowResolutionError : Error {
    using Error::Error;
};

} // namespace regroup
