#pragma once

#include <stdexcept>
#include <string>

namespace kgrid {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested bounds do not fit the cell-code word.
struct SpaceTooLarge : Error {
    using Error::Error;
};

/// A digital coordinate left its admissible range [0, coord_max].
struct CoordOutOfRange : Error {
    using Error::Error;
};

/// A surfel-only operation was applied to a cell that is not a surfel.
struct NotASurfel : Error {
    using Error::Error;
};

/// A cell was offered to a set whose family does not admit its topology.
struct NotInFamily : Error {
    using Error::Error;
};

/// Two containers (or a container and an argument) disagree on space or family.
struct FamilyMismatch : Error {
    using Error::Error;
};

/// A merge inserted a cell with the orientation it already holds.
struct DuplicateOrientation : Error {
    using Error::Error;
};

/// An object reaches the image border where boundary cells cannot be coded.
struct ObjectTouchesBorder : Error {
    using Error::Error;
};

/// The queried surfel is not a boundary element of the object.
struct NotABel : Error {
    using Error::Error;
};

/// A spel expected inside the object is not a member.
struct NotInObject : Error {
    using Error::Error;
};

/// The requested ball does not keep a one-spel margin from the border.
struct BallTouchesBorder : Error {
    using Error::Error;
};

/// An operation received an empty object where a nonempty one is required.
struct EmptyObject : Error {
    using Error::Error;
};

/// A scan box lies (partly) outside the image or is inverted.
struct BoxOutOfBounds : Error {
    using Error::Error;
};

/// An export/import routine was used with an unsupported dimension.
struct WrongDimension : Error {
    using Error::Error;
};

/// A raw sample buffer disagrees with the announced extent.
struct SizeMismatch : Error {
    using Error::Error;
};

/// A serialized stream does not start with the expected magic token.
struct BadMagic : Error {
    using Error::Error;
};

/// A serialized header is malformed or inconsistent with the payload.
struct HeaderMismatch : Error {
    using Error::Error;
};

/// A serialized payload ends before the header-implied length.
struct TruncatedPayload : Error {
    using Error::Error;
};

}  // namespace kgrid
