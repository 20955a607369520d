#pragma once

#include <stdexcept>
#include <string>

namespace hunkbench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Conflict-marker lines are unbalanced, out of order or nested.
class MalformedMarkers : public Error {
public:
    using Error::Error;
};

/// Document content contains a line that would be read back as a marker.
class MarkerInContent : public Error {
public:
    using Error::Error;
};

class UnsupportedLanguage : public Error {
public:
    using Error::Error;
};

class GroupTooSmall : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class NotARepository : public Error {
public:
    using Error::Error;
};

/// The version-control executable could not be started.
class ToolUnavailable : public Error {
public:
    using Error::Error;
};

/// A version-control command ran but reported failure.
class ToolFailure : public Error {
public:
    using Error::Error;
};

class MissingBlob : public Error {
public:
    using Error::Error;
};

class EndpointError : public Error {
public:
    using Error::Error;
};

/// A persisted record could not be decoded or failed validation.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace hunkbench
