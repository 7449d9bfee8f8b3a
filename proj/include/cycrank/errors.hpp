#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cycrank {

/// Snapshot does not cover a newform space a computation needs.
class CoverageError : public std::runtime_error {
public:
    CoverageError(const std::string& what, long long required_level)
        : std::runtime_error(what), required_level_(required_level) {}
    long long required_level() const noexcept { return required_level_; }

private:
    long long required_level_;
};

/// A twist record the engine needs is missing from the snapshot.
class DataGapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Snapshot file failed checksum, version or schema validation.
class SnapshotFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Remote source returned something we cannot use. Retriable errors keep a
/// journal of pages already fetched.
class IngestError : public std::runtime_error {
public:
    IngestError(const std::string& what, bool retriable)
        : std::runtime_error(what), retriable_(retriable) {}
    bool retriable() const noexcept { return retriable_; }

private:
    bool retriable_;
};

}  // namespace cycrank
