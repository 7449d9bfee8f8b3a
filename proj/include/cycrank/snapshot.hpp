#pragma once

// Offline newform data set. The on-disk form is line oriented:
//
//   cycrank-snapshot <version>
//   meta {...}
//   space {...}      one per covered newspace, sorted by (level, char_index)
//   orbit {...}      one per newform orbit, sorted by (level, label)
//   twist {...}      one per twist record, sorted by (source, character)
//   sha256 <hex>
//
// Every JSON object is dumped with sorted keys and no whitespace, and the
// checksum covers every byte before the final line, so identical data always
// produces identical files.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cycrank/newform.hpp"

namespace cycrank {

inline constexpr const char* kSnapshotVersion = "1";

struct SnapshotMeta {
    std::string version = kSnapshotVersion;
    std::int64_t max_level = 0;
    std::string source;
    std::string retrieved;
    std::vector<std::string> notes;

    friend bool operator==(const SnapshotMeta&, const SnapshotMeta&) = default;
};

class Snapshot {
public:
    Snapshot() = default;
    Snapshot(SnapshotMeta meta, std::vector<NewspaceRecord> spaces, std::vector<NewformOrbit> orbits,
             std::vector<TwistRecord> twists);

    const SnapshotMeta& meta() const noexcept { return meta_; }
    std::int64_t max_level() const noexcept { return meta_.max_level; }
    const std::vector<NewspaceRecord>& spaces() const noexcept { return spaces_; }
    const std::vector<NewformOrbit>& orbits() const noexcept { return orbits_; }
    const std::vector<TwistRecord>& twists() const noexcept { return twists_; }

    const NewformOrbit* find_orbit(const std::string& label) const;
    const NewspaceRecord* find_space(std::int64_t level, std::int64_t char_index) const;
    const TwistRecord* find_twist(const std::string& source_embedding, const std::string& character) const;

    /// Canonical serialisation including the trailing checksum line.
    std::string serialize() const;
    /// SHA-256 of the canonical bytes (everything before the checksum line).
    std::string checksum() const;

    friend bool operator==(const Snapshot& a, const Snapshot& b) {
        return a.meta_ == b.meta_ && a.spaces_ == b.spaces_ && a.orbits_ == b.orbits_ && a.twists_ == b.twists_;
    }

private:
    std::string canonical_body() const;
    void index();

    SnapshotMeta meta_;
    std::vector<NewspaceRecord> spaces_;
    std::vector<NewformOrbit> orbits_;
    std::vector<TwistRecord> twists_;
    std::map<std::string, std::size_t> orbit_index_;
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> space_index_;
    std::map<std::pair<std::string, std::string>, std::size_t> twist_index_;
};

Snapshot parse_snapshot(const std::string& text);
Snapshot load_snapshot(const std::filesystem::path& path);
void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);

/// Orbits with level dividing `level_dividing` and character conductor
/// dividing `conductor_dividing`, in snapshot order.
std::vector<NewformOrbit> query(const Snapshot& snapshot, std::int64_t level_dividing, std::int64_t conductor_dividing);

}  // namespace cycrank
