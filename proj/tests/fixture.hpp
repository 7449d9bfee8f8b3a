#pragma once

// The shipped offline snapshot, loaded once per test binary.

#include "cycrank/snapshot.hpp"

namespace cycrank::testing {

inline const Snapshot& shipped() {
    static const Snapshot s = load_snapshot(CYCRANK_DATA_DIR "/snapshot.txt");
    return s;
}

}  // namespace cycrank::testing
