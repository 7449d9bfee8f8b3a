#pragma once

#include <cstdint>
#include <string>

#include "cycrank/newform.hpp"

namespace cycrank {

/// How a rank was obtained, strongest first. Kato gives vanishing rank from a
/// nonvanishing L-value; Kolyvagin gives rank one for an elliptic curve with a
/// simple zero; everything else needs BSD.
enum class Provenance { UnconditionalZero, UnconditionalPositive, BsdConditional, Unknown };

std::string to_string(Provenance p);

/// Short inline tag for reports: "", "(BSD)" or "(unknown)".
std::string tag(Provenance p);

/// Weaker of two provenances. The two unconditional kinds combine to
/// UnconditionalPositive.
Provenance weakest(Provenance a, Provenance b);

/// Rank of A_f(Q) for one orbit. k_dimension is dim over K_f of A_f(Q) (x) Q;
/// absolute_rank is that times [K_f : Q]. Both are meaningless when the
/// provenance is Unknown.
struct RankValue {
    std::int64_t k_dimension = 0;
    std::int64_t absolute_rank = 0;
    Provenance provenance = Provenance::Unknown;

    bool known() const noexcept { return provenance != Provenance::Unknown; }
    friend bool operator==(const RankValue&, const RankValue&) = default;
};

RankValue assign_rank(const NewformOrbit& orbit, bool bsd);

/// A sum of rank contributions. Zero contributions never weaken the result.
struct RankTotal {
    std::int64_t value = 0;
    Provenance provenance = Provenance::UnconditionalZero;

    bool known() const noexcept { return provenance != Provenance::Unknown; }
    void add(std::int64_t amount, Provenance p);
    void add(const RankTotal& other) { add(other.value, other.provenance); }
    friend bool operator==(const RankTotal&, const RankTotal&) = default;
};

}  // namespace cycrank
