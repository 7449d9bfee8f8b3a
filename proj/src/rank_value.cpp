#include "cycrank/rank_value.hpp"

#include <algorithm>

#include "cycrank/arith.hpp"

namespace cycrank {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::UnconditionalZero:
            return "UNCONDITIONAL_ZERO";
        case Provenance::UnconditionalPositive:
            return "UNCONDITIONAL_POSITIVE";
        case Provenance::BsdConditional:
            return "BSD_CONDITIONAL";
        case Provenance::Unknown:
            return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::string tag(Provenance p) {
    switch (p) {
        case Provenance::BsdConditional:
            return "(BSD)";
        case Provenance::Unknown:
            return "(unknown)";
        default:
            return "";
    }
}

Provenance weakest(Provenance a, Provenance b) {
    const auto w = std::max(a, b);
    if (w == Provenance::UnconditionalZero && a != b) return Provenance::UnconditionalPositive;
    return w;
}

RankValue assign_rank(const NewformOrbit& orbit, bool bsd) {
    RankValue r;
    if (!orbit.analytic_rank) return r;
    const int a = *orbit.analytic_rank;
    if (a == 0) {
        r.provenance = Provenance::UnconditionalZero;
    } else if (a == 1 && orbit.dimension == 1) {
        r = {1, 1, Provenance::UnconditionalPositive};
    } else if (bsd) {
        r = {a, checked_mul(a, orbit.dimension), Provenance::BsdConditional};
    }
    return r;
}

void RankTotal::add(std::int64_t amount, Provenance p) {
    if (p == Provenance::Unknown) {
        provenance = Provenance::Unknown;
        return;
    }
    if (amount == 0) return;
    value = checked_add(value, amount);
    provenance = provenance == Provenance::UnconditionalZero
                     ? (p == Provenance::UnconditionalZero ? Provenance::UnconditionalPositive : p)
                     : weakest(provenance, p);
}

}  // namespace cycrank
