#include "cycrank/twist.hpp"

#include <map>
#include <set>

#include "cycrank/arith.hpp"
#include "cycrank/decomposition.hpp"
#include "cycrank/errors.hpp"

namespace cycrank {

std::int64_t twist_level_bound(std::int64_t N, std::int64_t N_prime, std::int64_t M) {
    if (N < 1 || N_prime < 1 || M < 1) throw std::invalid_argument("twist_level_bound: arguments must be positive");
    return lcm(lcm(N, checked_mul(N_prime, M)), checked_mul(M, M));
}

std::optional<std::string> TwistImage::orbit() const {
    if (!embedding) return std::nullopt;
    return embedding->orbit;
}

TwistImage act(const EmbeddingLabel& embedding, const DirichletCharacter& chi, const Snapshot& snapshot) {
    if (chi.is_principal()) return {embedding, parse_newform_label(embedding.orbit).level};
    const std::string source = embedding.str();
    const TwistRecord* rec = snapshot.find_twist(source, chi.label());
    if (!rec) throw DataGapError("no twist record for " + source + " by " + chi.label());
    TwistImage image;
    image.level = rec->target_level;
    if (rec->target) image.embedding = parse_embedding_label(*rec->target);
    return image;
}

TwistImage act(const NewformOrbit& orbit, const DirichletCharacter& chi, const Snapshot& snapshot) {
    return act(orbit.representative(), chi, snapshot);
}

ActionReport verify_action(std::int64_t M, std::int64_t N, const Snapshot& snapshot) {
    const NFSet nf = nf_set(M, N, snapshot);
    const CharacterGroup group(M);
    const auto& chars = group.elements();
    const std::int64_t L = nf.level();

    ActionReport report;
    report.M = M;
    report.N = N;
    report.characters = chars.size();

    std::map<std::string, const NewformOrbit*> source_orbit;
    std::vector<EmbeddingLabel> embeddings;
    for (const auto& o : nf.orbits)
        for (auto& e : o.embeddings()) {
            source_orbit[e.str()] = &o;
            embeddings.push_back(std::move(e));
        }
    report.embeddings = embeddings.size();

    std::map<std::int64_t, std::size_t> char_slot;
    for (std::size_t i = 0; i < chars.size(); ++i) char_slot[chars[i].conrey_index()] = i;

    // table[e][chi]: image, or empty after a gap
    std::map<std::string, std::vector<std::optional<TwistImage>>> table;
    for (const auto& e : embeddings) {
        auto& row = table[e.str()];
        for (const auto& chi : chars) {
            try {
                row.push_back(act(e, chi, snapshot));
                ++report.lookups;
            } catch (const DataGapError& err) {
                row.emplace_back();
                report.violations.push_back({"gap", e.str(), chi.label(), err.what()});
            }
        }
    }

    for (const auto& e : embeddings) {
        const NewformOrbit& src = *source_orbit.at(e.str());
        const std::int64_t bound = twist_level_bound(src.level, src.char_conductor, M);
        const auto& row = table.at(e.str());
        for (std::size_t i = 0; i < chars.size(); ++i) {
            if (!row[i]) continue;
            const TwistImage& t = *row[i];
            const std::string who = chars[i].label();
            if (bound % t.level != 0)
                report.violations.push_back(
                    {"level", e.str(), who, std::to_string(t.level) + " does not divide " + std::to_string(bound)});
            if (t.external() || !source_orbit.count(t.embedding->str())) {
                report.violations.push_back({"closure", e.str(), who,
                                             t.external() ? "target outside snapshot at level " +
                                                                std::to_string(t.level)
                                                          : t.embedding->str() + " not in NF"});
                continue;
            }
            if (L % t.level != 0 || parse_newform_label(t.embedding->orbit).level != t.level)
                report.violations.push_back({"level", e.str(), who, "inconsistent target level"});
        }
    }

    for (std::size_t i = 0; i < chars.size(); ++i) {
        std::map<std::string, std::string> seen;
        for (const auto& e : embeddings) {
            const auto& t = table.at(e.str())[i];
            if (!t || t->external()) continue;
            auto [it, fresh] = seen.emplace(t->embedding->str(), e.str());
            if (!fresh)
                report.violations.push_back(
                    {"bijection", e.str(), chars[i].label(), "shares target " + it->first + " with " + it->second});
        }
    }

    for (const auto& e : embeddings) {
        const auto& row = table.at(e.str());
        for (std::size_t i = 0; i < chars.size(); ++i) {
            if (!row[i] || row[i]->external()) continue;
            auto mid = table.find(row[i]->embedding->str());
            if (mid == table.end()) continue;
            for (std::size_t j = 0; j < chars.size(); ++j) {
                const auto& via = mid->second[j];
                const auto& direct = row[char_slot.at(product(chars[i], chars[j]).conrey_index())];
                if (!via || !direct) continue;
                if (!(*via == *direct))
                    report.violations.push_back({"composition", e.str(), chars[i].label() + "*" + chars[j].label(),
                                                 "stepwise and direct twists differ"});
            }
        }
    }

    for (const auto& o : nf.orbits) {
        for (std::size_t i = 0; i < chars.size(); ++i) {
            std::set<std::string> targets;
            for (const auto& e : o.embeddings()) {
                const auto& t = table.at(e.str())[i];
                if (t && !t->external()) targets.insert(t->embedding->orbit);
            }
            if (targets.size() > 1) report.split_orbits.emplace_back(o.label, chars[i].label());
        }
    }
    return report;
}

RankValue cyclotomic_rank_of_orbit(const NewformOrbit& orbit, std::int64_t M, const Snapshot& snapshot, bool bsd) {
    if (M < 1) throw std::invalid_argument("M must be a positive integer");
    RankTotal sum;
    const CharacterGroup group(M);
    for (const auto& chi : group.elements()) {
        const TwistImage t = act(orbit, chi, snapshot);
        const NewformOrbit* target = t.external() ? nullptr : snapshot.find_orbit(*t.orbit());
        if (!target) {
            sum.add(0, Provenance::Unknown);
            continue;
        }
        const RankValue r = assign_rank(*target, bsd);
        sum.add(r.k_dimension, r.provenance);
    }
    RankValue out;
    out.provenance = sum.provenance;
    if (sum.known()) {
        out.k_dimension = sum.value;
        out.absolute_rank = checked_mul(sum.value, orbit.dimension);
    }
    return out;
}

}  // namespace cycrank
