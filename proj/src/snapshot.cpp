#include "cycrank/snapshot.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "cycrank/errors.hpp"
#include "json.hpp"

namespace cycrank {
namespace {

using nlohmann::json;

constexpr const char* kMagic = "cycrank-snapshot";

json to_json(const SnapshotMeta& m) {
    return json{{"max_level", m.max_level}, {"notes", m.notes}, {"retrieved", m.retrieved}, {"source", m.source}};
}

json to_json(const NewspaceRecord& s) {
    return json{{"level", s.level},         {"char_orbit", s.char_orbit}, {"char_index", s.char_index},
                {"char_conductor", s.char_conductor}, {"char_order", s.char_order}, {"cusp_dim", s.cusp_dim},
                {"new_dim", s.new_dim}};
}

json to_json(const NewformOrbit& o) {
    json j{{"label", o.label},
           {"level", o.level},
           {"weight", o.weight},
           {"char_conductor", o.char_conductor},
           {"char_label", o.char_label},
           {"char_order", o.char_order},
           {"conrey_indexes", o.conrey_indexes},
           {"dimension", o.dimension},
           {"source", o.source},
           {"retrieved", o.retrieved}};
    j["analytic_rank"] = o.analytic_rank ? json(*o.analytic_rank) : json(nullptr);
    if (o.atkin_lehner) {
        json al = json::array();
        for (const auto& s : *o.atkin_lehner) al.push_back({s.prime, s.sign});
        j["atkin_lehner"] = al;
    } else {
        j["atkin_lehner"] = nullptr;
    }
    return j;
}

json to_json(const TwistRecord& t) {
    return json{{"source", t.source},
                {"character", t.character},
                {"target", t.target ? json(*t.target) : json(nullptr)},
                {"target_level", t.target_level}};
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw SnapshotFormatError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw SnapshotFormatError(where + ": bad type for field '" + key + "'");
    }
}

SnapshotMeta meta_from(const json& j, const std::string& version) {
    SnapshotMeta m;
    m.version = version;
    m.max_level = field<std::int64_t>(j, "max_level", "meta");
    m.source = field<std::string>(j, "source", "meta");
    m.retrieved = field<std::string>(j, "retrieved", "meta");
    m.notes = field<std::vector<std::string>>(j, "notes", "meta");
    return m;
}

NewspaceRecord space_from(const json& j) {
    const std::string w = "space";
    return {field<std::int64_t>(j, "level", w),          field<std::string>(j, "char_orbit", w),
            field<std::int64_t>(j, "char_index", w),     field<std::int64_t>(j, "char_conductor", w),
            field<std::int64_t>(j, "char_order", w),     field<std::int64_t>(j, "cusp_dim", w),
            field<std::int64_t>(j, "new_dim", w)};
}

NewformOrbit orbit_from(const json& j) {
    NewformOrbit o;
    const std::string w = "orbit " + (j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "?");
    o.label = field<std::string>(j, "label", w);
    o.level = field<std::int64_t>(j, "level", w);
    o.weight = field<int>(j, "weight", w);
    o.char_conductor = field<std::int64_t>(j, "char_conductor", w);
    o.char_label = field<std::string>(j, "char_label", w);
    o.char_order = field<std::int64_t>(j, "char_order", w);
    o.conrey_indexes = field<std::vector<std::int64_t>>(j, "conrey_indexes", w);
    o.dimension = field<std::int64_t>(j, "dimension", w);
    o.source = field<std::string>(j, "source", w);
    o.retrieved = field<std::string>(j, "retrieved", w);
    if (!j.contains("analytic_rank")) throw SnapshotFormatError(w + ": missing field 'analytic_rank'");
    if (!j["analytic_rank"].is_null()) o.analytic_rank = field<int>(j, "analytic_rank", w);
    if (!j.contains("atkin_lehner")) throw SnapshotFormatError(w + ": missing field 'atkin_lehner'");
    if (!j["atkin_lehner"].is_null()) {
        std::vector<AtkinLehnerSign> signs;
        for (const auto& pair : j["atkin_lehner"]) {
            if (!pair.is_array() || pair.size() != 2) throw SnapshotFormatError(w + ": malformed atkin_lehner");
            signs.push_back({pair[0].get<std::int64_t>(), pair[1].get<int>()});
        }
        o.atkin_lehner = std::move(signs);
    }
    return o;
}

TwistRecord twist_from(const json& j) {
    TwistRecord t;
    t.source = field<std::string>(j, "source", "twist");
    t.character = field<std::string>(j, "character", "twist " + t.source);
    if (!j.contains("target")) throw SnapshotFormatError("twist " + t.source + ": missing field 'target'");
    if (!j["target"].is_null()) t.target = field<std::string>(j, "target", "twist " + t.source);
    t.target_level = field<std::int64_t>(j, "target_level", "twist " + t.source);
    return t;
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

bool orbit_less(const NewformOrbit& a, const NewformOrbit& b) {
    return parse_newform_label(a.label).sort_key() < parse_newform_label(b.label).sort_key();
}

void validate(const NewformOrbit& o) {
    const auto parsed = parse_newform_label(o.label);
    if (parsed.level != o.level || parsed.weight != o.weight)
        throw SnapshotFormatError("orbit " + o.label + ": label disagrees with level/weight");
    if (o.weight != 2) throw SnapshotFormatError("orbit " + o.label + ": weight must be 2");
    if (o.dimension < 1) throw SnapshotFormatError("orbit " + o.label + ": dimension must be positive");
    if (o.char_conductor < 1 || o.level % o.char_conductor != 0)
        throw SnapshotFormatError("orbit " + o.label + ": character conductor must divide the level");
    if (o.conrey_indexes.empty() || !std::is_sorted(o.conrey_indexes.begin(), o.conrey_indexes.end()))
        throw SnapshotFormatError("orbit " + o.label + ": conrey_indexes must be sorted and non-empty");
    if (o.dimension % static_cast<std::int64_t>(o.conrey_indexes.size()) != 0)
        throw SnapshotFormatError("orbit " + o.label + ": dimension not divisible by character orbit size");
}

}  // namespace

Snapshot::Snapshot(SnapshotMeta meta, std::vector<NewspaceRecord> spaces, std::vector<NewformOrbit> orbits,
                   std::vector<TwistRecord> twists)
    : meta_(std::move(meta)), spaces_(std::move(spaces)), orbits_(std::move(orbits)), twists_(std::move(twists)) {
    for (const auto& o : orbits_) validate(o);
    std::sort(spaces_.begin(), spaces_.end(), [](const auto& a, const auto& b) {
        return std::pair(a.level, a.char_index) < std::pair(b.level, b.char_index);
    });
    std::sort(orbits_.begin(), orbits_.end(), orbit_less);
    std::sort(twists_.begin(), twists_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.character) < std::tie(b.source, b.character);
    });
    index();
}

void Snapshot::index() {
    for (std::size_t i = 0; i < orbits_.size(); ++i) {
        if (!orbit_index_.emplace(orbits_[i].label, i).second)
            throw SnapshotFormatError("duplicate orbit " + orbits_[i].label);
    }
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
        if (!space_index_.emplace(std::pair(spaces_[i].level, spaces_[i].char_index), i).second)
            throw SnapshotFormatError("duplicate space at level " + std::to_string(spaces_[i].level));
    }
    for (std::size_t i = 0; i < twists_.size(); ++i) {
        if (!twist_index_.emplace(std::pair(twists_[i].source, twists_[i].character), i).second)
            throw SnapshotFormatError("duplicate twist " + twists_[i].source + " by " + twists_[i].character);
    }
}

const NewformOrbit* Snapshot::find_orbit(const std::string& label) const {
    auto it = orbit_index_.find(label);
    return it == orbit_index_.end() ? nullptr : &orbits_[it->second];
}

const NewspaceRecord* Snapshot::find_space(std::int64_t level, std::int64_t char_index) const {
    auto it = space_index_.find({level, char_index});
    return it == space_index_.end() ? nullptr : &spaces_[it->second];
}

const TwistRecord* Snapshot::find_twist(const std::string& source_embedding, const std::string& character) const {
    auto it = twist_index_.find({source_embedding, character});
    return it == twist_index_.end() ? nullptr : &twists_[it->second];
}

std::string Snapshot::canonical_body() const {
    std::ostringstream out;
    out << kMagic << ' ' << meta_.version << '\n';
    out << "meta " << dump(to_json(meta_)) << '\n';
    for (const auto& s : spaces_) out << "space " << dump(to_json(s)) << '\n';
    for (const auto& o : orbits_) out << "orbit " << dump(to_json(o)) << '\n';
    for (const auto& t : twists_) out << "twist " << dump(to_json(t)) << '\n';
    return out.str();
}

std::string Snapshot::checksum() const { return sha256_hex(canonical_body()); }

std::string Snapshot::serialize() const {
    std::string body = canonical_body();
    const std::string sum = sha256_hex(body);
    return body + "sha256 " + sum + "\n";
}

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

Snapshot parse_snapshot(const std::string& text) {
    const auto last_nl = text.rfind('\n', text.size() >= 2 ? text.size() - 2 : 0);
    if (text.empty() || text.back() != '\n' || last_nl == std::string::npos)
        throw SnapshotFormatError("snapshot truncated: no checksum line");
    const std::string body = text.substr(0, last_nl + 1);
    const std::string tail = text.substr(last_nl + 1, text.size() - last_nl - 2);
    if (tail.rfind("sha256 ", 0) != 0) throw SnapshotFormatError("snapshot truncated: no checksum line");
    if (tail.substr(7) != sha256_hex(body)) throw SnapshotFormatError("snapshot checksum mismatch");

    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    const std::string magic = std::string(kMagic) + " ";
    if (line.rfind(magic, 0) != 0) throw SnapshotFormatError("not a snapshot file");
    const std::string version = line.substr(magic.size());
    if (version != kSnapshotVersion)
        throw SnapshotFormatError("unsupported snapshot version " + version + " (expected " + kSnapshotVersion + ")");

    std::optional<SnapshotMeta> meta;
    std::vector<NewspaceRecord> spaces;
    std::vector<NewformOrbit> orbits;
    std::vector<TwistRecord> twists;
    while (std::getline(in, line)) {
        const auto sp = line.find(' ');
        if (sp == std::string::npos) throw SnapshotFormatError("malformed line: " + line);
        const std::string kind = line.substr(0, sp);
        json j;
        try {
            j = json::parse(line.substr(sp + 1));
        } catch (const json::parse_error& e) {
            throw SnapshotFormatError("bad JSON in " + kind + " record: " + e.what());
        }
        if (kind == "meta") {
            meta = meta_from(j, version);
        } else if (kind == "space") {
            spaces.push_back(space_from(j));
        } else if (kind == "orbit") {
            orbits.push_back(orbit_from(j));
        } else if (kind == "twist") {
            twists.push_back(twist_from(j));
        } else {
            throw SnapshotFormatError("unknown record kind " + kind);
        }
    }
    if (!meta) throw SnapshotFormatError("snapshot has no meta record");
    return Snapshot(std::move(*meta), std::move(spaces), std::move(orbits), std::move(twists));
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotFormatError("cannot open snapshot " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_snapshot(buf.str());
}

void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << snapshot.serialize();
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::vector<NewformOrbit> query(const Snapshot& snapshot, std::int64_t level_dividing, std::int64_t conductor_dividing) {
    if (level_dividing < 1 || conductor_dividing < 1) throw std::invalid_argument("query bounds must be positive");
    std::vector<NewformOrbit> out;
    for (const auto& o : snapshot.orbits()) {
        if (level_dividing % o.level == 0 && conductor_dividing % o.char_conductor == 0) out.push_back(o);
    }
    return out;
}

}  // namespace cycrank
