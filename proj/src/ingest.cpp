#include "cycrank/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "cycrank/errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace cycrank {
namespace {

using nlohmann::json;

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
    return s;
}

struct ParsedUrl {
    std::string scheme;  // "http", "https", "file"
    std::string host;    // scheme://host[:port], empty for file
    std::string path;    // path and query
};

ParsedUrl parse_url(const std::string& url) {
    const auto sep = url.find("://");
    if (sep == std::string::npos) throw IngestError("not an absolute URL: " + url, false);
    ParsedUrl p;
    p.scheme = url.substr(0, sep);
    const std::string rest = url.substr(sep + 3);
    if (p.scheme == "file") {
        p.path = rest;
        return p;
    }
    if (p.scheme != "http" && p.scheme != "https") throw IngestError("unsupported URL scheme: " + url, false);
    const auto slash = rest.find('/');
    p.host = p.scheme + "://" + rest.substr(0, slash);
    p.path = slash == std::string::npos ? "/" : rest.substr(slash);
    return p;
}

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v && *v) return std::string(v);
    return std::nullopt;
}

bool bypass_proxy(const std::string& host) {
    const auto no_proxy = env("NO_PROXY") ? env("NO_PROXY") : env("no_proxy");
    if (!no_proxy) return false;
    std::stringstream ss(*no_proxy);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        entry.erase(std::remove(entry.begin(), entry.end(), ' '), entry.end());
        if (entry == "*") return true;
        if (!entry.empty() && host.size() >= entry.size() &&
            host.compare(host.size() - entry.size(), entry.size(), entry) == 0)
            return true;
    }
    return false;
}

std::string today_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
    return buf;
}

const json& require(const json& row, const char* key, const std::string& table) {
    if (!row.is_object() || !row.contains(key)) {
        const std::string label = row.is_object() && row.contains("label") ? row["label"].dump() : "?";
        throw IngestError("schema drift in " + table + ": field '" + key + "' missing (record " + label + ")", false);
    }
    return row[key];
}

template <typename T>
T require_as(const json& row, const char* key, const std::string& table) {
    try {
        return require(row, key, table).get<T>();
    } catch (const json::type_error&) {
        throw IngestError("schema drift in " + table + ": field '" + key + "' has an unexpected type", false);
    }
}

struct Page {
    std::string url;
    json rows;
};

class Journal {
public:
    explicit Journal(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
        if (dir_) std::filesystem::create_directories(*dir_);
    }

    std::optional<std::string> lookup(const std::string& url) const {
        if (!dir_) return std::nullopt;
        std::ifstream in(file(url), std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    void store(const std::string& url, const std::string& body) const {
        if (!dir_) return;
        const auto path = file(url);
        {
            std::ofstream out(path.string() + ".tmp", std::ios::binary);
            out << body;
        }
        std::filesystem::rename(path.string() + ".tmp", path);
    }

    std::string describe() const { return dir_ ? "journal kept in " + dir_->string() : "no journal configured"; }

private:
    std::filesystem::path file(const std::string& url) const { return *dir_ / (sha256_hex(url) + ".page"); }

    std::optional<std::filesystem::path> dir_;
};

std::vector<Page> fetch_table(const std::string& first_url, const std::string& table, Fetcher& fetcher,
                              const Journal& journal, int retries) {
    std::vector<Page> pages;
    std::set<std::string> seen;
    std::string url = first_url;
    while (!url.empty()) {
        if (!seen.insert(url).second) throw IngestError("pagination loop at " + url, false);
        std::string body;
        if (auto cached = journal.lookup(url)) {
            body = std::move(*cached);
        } else {
            for (int attempt = 0;; ++attempt) {
                try {
                    body = fetcher.get(url);
                    break;
                } catch (const IngestError& e) {
                    if (!e.retriable()) throw;
                    if (attempt >= retries)
                        throw IngestError(std::string(e.what()) + " after " + std::to_string(attempt + 1) +
                                              " attempts; " + journal.describe(),
                                          true);
                    std::this_thread::sleep_for(std::chrono::milliseconds(200) * (1 << attempt));
                }
            }
        }
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::parse_error&) {
            throw IngestError("response from " + url + " is not JSON", false);
        }
        if (!doc.contains("data") || !doc["data"].is_array())
            throw IngestError("schema drift in " + table + ": field 'data' missing at " + url, false);
        journal.store(url, body);
        pages.push_back({url, doc["data"]});
        url = doc.contains("next") && doc["next"].is_string() && !doc["next"].get<std::string>().empty()
                  ? resolve_url(url, doc["next"].get<std::string>())
                  : std::string();
    }
    return pages;
}

std::string display_source(const SourceConfig& config, const std::string& url) {
    if (config.source_name.empty() || url.rfind(config.base, 0) != 0) return url;
    return config.source_name + url.substr(config.base.size());
}

std::string expand(const std::string& tmpl, const SourceConfig& config, const IngestOptions& options) {
    std::string s = replace_all(tmpl, "{base}", config.base);
    s = replace_all(s, "{lo}", std::to_string(options.level_lo));
    return replace_all(s, "{hi}", std::to_string(options.level_hi));
}

}  // namespace

SourceConfig load_source_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open source config " + path.string(), false);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IngestError("bad source config " + path.string() + ": " + e.what(), false);
    }
    const std::string dir = std::filesystem::absolute(path).parent_path().string();
    auto str = [&](const char* key, bool required) {
        if (!j.contains(key)) {
            if (required) throw IngestError("source config: field '" + std::string(key) + "' missing", false);
            return std::string();
        }
        return replace_all(j[key].get<std::string>(), "{config_dir}", dir);
    };
    SourceConfig c;
    c.base = str("base", true);
    c.newspaces = str("newspaces", true);
    c.newforms = str("newforms", true);
    c.twists = str("twists", true);
    c.source_name = str("source_name", false);
    c.retrieved = str("retrieved", false);
    if (j.contains("max_in_flight")) c.max_in_flight = j["max_in_flight"].get<int>();
    if (j.contains("spacing_ms")) c.spacing = std::chrono::milliseconds(j["spacing_ms"].get<int>());
    if (j.contains("retries")) c.retries = j["retries"].get<int>();
    if (j.contains("timeout_ms")) c.timeout = std::chrono::milliseconds(j["timeout_ms"].get<int>());
    if (c.max_in_flight < 1) throw IngestError("source config: max_in_flight must be positive", false);
    return c;
}

RateLimiter::RateLimiter(int max_in_flight, std::chrono::milliseconds spacing)
    : max_in_flight_(max_in_flight), spacing_(spacing) {
    if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be positive");
}

RateLimiter::Permit RateLimiter::acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;
    auto now = std::chrono::steady_clock::now();
    const auto start = std::max(now, next_start_);
    next_start_ = start + spacing_;
    lock.unlock();
    std::this_thread::sleep_until(start);
    return Permit(*this);
}

void RateLimiter::release() {
    {
        std::lock_guard lock(mu_);
        --in_flight_;
    }
    cv_.notify_one();
}

UrlFetcher::UrlFetcher(const SourceConfig& config)
    : timeout_(config.timeout), limiter_(config.max_in_flight, config.spacing) {}

std::string UrlFetcher::get(const std::string& url) {
    const ParsedUrl p = parse_url(url);
    if (p.scheme != "file") return get_http(url);
    const std::string path = p.path.substr(0, p.path.find('?'));
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot read " + path, false);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string UrlFetcher::get_http(const std::string& url) {
    const ParsedUrl p = parse_url(url);
    httplib::Client client(p.host);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_).count();
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_follow_location(true);
    const bool tls = p.scheme == "https";
    const std::string host_only = p.host.substr(p.scheme.size() + 3);
    if (!bypass_proxy(host_only.substr(0, host_only.find(':')))) {
        auto proxy = tls ? (env("HTTPS_PROXY") ? env("HTTPS_PROXY") : env("https_proxy"))
                         : (env("HTTP_PROXY") ? env("HTTP_PROXY") : env("http_proxy"));
        if (proxy) {
            const ParsedUrl pp = parse_url(*proxy);
            const std::string hp = pp.host.substr(pp.scheme.size() + 3);
            const auto colon = hp.rfind(':');
            const int port = colon == std::string::npos ? 80 : std::stoi(hp.substr(colon + 1));
            client.set_proxy(hp.substr(0, colon), port);
        }
    }
    auto permit = limiter_.acquire();
    auto res = client.Get(p.path);
    if (!res) throw IngestError("GET " + url + " failed: " + httplib::to_string(res.error()), true);
    if (res->status >= 500 || res->status == 429)
        throw IngestError("GET " + url + " returned " + std::to_string(res->status), true);
    if (res->status != 200) throw IngestError("GET " + url + " returned " + std::to_string(res->status), false);
    return res->body;
}

std::string resolve_url(const std::string& current, const std::string& next) {
    if (next.find("://") != std::string::npos) return next;
    const ParsedUrl p = parse_url(current);
    if (!next.empty() && next.front() == '/')
        return p.scheme == "file" ? "file://" + next : p.host + next;
    if (!next.empty() && next.front() == '?') {
        const std::string path = p.path.substr(0, p.path.find('?'));
        return (p.scheme == "file" ? "file://" : p.host) + path + next;
    }
    const std::string path = p.path.substr(0, p.path.find('?'));
    const std::string dir = path.substr(0, path.rfind('/') + 1);
    return (p.scheme == "file" ? "file://" : p.host) + dir + next;
}

Snapshot ingest(const SourceConfig& config, const IngestOptions& options, Fetcher& fetcher) {
    if (options.level_lo < 1 || options.level_hi < options.level_lo)
        throw std::invalid_argument("bad level range");
    const Journal journal(options.journal_dir);

    // The three tables are independent; the fetcher's limiter bounds load.
    auto fetch = [&](const std::string& tmpl, const char* table) {
        return std::async(std::launch::async, [&, tmpl, table] {
            return fetch_table(expand(tmpl, config, options), table, fetcher, journal, config.retries);
        });
    };
    auto spaces_f = fetch(config.newspaces, "mf_newspaces");
    auto forms_f = fetch(config.newforms, "mf_newforms");
    auto twists_f = fetch(config.twists, "mf_twists_cmf");
    const auto space_pages = spaces_f.get();
    const auto form_pages = forms_f.get();
    const auto twist_pages = twists_f.get();

    const std::string retrieved = config.retrieved.empty() ? today_utc() : config.retrieved;
    const auto in_range = [&](std::int64_t level) { return level >= options.level_lo && level <= options.level_hi; };

    std::vector<NewspaceRecord> spaces;
    for (const auto& page : space_pages) {
        for (const auto& row : page.rows) {
            const std::string t = "mf_newspaces";
            NewspaceRecord s;
            s.level = require_as<std::int64_t>(row, "level", t);
            if (require_as<int>(row, "weight", t) != 2 || !in_range(s.level)) continue;
            s.char_orbit = require_as<std::string>(row, "char_orbit_label", t);
            const auto conrey = require_as<std::vector<std::int64_t>>(row, "conrey_indexes", t);
            if (conrey.empty()) throw IngestError("schema drift in mf_newspaces: empty 'conrey_indexes'", false);
            s.char_index = *std::min_element(conrey.begin(), conrey.end());
            s.char_conductor = require_as<std::int64_t>(row, "char_conductor", t);
            s.char_order = require_as<std::int64_t>(row, "char_order", t);
            s.new_dim = require_as<std::int64_t>(row, "dim", t);
            s.cusp_dim = require_as<std::int64_t>(row, "cusp_dim", t);
            spaces.push_back(std::move(s));
        }
    }

    std::vector<NewformOrbit> orbits;
    std::map<std::string, std::int64_t> orbit_level;
    std::optional<std::string> exception_orbit;
    for (const auto& page : form_pages) {
        for (const auto& row : page.rows) {
            const std::string t = "mf_newforms";
            NewformOrbit o;
            o.level = require_as<std::int64_t>(row, "level", t);
            o.weight = require_as<int>(row, "weight", t);
            if (o.weight != 2 || !in_range(o.level)) continue;
            o.label = require_as<std::string>(row, "label", t);
            o.char_conductor = require_as<std::int64_t>(row, "char_conductor", t);
            o.char_order = require_as<std::int64_t>(row, "char_order", t);
            o.conrey_indexes = require_as<std::vector<std::int64_t>>(row, "conrey_indexes", t);
            std::sort(o.conrey_indexes.begin(), o.conrey_indexes.end());
            if (o.conrey_indexes.empty()) throw IngestError("schema drift in mf_newforms: empty 'conrey_indexes'", false);
            o.char_label = std::to_string(o.level) + "." + std::to_string(o.conrey_indexes.front());
            o.dimension = require_as<std::int64_t>(row, "dim", t);
            const json& rank = require(row, "analytic_rank", t);
            if (!rank.is_null()) o.analytic_rank = require_as<int>(row, "analytic_rank", t);
            if (o.char_order == 1) {
                std::vector<AtkinLehnerSign> signs;
                for (const auto& pair : require(row, "atkin_lehner_eigenvals", t)) {
                    if (!pair.is_array() || pair.size() != 2)
                        throw IngestError("schema drift in mf_newforms: malformed 'atkin_lehner_eigenvals'", false);
                    signs.push_back({pair[0].get<std::int64_t>(), pair[1].get<int>()});
                }
                o.atkin_lehner = std::move(signs);
            }
            o.source = display_source(config, page.url);
            o.retrieved = retrieved;
            if (o.level == 144 && o.char_conductor == 36 && o.analytic_rank.value_or(0) >= 1) {
                if (exception_orbit) throw IngestError("two candidates for the level-144 conductor-36 orbit", false);
                exception_orbit = o.label;
            }
            orbit_level[o.label] = o.level;
            orbits.push_back(std::move(o));
        }
    }

    std::vector<TwistRecord> twists;
    for (const auto& page : twist_pages) {
        for (const auto& row : page.rows) {
            const std::string t = "mf_twists_cmf";
            TwistRecord tw;
            tw.source = require_as<std::string>(row, "source_label", t);
            tw.character = require_as<std::string>(row, "twisting_char_label", t);
            tw.target_level = require_as<std::int64_t>(row, "target_level", t);
            const auto target = require_as<std::string>(row, "target_label", t);
            const auto src = parse_embedding_label(tw.source);
            if (!orbit_level.count(src.orbit)) continue;
            if (orbit_level.count(parse_embedding_label(target).orbit)) tw.target = target;
            twists.push_back(std::move(tw));
        }
    }

    SnapshotMeta meta;
    meta.max_level = options.level_hi;
    meta.source = config.source_name.empty() ? config.base : config.source_name;
    meta.retrieved = retrieved;
    meta.notes.push_back("analytic_rank is the order of vanishing at s=1 of one embedding's L-function");
    meta.notes.push_back("levels " + std::to_string(options.level_lo) + "-" + std::to_string(options.level_hi) +
                         "; space records list which character orbits are present");
    if (exception_orbit)
        meta.notes.push_back("Magma class G1N144I (level 144, character conductor 36, L(f,1)=0) is " + *exception_orbit);
    return Snapshot(std::move(meta), std::move(spaces), std::move(orbits), std::move(twists));
}

}  // namespace cycrank
