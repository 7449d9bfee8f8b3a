#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "cycrank/bounds.hpp"
#include "cycrank/decomposition.hpp"
#include "cycrank/errors.hpp"
#include "cycrank/growth.hpp"
#include "cycrank/ingest.hpp"
#include "cycrank/rank.hpp"
#include "cycrank/twist.hpp"
#include "report.hpp"

using namespace cycrank;
using cycrank::cli::Cell;
using cycrank::cli::Format;
using cycrank::cli::Table;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kDataGap = 2;
constexpr int kUsage = 3;

struct Options {
    std::string snapshot = CYCRANK_DEFAULT_SNAPSHOT;
    bool bsd = false;
    std::string format = "table";
    std::int64_t M = 1;
    std::int64_t N = 1;
    std::int64_t level = 0;
    std::string jacobian = "jdelta";
    int r = 1;
    bool crosscheck = false;
    std::string config;
    std::int64_t from = 1;
    std::int64_t to = 0;
    std::string out;
    std::string journal;
};

Format format_of(const Options& o) { return o.format == "jsonl" ? Format::JsonLines : Format::Table; }

std::string rank_text(const RankValue& r) {
    if (!r.known()) return "?";
    const std::string t = tag(r.provenance);
    return std::to_string(r.absolute_rank) + (t.empty() ? "" : " " + t);
}

std::string total_text(const RankTotal& t) {
    if (!t.known()) return "?";
    const std::string p = tag(t.provenance);
    return std::to_string(t.value) + (p.empty() ? "" : " " + p);
}

std::string join(const std::vector<std::int64_t>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
    return out.str();
}

class Run {
public:
    Run(std::string verb, const Options& options) : verb_(std::move(verb)), o_(options), format_(format_of(options)) {}

    const Snapshot& snapshot() {
        if (!snapshot_) {
            snapshot_ = load_snapshot(o_.snapshot);
            header({{"snapshot", o_.snapshot}, {"sha256", snapshot_->checksum()}, {"max_level", snapshot_->max_level()}});
        }
        return *snapshot_;
    }

    void header(std::vector<std::pair<std::string, Cell>> extra) {
        Cell h;
        h["section"] = "header";
        h["verb"] = verb_;
        for (auto& [k, v] : extra) h[k] = v;
        h["bsd"] = o_.bsd;
        if (format_ == Format::JsonLines) {
            std::cout << h.dump() << '\n';
            return;
        }
        for (auto it = h.begin(); it != h.end(); ++it) {
            if (it.key() == "section") continue;
            std::cout << "# " << it.key() << ": "
                      << (it->is_string() ? it->get<std::string>() : (it->is_boolean() ? (it->get<bool>() ? "on" : "off") : it->dump()))
                      << '\n';
        }
        std::cout << '\n';
    }

    void emit(const Table& t) { t.write(std::cout, format_); }

    const Options& options() const { return o_; }

private:
    std::string verb_;
    const Options& o_;
    Format format_;
    std::optional<Snapshot> snapshot_;
};

int cmd_ingest(Run& run) {
    const auto& o = run.options();
    const SourceConfig config = load_source_config(o.config);
    UrlFetcher fetcher(config);
    IngestOptions opts{o.from, o.to, std::nullopt};
    if (!o.journal.empty()) opts.journal_dir = o.journal;
    const Snapshot s = ingest(config, opts, fetcher);
    save_snapshot(s, o.out);
    run.header({{"source", s.meta().source}, {"out", o.out}, {"sha256", s.checksum()}});
    Table t("snapshot", {"levels", "spaces", "orbits", "twists"});
    t.add({std::to_string(o.from) + "-" + std::to_string(o.to), s.spaces().size(), s.orbits().size(), s.twists().size()});
    run.emit(t);
    Table notes("notes", {"note"});
    for (const auto& n : s.meta().notes) notes.add({n});
    run.emit(notes);
    return kOk;
}

int cmd_decompose(Run& run) {
    const auto& o = run.options();
    const Snapshot& s = run.snapshot();
    IsogenyDecomposition d;
    if (o.jacobian == "j0")
        d = decompose_J0(o.level, s);
    else if (o.jacobian == "j1")
        d = decompose_J1(o.level, s);
    else
        d = decompose_JDelta(o.M, o.N, s);
    Table factors("factors", {"orbit", "level", "dimension", "multiplicity"});
    for (const auto& f : d.factors)
        factors.add({f.orbit, f.level, f.dimension,
                     std::to_string(f.multiplicity) + " = σ₀(" + std::to_string(d.level) + "/" +
                         std::to_string(f.level) + ")"});
    run.emit(factors);
    Table total("total", {"jacobian", "level", "conductor_bound", "factors", "dimension"});
    total.add({to_string(d.target), d.level, d.conductor_bound, d.factors.size(), d.total_dimension});
    run.emit(total);
    if (o.jacobian != "jdelta") return kOk;
    const DimensionCheck check = dimension_check(o.M, o.N, s);
    Table dc("dimension-check", {"from_orbits", "from_spaces", "ok"});
    dc.add({check.from_orbits, check.from_spaces, check.ok()});
    run.emit(dc);
    return check.ok() ? kOk : kMismatch;
}

void emit_rank_lines(Run& run, const RankReport& r, const std::string& section, const std::string& rank_column) {
    Table t(section, {"orbit", "level", "dimension", rank_column, "provenance", "twist_levels", "weight", "contribution"});
    for (const auto& l : r.lines)
        t.add({l.orbit, l.level, l.dimension, rank_text(l.rank), to_string(l.rank.provenance),
               l.twist_levels.empty() ? "-" : join(l.twist_levels), l.weight, total_text(l.contribution)});
    run.emit(t);
}

int cmd_rank(Run& run) {
    const auto& o = run.options();
    const Snapshot& s = run.snapshot();
    const RankReport r = rank_cyclotomic(o.M, o.N, s, o.bsd);
    if (r.coverage_error) {
        Table gap("coverage-gap", {"M", "N", "error"});
        gap.add({o.M, o.N, *r.coverage_error});
        run.emit(gap);
        return kDataGap;
    }
    emit_rank_lines(run, r, "orbits", "rank_Q");
    const ZeroVerdict z = rank_zero_status(o.M, o.N, s, o.bsd);
    Table total("total", {"M", "N", "rank_Qzeta", "provenance", "breakdown", "rank_Q_JDelta", "zero_status", "witness",
                          "theorem_list"});
    total.add({o.M, o.N, total_text(r.total), to_string(r.total.provenance), r.breakdown(), total_text(z.q_rank),
               to_string(z.status), z.witness ? *z.witness + " " + to_string(z.witness_provenance) : "-",
               r.theorem_list_member});
    run.emit(total);
    int rc = r.gaps.empty() ? kOk : kDataGap;
    if (!r.gaps.empty()) {
        Table gaps("gaps", {"missing"});
        for (const auto& g : r.gaps) gaps.add({g});
        run.emit(gaps);
    }
    if (o.crosscheck) {
        const RankReport c = rank_cyclotomic_crosscheck(o.M, o.N, s, o.bsd);
        emit_rank_lines(run, c, "crosscheck-orbits", "rank_Qzeta");
        const bool both = r.total.known() && c.total.known();
        const bool agree = both && r.total.value == c.total.value;
        Table t("crosscheck", {"formula_twists", "formula_orbits", "agree"});
        t.add({total_text(r.total), total_text(c.total), both ? Cell(agree) : Cell("undetermined")});
        run.emit(t);
        if (both && !agree) rc = kMismatch;
        if (!c.gaps.empty() && rc == kOk) rc = kDataGap;
    }
    return rc;
}

int cmd_verify_theorem(Run& run) {
    const TheoremReport report = verify_main_theorem(run.snapshot());
    Table t("pairs", {"M", "N", "expected", "verdict", "witness", "route", "ok"});
    std::size_t failures = 0;
    for (const auto& row : report.rows) {
        failures += !row.ok;
        std::string witness = "-";
        if (row.verdict.witness) witness = *row.verdict.witness + " " + to_string(row.verdict.witness_provenance);
        if (!row.verdict.missing_levels.empty()) witness = "missing level " + join(row.verdict.missing_levels);
        t.add({row.M, row.N, to_string(row.expected), to_string(row.verdict.status), witness, row.route, row.ok});
    }
    run.emit(t);
    Table notes("input-lists", {"note"});
    for (const auto& n : report.notes) notes.add({n});
    if (report.notes.empty()) notes.add({"every input-list entry agrees with the snapshot"});
    run.emit(notes);
    Table summary("summary", {"pairs", "failures", "ok"});
    summary.add({report.rows.size(), failures, report.ok()});
    run.emit(summary);
    return report.ok() ? kOk : kMismatch;
}

int cmd_twist_check(Run& run) {
    const auto& o = run.options();
    const ActionReport r = verify_action(o.M, o.N, run.snapshot());
    Table t("action", {"M", "N", "embeddings", "characters", "lookups", "violations", "split_orbits", "ok"});
    t.add({r.M, r.N, r.embeddings, r.characters, r.lookups, r.violations.size(), r.split_orbits.size(), r.ok()});
    run.emit(t);
    Table v("violations", {"kind", "embedding", "character", "detail"});
    bool only_gaps = true;
    for (const auto& x : r.violations) {
        v.add({x.kind, x.embedding, x.character, x.detail});
        only_gaps = only_gaps && x.kind == "gap";
    }
    run.emit(v);
    Table split("split-orbits", {"orbit", "character"});
    for (const auto& [orbit, chi] : r.split_orbits) split.add({orbit, chi});
    run.emit(split);
    if (r.ok()) return kOk;
    return only_gaps ? kDataGap : kMismatch;
}

int cmd_sets(Run& run) {
    const auto& o = run.options();
    const Snapshot& s = run.snapshot();
    Table t("seed-sets", {"r", "size", "prime_cutoff", "composite_bound", "members"});
    for (const auto& set : build_seed_sets(o.r))
        t.add({set.r, set.members.size(), set.prime_cutoff ? set.prime_cutoff->str() : "stored",
               set.composite_bound ? Cell(set.composite_bound) : Cell("-"), join(set.members)});
    run.emit(t);
    const auto diffs = verify_seed_set_zero(s);
    Table check("s0-check", {"levels_checked", "discrepancies"});
    check.add({s.max_level(), diffs.size()});
    run.emit(check);
    Table d("s0-discrepancies", {"detail"});
    for (const auto& x : diffs) d.add({x});
    if (!d.empty()) run.emit(d);
    return diffs.empty() ? kOk : kMismatch;
}

int cmd_bounds(Run& run) {
    const auto& o = run.options();
    const Snapshot& s = run.snapshot();
    int rc = kOk;
    if (o.level > 0) {
        const GenusRecord g = genus_record(o.level);
        std::optional<std::int64_t> from_data;
        try {
            from_data = genus_X0plus_composite(o.level, s);
        } catch (const CoverageError&) {
        } catch (const DataGapError&) {
        }
        Table t("genus", {"N", "g0", "g0_plus_class_numbers", "fixed_points", "g0_plus_atkin_lehner", "agree"});
        const bool agree = !g.g0_plus || !from_data || *g.g0_plus == *from_data;
        t.add({g.N, g.g0, g.g0_plus ? Cell(*g.g0_plus) : Cell("-"), g.fixed_points ? Cell(*g.fixed_points) : Cell("-"),
               from_data ? Cell(*from_data) : Cell("-"), agree});
        run.emit(t);
        if (!agree) rc = kMismatch;

        if (g.g0_plus) {
            const PrimeRankBound b = rank_lower_bound_prime(o.level, s);
            Table lb("prime-rank-bound", {"p", "rank_J0_at_least", "plus_dimension", "even_rank_plus_orbits"});
            std::string even = "-";
            if (!b.even_rank_plus_orbits.empty()) {
                even.clear();
                for (const auto& x : b.even_rank_plus_orbits) even += (even.empty() ? "" : " ") + x;
                rc = kMismatch;
            }
            lb.add({b.p, std::to_string(b.bound) + " " + tag(b.provenance), b.plus_dimension, even});
            run.emit(lb);
        }

        RankTotal rank;
        for (const auto& f : decompose_J0(o.level, s).factors) {
            const RankValue v = assign_rank(*s.find_orbit(f.orbit), o.bsd);
            rank.add(f.multiplicity * v.absolute_rank, v.provenance);
        }
        Table lb("log180-bound", {"N", "rank_J0", "N_le_180^(rank+1)"});
        lb.add({o.level, total_text(rank), rank.known() ? Cell(check_lower_bound(o.level, rank.value)) : Cell("-")});
        run.emit(lb);
        if (rank.known() && !check_lower_bound(o.level, rank.value)) rc = kMismatch;
    }
    if (o.r > 0) {
        const auto r = static_cast<long double>(o.r);
        const int sign = o.r >= 2 ? certified_sign([&](int bits) { return f_enclosure(r, bits); }) : 0;
        Table t("growth", {"r", "h_cutoff", "f(r)_sign"});
        t.add({o.r, h_cutoff(r).str(), o.r >= 2 ? Cell(sign) : Cell("-")});
        run.emit(t);
    }
    return rc;
}

int cmd_good_prime(Run& run) {
    const auto& o = run.options();
    run.snapshot();
    const GoodPrime g = good_prime_search(o.N);
    Table t("good-prime", {"N", "p", "residue_degree", "q", "(N-1)^2"});
    t.add({o.N, g.p, g.residue_degree, g.q, (o.N - 1) * (o.N - 1)});
    run.emit(t);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Ranks of modular Jacobians over cyclotomic fields, from an offline newform snapshot"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--snapshot", o.snapshot, "Snapshot file");
    app.add_flag("--bsd", o.bsd, "Accept ranks that assume the Birch and Swinnerton-Dyer conjecture");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "jsonl"}));

    auto* ingest_cmd = app.add_subcommand("ingest", "Fetch newform tables and write a snapshot");
    ingest_cmd->add_option("--config", o.config, "Source config (JSON)")->required();
    ingest_cmd->add_option("--from", o.from, "Lowest level")->check(CLI::PositiveNumber);
    ingest_cmd->add_option("--to", o.to, "Highest level")->required()->check(CLI::PositiveNumber);
    ingest_cmd->add_option("--out", o.out, "Snapshot to write")->required();
    ingest_cmd->add_option("--journal", o.journal, "Directory for resumable page journal");

    auto* decompose_cmd = app.add_subcommand("decompose", "Isogeny decomposition of J_Delta(M,N), J_0(L) or J_1(L)");
    decompose_cmd->add_option("--M", o.M)->check(CLI::PositiveNumber);
    decompose_cmd->add_option("--N", o.N)->check(CLI::PositiveNumber);
    auto* level_opt = decompose_cmd->add_option("--level", o.level, "Level L for J_0 / J_1")->check(CLI::PositiveNumber);
    decompose_cmd->add_option("--jacobian", o.jacobian)
        ->check(CLI::IsMember({"jdelta", "j0", "j1"}))
        ->needs(level_opt);

    auto* rank_cmd = app.add_subcommand("rank", "Rank of J_1(M,MN) over Q(zeta_M)");
    rank_cmd->add_option("--M", o.M)->required()->check(CLI::PositiveNumber);
    rank_cmd->add_option("--N", o.N)->required()->check(CLI::PositiveNumber);
    rank_cmd->add_flag("--crosscheck", o.crosscheck, "Also evaluate the orbit-wise formula");

    app.add_subcommand("verify-theorem", "Check every listed pair");

    auto* twist_cmd = app.add_subcommand("twist-check", "Check the twist action on NF(M,N)");
    twist_cmd->add_option("--M", o.M)->required()->check(CLI::PositiveNumber);
    twist_cmd->add_option("--N", o.N)->required()->check(CLI::PositiveNumber);

    auto* sets_cmd = app.add_subcommand("sets", "Seed sets S_0, ..., S_r");
    sets_cmd->add_option("--r", o.r)->check(CLI::Range(0, 3));

    auto* bounds_cmd = app.add_subcommand("bounds", "Genus, rank lower bounds and growth cutoffs");
    bounds_cmd->add_option("--level", o.level)->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--r", o.r)->check(CLI::Range(0, 64));

    auto* good_cmd = app.add_subcommand("good-prime", "Odd prime with a small residue field in Q(zeta_N)");
    good_cmd->add_option("--N", o.N)->required()->check(CLI::Range(4, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    if (decompose_cmd->parsed() && o.level > 0 && o.jacobian == "jdelta") {
        std::cerr << "--level needs --jacobian j0 or j1\n";
        return kUsage;
    }
    if (bounds_cmd->parsed() && bounds_cmd->count("--r") == 0) o.r = 0;

    const std::string verb = app.get_subcommands().front()->get_name();
    Run run(verb, o);
    try {
        if (verb == "ingest") return cmd_ingest(run);
        if (verb == "decompose") return cmd_decompose(run);
        if (verb == "rank") return cmd_rank(run);
        if (verb == "verify-theorem") return cmd_verify_theorem(run);
        if (verb == "twist-check") return cmd_twist_check(run);
        if (verb == "sets") return cmd_sets(run);
        if (verb == "bounds") return cmd_bounds(run);
        if (verb == "good-prime") return cmd_good_prime(run);
    } catch (const CoverageError& e) {
        std::cerr << "coverage gap: " << e.what() << '\n';
        return kDataGap;
    } catch (const DataGapError& e) {
        std::cerr << "data gap: " << e.what() << '\n';
        return kDataGap;
    } catch (const SnapshotFormatError& e) {
        std::cerr << "snapshot: " << e.what() << '\n';
        return kDataGap;
    } catch (const IngestError& e) {
        std::cerr << "ingest: " << e.what() << (e.retriable() ? " (retriable)" : "") << '\n';
        return kDataGap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMismatch;
    }
    return kUsage;
}
