#include "adrsig/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "adrsig/csv.hpp"
#include "adrsig/disproportionality.hpp"
#include "adrsig/errors.hpp"
#include "adrsig/evaluation.hpp"
#include "adrsig/format.hpp"
#include "adrsig/ingest.hpp"
#include "adrsig/synth.hpp"
#include "adrsig/windowing.hpp"
#include "json.hpp"

#ifndef ADRSIG_VERSION
#define ADRSIG_VERSION "0.0.0"
#endif

namespace adrsig::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Usage problems detected after argument parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(sde));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

unsigned env_threads() {
    const char* v = std::getenv("ADR_SIGNAL_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 0) throw UsageError("ADR_SIGNAL_THREADS must be a non-negative integer");
    return static_cast<unsigned>(n);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Provenance record written next to every output set.
class Manifest {
public:
    Manifest(std::string command, const std::vector<std::string>& args) {
        j_["tool"] = "adr-signal";
        j_["version"] = ADRSIG_VERSION;
        j_["command"] = std::move(command);
        j_["arguments"] = args;
        j_["config"] = json::object();
        j_["inputs"] = json::array();
        j_["outputs"] = json::array();
    }

    json& config() { return j_["config"]; }

    void input(const fs::path& path) {
        j_["inputs"].push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
    }
    void output(const fs::path& path) {
        j_["outputs"].push_back({{"path", path.filename().string()}, {"sha256", sha256_file(path)}});
    }

    void write(const fs::path& dir) {
        j_["timestamp"] = utc_timestamp();
        auto out = open_output(dir / "manifest.json");
        out << j_.dump(2) << '\n';
    }

private:
    json j_;
};

EventKey parse_key(const std::string& text, bool gp) {
    if (gp) return EventKey(EventCode::parse(text));
    return EventKey(EventName(text));
}

// signal ---------------------------------------------------------------------

struct SignalArgs {
    std::string source;
    std::string drug;
    std::string method = "ror";
    std::string tcrit = "60";
    std::string zero_policy = "strict";
    std::string out;
    std::string data_dir;
    std::string patients, prescriptions, events, reports;
    int level = 0;
    bool export_associations = false;
};

WindowConfig parse_tcrit(const std::string& text) {
    if (normalize_text(text) == "inf") return WindowConfig::infinite();
    try {
        std::size_t used = 0;
        const long long days = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return WindowConfig::days(days);
    } catch (const std::exception&) {
        throw UsageError("--tcrit must be a positive number of days or 'inf', got \"" + text + "\"");
    }
}

fs::path input_path(const std::string& explicit_path, const std::string& data_dir, const char* name,
                    const char* flag) {
    if (!explicit_path.empty()) return explicit_path;
    if (!data_dir.empty()) return fs::path(data_dir) / name;
    throw UsageError(std::string("missing ") + flag + " (or --data)");
}

int cmd_signal(const SignalArgs& a, const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err) {
    const bool gp = a.source == "gp";
    const auto method = parse_method(a.method);
    const auto policy = parse_zero_policy(a.zero_policy);
    if (!method) throw UsageError("--method must be ror or prr");
    if (!policy) throw UsageError("--zero-policy must be strict or haldane");
    const WindowConfig window = parse_tcrit(a.tcrit);
    if (a.level != 0 && (!gp || a.level < 1 || a.level > EventCode::kLength))
        throw UsageError("--level needs --source gp and a value in [1, 5]");
    const DrugId drug(a.drug);
    const unsigned threads = env_threads();

    Manifest manifest("signal", argv);
    auto& cfg = manifest.config();
    cfg["source"] = a.source;
    cfg["drug"] = drug.str();
    cfg["method"] = to_string(*method);
    cfg["zero_policy"] = to_string(*policy);
    if (gp) cfg["tcrit"] = window.str();
    if (a.level) cfg["level"] = a.level;

    LoadOptions load;
    load.threads = threads;
    AssociationSet assoc;
    if (gp) {
        const auto p = input_path(a.patients, a.data_dir, "patients.csv", "--patients");
        const auto rx = input_path(a.prescriptions, a.data_dir, "prescriptions.csv", "--prescriptions");
        const auto ev = input_path(a.events, a.data_dir, "events.csv", "--events");
        const auto data = load_gp(p, rx, ev, load);
        manifest.input(p);
        manifest.input(rx);
        manifest.input(ev);
        out << "loaded " << data.patients.size() << " patients, " << data.prescriptions.size()
            << " prescriptions, " << data.events.size() << " events\n";
        assoc = associate_gp(data, window, threads);
    } else {
        const auto path = input_path(a.reports, a.data_dir, "srs_reports.csv", "--reports");
        const auto data = load_srs(path, load);
        manifest.input(path);
        out << "loaded " << data.reports.size() << " reports, rejected " << data.rejected.size()
            << ", missing any optional field " << format_double(data.missingness.any) << "\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(data.rejected.size(), 5); ++i)
            err << "warning: " << path.filename().string() << ":" << data.rejected[i].line
                << ": rejected: " << data.rejected[i].reason << "\n";
        assoc = associate_srs(data);
    }

    if (!assoc.contains(drug)) {
        std::vector<std::string> known;
        for (const auto& d : assoc.drugs()) known.push_back(d.str());
        err << "error: drug \"" << drug.str() << "\" has no associations";
        const auto near = nearest(drug.str(), known);
        if (!near.empty()) {
            err << "; nearest known ids:";
            for (const auto& n : near) err << " " << n;
        }
        err << "\n";
        return kExitUsage;
    }

    SignalRanking ranking;
    if (a.level) {
        std::map<EventKey, ContingencyTable> tables;
        for (auto& [code, t] : contingency_at_level(assoc, drug, a.level)) tables.emplace(code, t);
        ranking = rank_tables(tables, *method, *policy, threads);
    } else {
        ranking = rank_signals(assoc, drug, *method, *policy, threads);
    }

    const fs::path dir(a.out);
    fs::create_directories(dir);
    {
        auto f = open_output(dir / "signals.csv");
        write_signals_csv(f, ranking, *method);
    }
    manifest.output(dir / "signals.csv");
    if (a.export_associations) {
        {
            auto f = open_output(dir / "associations.csv");
            assoc.write_csv(f);
        }
        manifest.output(dir / "associations.csv");
    }
    manifest.write(dir);

    const auto signaled = std::count_if(ranking.ranked.begin(), ranking.ranked.end(),
                                        [](const RankedSignal& r) { return r.stats.signaled; });
    out << assoc.size() << " associations, " << assoc.events().size() << " events; "
        << ranking.ranked.size() << " scored, " << signaled << " signaled\n";
    if (!ranking.undefined.empty())
        err << "warning: " << ranking.undefined.size()
            << " events have undefined statistics (zero cell); listed with empty estimates\n";
    return kExitOk;
}

// roc ------------------------------------------------------------------------

struct RocArgs {
    std::string source;
    std::string signals;
    std::string known;
    std::string out;
    std::optional<double> fpr_max;
};

struct SignalFile {
    std::set<EventKey> universe;
    ScoreMap scores;
    std::set<EventKey> signaled;
};

SignalFile read_signals(const fs::path& path, bool gp) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    csv::Reader reader(in, path.filename().string());
    csv::expect_header(reader, kSignalsHeader);
    SignalFile out;
    while (auto rec = reader.next()) {
        if (rec->fields.size() == 1 && rec->fields[0].empty()) continue;
        if (rec->fields.size() != kSignalsHeader.size())
            throw ParseError(reader.source_name(), rec->line, "wrong number of fields");
        const auto& f = rec->fields;
        std::optional<EventKey> key;
        try {
            key = parse_key(f[0], gp);
        } catch (const PreconditionError& e) {
            throw ParseError(reader.source_name(), rec->line, e.what());
        }
        std::optional<double> score;
        if (!f[6].empty()) {
            try {
                score = std::stod(f[6]);
            } catch (const std::exception&) {
                throw ParseError(reader.source_name(), rec->line, "bad estimate \"" + f[6] + "\"");
            }
        }
        if (!out.universe.insert(*key).second)
            throw ParseError(reader.source_name(), rec->line, "duplicate event " + key->str());
        out.scores.emplace(*key, score);
        if (f[10] == "true") out.signaled.insert(*key);
    }
    return out;
}

std::vector<KnownAdeSet> read_known(const fs::path& path, bool gp) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw UsageError("known reactions file " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("known reactions file must map names to code lists");
    std::vector<KnownAdeSet> out;
    for (const auto& [name, codes] : j.items()) {
        if (!codes.is_array() || codes.empty())
            throw UsageError("known reaction \"" + name + "\" must list at least one code");
        KnownAdeSet k{name, {}};
        for (const auto& c : codes) {
            if (!c.is_string()) throw UsageError("known reaction \"" + name + "\": codes must be strings");
            try {
                k.codes.push_back(parse_key(c.get<std::string>(), gp));
            } catch (const PreconditionError& e) {
                throw UsageError("known reaction \"" + name + "\": " + e.what());
            }
        }
        out.push_back(std::move(k));
    }
    return out;
}

json auc_json(const AucResult& full, const std::optional<AucResult>& partial,
              std::optional<double> fpr_max) {
    json j;
    j["auc"] = full.auc;
    j["se"] = full.se;
    j["n_pos"] = full.n_pos;
    j["n_neg"] = full.n_neg;
    j["fpr_max"] = fpr_max ? json(*fpr_max) : json(nullptr);
    j["partial_auc"] = partial ? json(partial->auc) : json(nullptr);
    j["partial_se"] = partial ? json(partial->se) : json(nullptr);
    return j;
}

int cmd_roc(const RocArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const bool gp = a.source == "gp";
    if (a.fpr_max && !(*a.fpr_max > 0.0 && *a.fpr_max <= 1.0))
        throw UsageError("--fpr-max must lie in (0, 1]");
    Manifest manifest("roc", argv);
    manifest.config()["source"] = a.source;
    if (a.fpr_max) manifest.config()["fpr_max"] = *a.fpr_max;

    const auto known = read_known(a.known, gp);
    const auto signals = read_signals(a.signals, gp);
    manifest.input(a.signals);
    manifest.input(a.known);
    for (const auto& k : known)
        for (const auto& code : k.codes)
            if (!signals.universe.contains(code))
                throw DataError("known reaction \"" + k.name + "\": event " + code.str() +
                                " is not in the event universe of " + a.signals);

    const auto curve = roc_curve(signals.scores, known, signals.universe);
    const auto full = auc_result(curve);
    std::optional<AucResult> partial;
    if (a.fpr_max) partial = partial_auc_result(curve, *a.fpr_max);

    const fs::path dir(a.out);
    fs::create_directories(dir);
    {
        auto f = open_output(dir / "roc.tsv");
        write_roc_tsv(f, curve);
    }
    {
        auto f = open_output(dir / "auc.json");
        f << auc_json(full, partial, a.fpr_max).dump(2) << '\n';
    }
    const auto detected = detect_known(signals.signaled, known);
    {
        auto f = open_output(dir / "detection.csv");
        csv::write_row(f, {"adverse_event", "signaled"});
        for (const auto& [name, hit] : detected) csv::write_row(f, {name, format_bool(hit)});
    }
    for (const char* name : {"roc.tsv", "auc.json", "detection.csv"}) manifest.output(dir / name);
    manifest.write(dir);

    const auto hits = std::count_if(detected.begin(), detected.end(), [](const auto& d) { return d.second; });
    out << "AUC " << format_double(full.auc) << " (se " << format_double(full.se) << ")";
    if (partial) out << ", partial AUC@" << format_double(*a.fpr_max) << " " << format_double(partial->auc);
    out << "; " << hits << "/" << known.size() << " known reactions signaled\n";
    return kExitOk;
}

// compare --------------------------------------------------------------------

struct CompareArgs {
    std::string first;
    std::string second;
    double r = 0.0;
    std::string measure = "auc";
    std::string out;
};

json read_auc_file(const fs::path& path) {
    try {
        auto j = json::parse(read_text(path));
        for (const char* key : {"auc", "se", "n_pos", "n_neg", "fpr_max"})
            if (!j.contains(key)) throw UsageError(path.string() + ": missing \"" + key + "\"");
        return j;
    } catch (const json::exception& e) {
        throw UsageError(path.string() + ": " + e.what());
    }
}

int cmd_compare(const CompareArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    if (a.measure != "auc" && a.measure != "partial") throw UsageError("--measure must be auc or partial");
    if (!(a.r >= 0.0 && a.r <= 1.0)) throw UsageError("--r must lie in [0, 1]");
    const auto j1 = read_auc_file(a.first);
    const auto j2 = read_auc_file(a.second);
    if (j1["fpr_max"] != j2["fpr_max"])
        throw UsageError("inputs were computed with different --fpr-max values");
    const bool partial = a.measure == "partial";
    if (partial && j1["fpr_max"].is_null())
        throw UsageError("--measure partial needs inputs computed with --fpr-max");

    auto pick = [&](const json& j) {
        AucResult r;
        r.auc = j[partial ? "partial_auc" : "auc"].get<double>();
        r.se = j[partial ? "partial_se" : "se"].get<double>();
        r.n_pos = j["n_pos"].get<std::uint64_t>();
        r.n_neg = j["n_neg"].get<std::uint64_t>();
        return r;
    };
    const auto r1 = pick(j1);
    const auto r2 = pick(j2);
    const auto cmp = compare_auc(r1, r2, a.r);

    Manifest manifest("compare", argv);
    manifest.config()["r"] = a.r;
    manifest.config()["measure"] = a.measure;
    manifest.input(a.first);
    manifest.input(a.second);

    const fs::path dir(a.out);
    fs::create_directories(dir);
    json report;
    report["auc1"] = r1.auc;
    report["se1"] = r1.se;
    report["auc2"] = r2.auc;
    report["se2"] = r2.se;
    report["r"] = a.r;
    report["z"] = cmp.z;
    report["p"] = cmp.p;
    report["measure"] = a.measure;
    report["fpr_max"] = j1["fpr_max"];
    {
        auto f = open_output(dir / "comparison.json");
        f << report.dump(2) << '\n';
    }
    manifest.output(dir / "comparison.json");
    manifest.write(dir);
    out << "z " << format_double(cmp.z) << ", p " << format_double(cmp.p) << "\n";
    return kExitOk;
}

// synth ----------------------------------------------------------------------

struct SynthArgs {
    std::string config;
    std::string out;
    std::optional<std::size_t> patients;
    std::optional<std::uint64_t> seed;
};

int cmd_synth(const SynthArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    if (!fs::exists(a.config)) throw UsageError("config file " + a.config + " not found");
    SynthConfig cfg;
    try {
        cfg = SynthConfig::from_json_text(read_text(a.config));
        if (a.patients) cfg.n_patients = *a.patients;
        if (a.seed) cfg.seed = *a.seed;
        cfg.validate();
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }

    Manifest manifest("synth", argv);
    manifest.config() = json::parse(cfg.to_json_text());
    manifest.input(a.config);

    const auto result = generate(cfg);
    const fs::path dir(a.out);
    fs::create_directories(dir);
    write_synth(dir, result);

    std::map<std::string, std::pair<json, json>> known;
    for (const auto& p : result.truth.planted) {
        auto& [gp_known, srs_known] = known[p.drug.str()];
        const std::string label = "planted " + p.event_name.str();
        gp_known[label] = json::array({p.event_code.str()});
        srs_known[label] = json::array({p.event_name.str()});
    }
    std::vector<std::string> written = {"patients.csv", "prescriptions.csv", "events.csv",
                                        "srs_reports.csv", "ground_truth.json"};
    if (!known.empty()) fs::create_directories(dir / "known_ades");
    for (const auto& [drug, files] : known) {
        for (const auto& [suffix, content] : {std::pair{".gp.json", &files.first}, {".srs.json", &files.second}}) {
            const std::string name = "known_ades/" + drug + suffix;
            auto f = open_output(dir / name);
            f << content->dump(2) << '\n';
            written.push_back(name);
        }
    }
    for (const auto& name : written) manifest.output(dir / name);
    manifest.write(dir);

    out << "generated " << result.gp.patients.size() << " patients, " << result.gp.prescriptions.size()
        << " prescriptions, " << result.gp.events.size() << " events, " << result.srs.reports.size()
        << " reports over " << result.codes.size() << " event codes\n";
    return kExitOk;
}

}  // namespace

std::vector<std::string> nearest(const std::string& query, const std::vector<std::string>& candidates,
                                 std::size_t limit) {
    auto distance = [](const std::string& s, const std::string& t) {
        std::vector<std::size_t> prev(t.size() + 1), cur(t.size() + 1);
        for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            cur[0] = i;
            for (std::size_t j = 1; j <= t.size(); ++j)
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (s[i - 1] != t[j - 1])});
            std::swap(prev, cur);
        }
        return prev[t.size()];
    };
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& c : candidates) scored.emplace_back(distance(query, c), c);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < std::min(limit, scored.size()); ++i) out.push_back(scored[i].second);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adverse drug event signal detection with ROR/PRR and ROC evaluation", "adr-signal"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ADRSIG_VERSION);

    SignalArgs sig;
    auto* signal = app.add_subcommand("signal", "Compute ROR/PRR for one drug against every event");
    signal->add_option("--source", sig.source, "Database kind")->required()->check(CLI::IsMember({"gp", "srs"}));
    signal->add_option("--drug", sig.drug, "Drug of interest")->required();
    signal->add_option("--method", sig.method, "ror or prr")->capture_default_str();
    signal->add_option("--tcrit", sig.tcrit, "GP window in days, or inf")->capture_default_str();
    signal->add_option("--zero-policy", sig.zero_policy, "strict or haldane")->capture_default_str();
    signal->add_option("--level", sig.level, "Truncate GP event codes to this level first");
    signal->add_option("--data", sig.data_dir, "Directory holding the standard CSV file names");
    signal->add_option("--patients", sig.patients, "patients.csv");
    signal->add_option("--prescriptions", sig.prescriptions, "prescriptions.csv");
    signal->add_option("--events", sig.events, "events.csv");
    signal->add_option("--reports", sig.reports, "srs_reports.csv");
    signal->add_flag("--export-associations", sig.export_associations, "Also write associations.csv");
    signal->add_option("--out", sig.out, "Output directory")->required();

    RocArgs roc;
    auto* roc_cmd = app.add_subcommand("roc", "ROC curve and AUC against known adverse reactions");
    roc_cmd->add_option("--source", roc.source, "Database kind of the signals")->required()->check(CLI::IsMember({"gp", "srs"}));
    roc_cmd->add_option("--signals", roc.signals, "signals.csv from the signal command")->required();
    roc_cmd->add_option("--known", roc.known, "JSON object: reaction name -> list of codes")->required();
    roc_cmd->add_option("--fpr-max", roc.fpr_max, "Also compute the partial AUC up to this FPR");
    roc_cmd->add_option("--out", roc.out, "Output directory")->required();

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "Hanley-McNeil z test between two auc.json files");
    cmp_cmd->add_option("first", cmp.first, "First auc.json")->required();
    cmp_cmd->add_option("second", cmp.second, "Second auc.json")->required();
    cmp_cmd->add_option("--r", cmp.r, "Correlation between the two areas")->capture_default_str();
    cmp_cmd->add_option("--measure", cmp.measure, "auc or partial")->capture_default_str();
    cmp_cmd->add_option("--out", cmp.out, "Output directory")->required();

    SynthArgs syn;
    auto* syn_cmd = app.add_subcommand("synth", "Generate synthetic GP and SRS datasets");
    syn_cmd->add_option("--config", syn.config, "Generator config JSON")->required();
    syn_cmd->add_option("--patients", syn.patients, "Override n_patients");
    syn_cmd->add_option("--seed", syn.seed, "Override seed");
    syn_cmd->add_option("--out", syn.out, "Output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << ADRSIG_VERSION << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << sub->help();
        return kExitUsage;
    }

    try {
        if (signal->parsed()) return cmd_signal(sig, args, out, err);
        if (roc_cmd->parsed()) return cmd_roc(roc, args, out);
        if (cmp_cmd->parsed()) return cmd_compare(cmp, args, out);
        if (syn_cmd->parsed()) return cmd_synth(syn, args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace adrsig::cli
