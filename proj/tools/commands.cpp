// Copyright 2026 The qetnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qetnet/errors.hpp"
#include "qetnet/protocol.hpp"
#include "qetnet/published_values.hpp"
#include "qetnet/sampler.hpp"
#include "qetnet/teleport.hpp"
#include "qetnet/tiling.hpp"

namespace qetnet::cli {

namespace {

using nlohmann::ordered_json;

/// Thrown for parameter combinations rejected before any work starts.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sampled values must sit within this many standard errors of the exact
// value; exact values within published_tolerance() of the published one.
constexpr double kSampledSigmas = 5.0;
// Relay and direct runs must agree to this absolute tolerance.
constexpr double kRelayTolerance = 1e-10;

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << text;
    if (!file.flush()) throw Error("write to '" + path + "' failed");
}

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw UsageError(std::string(name) + " must be positive and finite");
    }
}

bool wants_exact(MethodSelection m) { return m != MethodSelection::Sampled; }
bool wants_sampled(MethodSelection m) { return m != MethodSelection::Exact; }

const char* model_name(ModelKind kind) { return kind == ModelKind::Minimal ? "minimal" : "star"; }

ordered_json record_json(const QetRecord& r)
{
    ordered_json j;
    j["model"] = model_name(r.model);
    ordered_json params{{"h", r.h}, {"k", r.k}};
    if (r.model == ModelKind::Star) {
        params["q"] = r.q;
        params["receiver_count"] = r.receiver_count;
        params["coupling_scale"] = r.coupling_scale;
    }
    j["params"] = params;
    j["method"] = to_string(r.method);
    j["E0"] = r.e0;
    ordered_json receivers = ordered_json::object();
    for (const auto& [site, e] : r.receivers) {
        receivers[std::to_string(site)] = {{"HX", e.hx}, {"HZ", e.hz}, {"E", e.energy}, {"E_B", e.extracted}};
    }
    j["receivers"] = receivers;
    ordered_json angles = ordered_json::object();
    for (const auto& [site, a] : r.angles) {
        angles[std::to_string(site)] = {{"theta", a.theta}, {"xi", a.xi}, {"eta", a.eta}};
    }
    j["theta"] = angles;
    if (!r.stderrs.empty()) {
        ordered_json se = ordered_json::object();
        for (const auto& [key, value] : r.stderrs) se[key] = value;
        j["stderr"] = se;
    }
    return j;
}

std::string record_csv(const std::vector<QetRecord>& records)
{
    std::ostringstream os;
    os << "method,observable,site,mean,stderr\n";
    for (const auto& r : records) {
        const std::string m = to_string(r.method);
        auto se = [&](const std::string& key) {
            auto it = r.stderrs.find(key);
            return it == r.stderrs.end() ? 0.0 : it->second;
        };
        os << m << ",E0,0," << fmt(r.e0) << ',' << fmt(se("E0")) << '\n';
        for (const auto& [site, e] : r.receivers) {
            const std::string s = std::to_string(site);
            os << m << ",HX," << s << ',' << fmt(e.hx) << ',' << fmt(se("HX" + s)) << '\n';
            os << m << ",HZ," << s << ',' << fmt(e.hz) << ',' << fmt(se("HZ" + s)) << '\n';
            os << m << ",E," << s << ',' << fmt(e.energy) << ',' << fmt(se("E" + s)) << '\n';
        }
    }
    return os.str();
}

std::string records_text(const std::vector<QetRecord>& records, OutputFormat format)
{
    if (format == OutputFormat::Csv) return record_csv(records);
    ordered_json arr = ordered_json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    return arr.dump(2) + "\n";
}

/// Shot-sampled counterpart of an exact record; X and Z readouts use
/// separate streams derived from `stream`.
QetRecord sampled_record(const QetRecord& exact, const PreparedModel& model,
                         const std::vector<std::size_t>& receivers, std::uint64_t shots,
                         std::uint64_t seed, std::uint64_t stream)
{
    const OutcomeTallies z_run = sample_protocol(model.bundle, model.ground, exact.angles,
                                                 ShotPlan{BasisRun::Z, shots, seed, 2 * stream});
    const OutcomeTallies x_run = sample_protocol(model.bundle, model.ground, exact.angles,
                                                 ShotPlan{BasisRun::X, shots, seed, 2 * stream + 1});
    QetRecord r = exact;
    r.method = Method::Sampled;
    r.receivers.clear();
    const EstimateRow e0 = estimate(z_run, model.bundle.sender_local());
    r.e0 = e0.mean;
    r.stderrs["E0"] = e0.stderr_;
    for (std::size_t j : receivers) {
        const EstimateRow hx = estimate(x_run, model.bundle.x_local(j));
        const EstimateRow hz = estimate(z_run, model.bundle.z_local(j));
        ReceiverEnergy e;
        e.hx = hx.mean;
        e.hz = hz.mean;
        e.energy = hx.mean + hz.mean;
        e.extracted = -e.energy;
        r.receivers.emplace(j, e);
        const std::string s = std::to_string(j);
        r.stderrs["HX" + s] = hx.stderr_;
        r.stderrs["HZ" + s] = hz.stderr_;
        r.stderrs["E" + s] = std::hypot(hx.stderr_, hz.stderr_);
    }
    return r;
}

struct CellCheck {
    std::optional<PublishedCell> published;
    std::string status;  // pass, fail or n/a
};

}  // namespace

int cmd_table1(const Table1Command& cmd, std::ostream& out, std::ostream& err)
{
    if (cmd.q_values.empty() || cmd.h_values.empty()) throw UsageError("table1: empty --q or --h list");
    for (int q : cmd.q_values) {
        if (q < 6 || static_cast<std::size_t>(q) > kMaxDenseQubits) {
            throw UsageError("table1: q must be in 6.." + std::to_string(kMaxDenseQubits) + ", got " +
                             std::to_string(q));
        }
    }
    for (double h : cmd.h_values) require_positive(h, "h");
    require_positive(cmd.k, "k");
    if (wants_sampled(cmd.method) && cmd.shots < 1) throw UsageError("table1: shots must be >= 1");

    std::vector<Table1Config> configs;
    for (int q : cmd.q_values) {
        for (double h : cmd.h_values) configs.push_back({q, h, cmd.k});
    }
    // Sampled rows are checked against exact ones, so --check computes both.
    Table1Options options{cmd.shots, cmd.seed, wants_exact(cmd.method) || cmd.check,
                          wants_sampled(cmd.method)};
    const std::vector<Table1Row> all = estimate_table1(configs, options);

    auto same_cell = [](const Table1Row& a, const Table1Row& b) {
        return a.q == b.q && a.h == b.h && a.k == b.k && a.observable == b.observable && a.site == b.site;
    };
    std::vector<Table1Row> rows;
    std::vector<CellCheck> checks;
    std::size_t failures = 0;
    std::size_t checked = 0;
    for (const auto& row : all) {
        if (row.method == Method::Exact && !wants_exact(cmd.method)) continue;
        CellCheck c{find_published(row.q, row.h, row.k, row.observable, row.site), "n/a"};
        if (row.method == Method::Exact) {
            if (c.published) {
                c.status = std::abs(row.mean - c.published->mean) <= published_tolerance(*c.published)
                               ? "pass"
                               : "fail";
            }
        } else {
            const auto exact = std::find_if(all.begin(), all.end(), [&](const Table1Row& r) {
                return r.method == Method::Exact && same_cell(r, row);
            });
            if (exact != all.end()) {
                c.status = std::abs(row.mean - exact->mean) <= kSampledSigmas * row.stderr_ ? "pass" : "fail";
            }
        }
        if (c.status != "n/a") ++checked;
        if (c.status == "fail") ++failures;
        rows.push_back(row);
        checks.push_back(std::move(c));
    }

    std::string text;
    if (cmd.wide) {
        text = table1_wide_csv(rows);
    } else if (cmd.format == OutputFormat::Csv) {
        std::istringstream base(table1_csv(rows));
        std::ostringstream os;
        std::string line;
        std::getline(base, line);
        os << line << ",reference_mean,reference_stderr,check\n";
        for (const auto& c : checks) {
            std::getline(base, line);
            os << line << ',';
            if (c.published) os << fmt(c.published->mean) << ',' << fmt(c.published->stderr_);
            else os << ',';
            os << ',' << c.status << '\n';
        }
        text = os.str();
    } else {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            ordered_json j{{"tiling", "{3," + std::to_string(r.q) + "}"},
                           {"h", r.h},
                           {"k", r.k},
                           {"observable", r.observable},
                           {"site", r.site},
                           {"method", to_string(r.method)},
                           {"mean", r.mean},
                           {"stderr", r.stderr_},
                           {"shots", r.shots},
                           {"seed", r.seed}};
            if (checks[i].published) {
                j["reference_mean"] = checks[i].published->mean;
                j["reference_stderr"] = checks[i].published->stderr_;
            }
            j["check"] = checks[i].status;
            arr.push_back(std::move(j));
        }
        text = arr.dump(2) + "\n";
    }
    emit(text, cmd.out, out);

    if (cmd.check) {
        err << "check: " << (checked - failures) << "/" << checked << " cells within tolerance\n";
        if (failures > 0) return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream&)
{
    require_positive(cmd.h_min, "h-min");
    require_positive(cmd.k_min, "k-min");
    if (cmd.h_max < cmd.h_min || cmd.k_max < cmd.k_min) throw UsageError("sweep: max below min");
    if (cmd.points < 2) throw UsageError("sweep: need at least 2 points per axis");
    auto axis = [&](double lo, double hi) {
        std::vector<double> v(static_cast<std::size_t>(cmd.points));
        for (int i = 0; i < cmd.points; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (cmd.points - 1);
        return v;
    };
    const SweepGrid grid = sweep_extracted_energy(axis(cmd.h_min, cmd.h_max), axis(cmd.k_min, cmd.k_max));
    std::ostringstream os;
    os << "h,k,E_B" << (cmd.with_h1 ? ",E_B_H1" : "") << '\n';
    for (std::size_t a = 0; a < grid.h_values.size(); ++a) {
        for (std::size_t b = 0; b < grid.k_values.size(); ++b) {
            os << fmt(grid.h_values[a]) << ',' << fmt(grid.k_values[b]) << ',' << fmt(grid.extracted[a][b]);
            if (cmd.with_h1) os << ',' << fmt(grid.extracted_h1[a][b]);
            os << '\n';
        }
    }
    emit(os.str(), cmd.out, out);
    return kExitOk;
}

int cmd_tiling(const TilingCommand& cmd, std::ostream& out, std::ostream& err)
{
    if (cmd.p != 3) throw UsageError("tiling: only p = 3 is supported");
    if (cmd.q < 3) throw UsageError("tiling: q must be at least 3");
    if (cmd.depth < 0) throw UsageError("tiling: depth must be non-negative");
    const Curvature curvature = classify(cmd.p, cmd.q);
    const std::string name = "{" + std::to_string(cmd.p) + "," + std::to_string(cmd.q) + "}";
    if (cmd.q < 6) {
        emit("# " + name + " " + std::string(to_string(curvature)) + "\n", cmd.out, out);
        err << "warning: " << name << " is " << to_string(curvature)
            << "; the star distribution model requires q >= 6\n";
        return kExitOk;
    }
    const TilingGraph graph = generate({cmd.p, cmd.q, cmd.depth});
    emit("# " + name + " " + std::string(to_string(curvature)) + "\n" + ring_sizes_csv(graph), cmd.out, out);
    if (!cmd.edges_out.empty()) emit(export_edges(graph), cmd.edges_out, out);
    return kExitOk;
}

int cmd_qet(const QetCommand& cmd, std::ostream& out, std::ostream&)
{
    require_positive(cmd.h, "h");
    require_positive(cmd.k, "k");
    if (wants_sampled(cmd.method) && cmd.shots < 1) throw UsageError("qet: shots must be >= 1");
    const MinimalModelParams params{cmd.h, cmd.k};
    const QetRecord exact = run_minimal_qet(params);
    std::vector<QetRecord> records;
    if (wants_exact(cmd.method)) records.push_back(exact);
    if (wants_sampled(cmd.method)) {
        records.push_back(sampled_record(exact, prepare_minimal(params), {1}, cmd.shots, cmd.seed, 0));
    }
    emit(records_text(records, cmd.format), cmd.out, out);
    return kExitOk;
}

int cmd_qed(const QedCommand& cmd, std::ostream& out, std::ostream&)
{
    require_positive(cmd.h, "h");
    require_positive(cmd.k, "k");
    if (cmd.q < 6) throw UsageError("qed: q must be at least 6");
    if (wants_sampled(cmd.method) && cmd.shots < 1) throw UsageError("qed: shots must be >= 1");
    const StarModelParams params = cmd.table_convention
                                       ? StarModelParams::table_convention(cmd.q, cmd.h, cmd.k)
                                       : StarModelParams{cmd.h, cmd.k, cmd.q};
    try {
        params.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    for (std::size_t j : cmd.receivers) {
        if (j == 0 || j > static_cast<std::size_t>(params.receivers())) {
            throw UsageError("qed: receiver " + std::to_string(j) + " outside 1.." +
                             std::to_string(params.receivers()));
        }
    }
    const PreparedModel model = prepare_star(params);
    const QetRecord exact = run_qed(model, params, cmd.receivers);
    std::vector<QetRecord> records;
    if (wants_exact(cmd.method)) records.push_back(exact);
    if (wants_sampled(cmd.method)) {
        records.push_back(sampled_record(exact, model, cmd.receivers, cmd.shots, cmd.seed,
                                         config_stream_id({cmd.q, cmd.h, cmd.k})));
    }
    emit(records_text(records, cmd.format), cmd.out, out);
    return kExitOk;
}

int cmd_longrange(const LongRangeCommand& cmd, std::ostream& out, std::ostream& err)
{
    require_positive(cmd.h, "h");
    require_positive(cmd.k, "k");
    if (cmd.hops < 1) throw UsageError("longrange: hops must be >= 1");
    const MinimalModelParams params{cmd.h, cmd.k};
    const LongRangeResult relay = run_longrange_qet(params, cmd.hops, cmd.seed);
    const QetRecord direct = run_minimal_qet(params);

    const ReceiverEnergy& a = relay.record.receivers.at(1);
    const ReceiverEnergy& b = direct.receivers.at(1);
    const double deviation = std::max({std::abs(relay.record.e0 - direct.e0), std::abs(a.hx - b.hx),
                                       std::abs(a.hz - b.hz), std::abs(a.energy - b.energy),
                                       std::abs(a.extracted - b.extracted),
                                       std::abs(relay.record.angles.at(1).theta - direct.angles.at(1).theta)});

    ordered_json j = record_json(relay.record);
    j["hops"] = cmd.hops;
    j["seed"] = cmd.seed;
    j["max_deviation_from_direct"] = deviation;
    j["messages"] = relay.transcript.messages().size();
    emit(j.dump(2) + "\n", cmd.out, out);
    if (!cmd.transcript_out.empty()) emit(relay.transcript.to_text(), cmd.transcript_out, out);

    if (!(deviation <= kRelayTolerance)) {
        err << "longrange: relayed record deviates from the direct run by " << deviation << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantum energy teleportation and distribution simulator", "qetnet"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file");

    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};
    const std::map<std::string, MethodSelection> methods{
        {"exact", MethodSelection::Exact}, {"sampled", MethodSelection::Sampled}, {"both", MethodSelection::Both}};
    auto add_format = [&](CLI::App* sub, OutputFormat& target) {
        sub->add_option("--format", target, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };
    auto add_method = [&](CLI::App* sub, MethodSelection& target) {
        sub->add_option("--method", target, "exact, sampled or both")
            ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    };

    Table1Command t1;
    auto* table1 = app.add_subcommand("table1", "Reproduce the {3,q} benchmark table");
    table1->add_option("--q", t1.q_values, "Tilings {3,q}")->delimiter(',');
    table1->add_option("--h", t1.h_values, "Field strengths")->delimiter(',');
    table1->add_option("--k", t1.k, "Coupling");
    table1->add_option("--shots", t1.shots, "Shots per basis run");
    table1->add_option("--seed", t1.seed, "Master seed");
    add_method(table1, t1.method);
    add_format(table1, t1.format);
    table1->add_flag("--wide", t1.wide, "One line per config, observables as columns");
    table1->add_flag("--check", t1.check, "Exit 1 if any cell is outside tolerance");
    table1->add_option("--out", t1.out, "Output file (default stdout)");

    SweepCommand sw;
    auto* sweep = app.add_subcommand("sweep", "Extracted energy E_B over an (h, k) grid");
    sweep->add_option("--h-min", sw.h_min);
    sweep->add_option("--h-max", sw.h_max);
    sweep->add_option("--k-min", sw.k_min);
    sweep->add_option("--k-max", sw.k_max);
    sweep->add_option("--points", sw.points, "Grid points per axis");
    sweep->add_flag("--with-h1", sw.with_h1, "Also emit the H1-only column");
    sweep->add_option("--out", sw.out);

    TilingCommand tl;
    auto* tiling = app.add_subcommand("tiling", "Ring sizes of a {p,q} tiling");
    tiling->add_option("--p", tl.p);
    tiling->add_option("--q", tl.q);
    tiling->add_option("--depth", tl.depth);
    tiling->add_option("--edges", tl.edges_out, "Write the edge list to this file");
    tiling->add_option("--out", tl.out);

    QetCommand qt;
    auto* qet = app.add_subcommand("qet", "Two-qubit QET");
    qet->add_option("--h", qt.h);
    qet->add_option("--k", qt.k);
    qet->add_option("--shots", qt.shots);
    qet->add_option("--seed", qt.seed);
    add_method(qet, qt.method);
    add_format(qet, qt.format);
    qet->add_option("--out", qt.out);

    QedCommand qd;
    auto* qed = app.add_subcommand("qed", "Distribution on a {3,q} star");
    qed->add_option("--h", qd.h);
    qed->add_option("--k", qd.k);
    qed->add_option("--q", qd.q);
    qed->add_option("--receivers", qd.receivers, "Receiver sites")->delimiter(',');
    std::string convention = "literal";
    qed->add_option("--convention", convention, "literal (q receivers) or table (q-1 receivers, 2k coupling)")
        ->check(CLI::IsMember({"literal", "table"}));
    qed->add_option("--shots", qd.shots);
    qed->add_option("--seed", qd.seed);
    add_method(qed, qd.method);
    add_format(qed, qd.format);
    qed->add_option("--out", qd.out);

    LongRangeCommand lr;
    auto* longrange = app.add_subcommand("longrange", "QET with the receiver qubit relayed by teleportation");
    longrange->add_option("--h", lr.h);
    longrange->add_option("--k", lr.k);
    longrange->add_option("--hops", lr.hops);
    longrange->add_option("--seed", lr.seed);
    longrange->add_option("--out", lr.out, "Record file (default stdout)");
    longrange->add_option("--transcript", lr.transcript_out, "Classical message transcript file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (table1->parsed()) return cmd_table1(t1, out, err);
        if (sweep->parsed()) return cmd_sweep(sw, out, err);
        if (tiling->parsed()) return cmd_tiling(tl, out, err);
        if (qet->parsed()) return cmd_qet(qt, out, err);
        if (qed->parsed()) {
            qd.table_convention = convention == "table";
            return cmd_qed(qd, out, err);
        }
        if (longrange->parsed()) return cmd_longrange(lr, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace qetnet::cli
