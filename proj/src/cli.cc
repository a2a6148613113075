// Copyright 2026 The qpurity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpurity/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "qpurity/asymptotics.h"
#include "qpurity/equatorial.h"
#include "qpurity/errors.h"
#include "qpurity/joint_bound.h"
#include "qpurity/kernels.h"
#include "qpurity/separable_sim.h"

#ifndef QPURITY_VERSION
#define QPURITY_VERSION "dev"
#endif

namespace qpurity::cli {

namespace fs = std::filesystem;

namespace {

using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;

    std::string str() const {
        std::string text;
        auto emit = [&](const Row &row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i != 0) {
                    text += ',';
                }
                text += csv_field(row[i]);
            }
            text += '\n';
        };
        emit(header);
        for (const Row &row : rows) {
            emit(row);
        }
        return text;
    }
};

std::string num(double x) {
    return format_double(x);
}

std::string num(long x) {
    return std::to_string(x);
}

std::string num(int x) {
    return std::to_string(x);
}

std::string opt_num(const std::optional<double> &x) {
    return x ? format_double(*x) : std::string();
}

// Flags shared by every subcommand.
struct Common {
    unsigned threads = 0;
    std::string out;
    std::string isa = "auto";
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
    sub->add_option("--out", c.out, "Output CSV path (default: standard output)");
    sub->add_option("--isa", c.isa, "Kernel variant")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

kernels::Isa resolve_isa(const std::string &name) {
    if (name == "scalar") {
        return kernels::Isa::scalar;
    }
    if (name == "avx2") {
        if (kernels::detected_isa() != kernels::Isa::avx2) {
            throw CapabilityError("AVX2 kernels are not available on this CPU or build");
        }
        return kernels::Isa::avx2;
    }
    return kernels::active_isa();
}

BoundOptions bound_options(const Common &c) {
    BoundOptions options;
    options.threads = c.threads;
    options.isa = resolve_isa(c.isa);
    return options;
}

fs::path resolve_out(const std::string &out) {
    fs::path path(out);
    const char *dir = std::getenv(kOutputDirEnv);
    if (path.is_relative() && dir != nullptr && dir[0] != '\0') {
        path = fs::path(dir) / path;
    }
    return path;
}

void write_file(const fs::path &path, const std::string &body) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << body;
    if (!file) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Echo of every option of the chosen subcommand, defaults included.
nlohmann::ordered_json param_echo(const CLI::App *sub) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const CLI::Option *opt : sub->get_options()) {
        if (opt->get_name() == "--help" || opt->get_name().empty()) {
            continue;
        }
        std::string key = opt->get_single_name();
        if (opt->count() > 0) {
            const auto &res = opt->results();
            params[key] = res.size() == 1 ? nlohmann::ordered_json(res[0]) : nlohmann::ordered_json(res);
        } else if (opt->get_type_size() == 0) {
            params[key] = "false";
        } else {
            params[key] = opt->get_default_str();
        }
    }
    return params;
}

struct Output {
    Table table;
    std::optional<std::uint64_t> seed;
    // Secondary CSV (per-trial rows), written next to the main one.
    std::optional<std::pair<std::string, Table>> extra;
};

// --- subcommands ---------------------------------------------------------

Row bound_header(bool with_m) {
    Row h{"row", "n", "prior", "two_j"};
    if (with_m) {
        h.push_back("two_m");
    }
    for (const char *c : {"n_j_log", "v_perp", "v_par", "r_opt", "f_max", "n_times_one_minus_f", "panels"}) {
        h.push_back(c);
    }
    return h;
}

Output joint_bound_cmd(int n, const PriorFamily &prior, bool per_block, const Common &c) {
    JointBoundResult res = max_fidelity(n, prior, bound_options(c));
    Output o;
    o.table.header = bound_header(false);
    if (per_block) {
        for (const BlockTerm &t : res.terms) {
            o.table.rows.push_back({"block", num(n), prior.label(), num(t.two_j), num(t.log_multiplicity),
                                    num(t.v_perp), num(t.v_par), num(t.optimal_guess), "", "", ""});
        }
    }
    o.table.rows.push_back({"summary", num(n), prior.label(), "", "", "", "", "", num(res.f_max),
                            num(n * (1.0 - res.f_max)), num(res.quadrature_panels)});
    return o;
}

Output equatorial_cmd(int n, const PriorFamily &prior, bool per_block, int max_n, const Common &c) {
    EquatorialOptions options;
    options.bound = bound_options(c);
    options.max_copies = max_n;
    EquatorialBoundResult res = max_fidelity_equatorial(n, prior, options);
    Output o;
    o.table.header = bound_header(true);
    if (per_block) {
        for (const EquatorialTerm &t : res.terms) {
            o.table.rows.push_back({"block", num(n), prior.label(), num(t.two_j), num(t.two_m),
                                    num(t.log_multiplicity), num(t.v_perp), num(t.v_par), num(t.optimal_guess), "",
                                    "", ""});
        }
    }
    o.table.rows.push_back({"summary", num(n), prior.label(), "", "", "", "", "", "", num(res.f_max),
                            num(n * (1.0 - res.f_max)), num(res.quadrature_panels)});
    return o;
}

Output fig1_cmd(int n_min, int n_max, int points, const PriorFamily &prior, const Common &c) {
    std::vector<int> counts = log_spaced_counts(n_min, n_max, points);
    std::vector<Fig1Point> curve = fig1_curve(counts, prior, bound_options(c));
    Output o;
    o.table.header = {"n", "prior", "f_max", "n_times_one_minus_f", "joint_asymptote"};
    for (const Fig1Point &p : curve) {
        o.table.rows.push_back(
            {num(p.n_copies), prior.label(), num(p.f_max), num(p.scaled_deficit), num(joint_asymptote(p.n_copies))});
    }
    return o;
}

Row summary_header() {
    return {"protocol",         "n",         "alpha",          "n0",          "n1",          "prior",
            "trials",           "seed",      "fixed_r",        "mean_fidelity", "se_fidelity", "n_times_one_minus_f",
            "se_n_times_one_minus_f", "mean_mse", "se_mse",    "mean_bias",   "se_bias",     "mean_one_minus_cos",
            "se_one_minus_cos", "theta2",    "se_theta2",      "theta4",      "se_theta4",   "joint_f_max"};
}

Row summary_row(const SimulationSummary &s) {
    const double n = s.n_copies;
    return {s.protocol,
            num(s.n_copies),
            s.protocol == "adaptive" ? num(s.alpha) : std::string(),
            num(s.n0),
            num(s.n1),
            s.prior_label,
            num(s.trials_used),
            std::to_string(s.seed),
            opt_num(s.fixed_r),
            num(s.mean_fidelity.mean),
            num(s.mean_fidelity.std_error),
            num(n * (1.0 - s.mean_fidelity.mean)),
            num(n * s.mean_fidelity.std_error),
            num(s.mean_mse.mean),
            num(s.mean_mse.std_error),
            num(s.mean_bias.mean),
            num(s.mean_bias.std_error),
            num(s.mean_one_minus_cos.mean),
            num(s.mean_one_minus_cos.std_error),
            num(s.theta2_moment.mean),
            num(s.theta2_moment.std_error),
            num(s.theta4_moment.mean),
            num(s.theta4_moment.std_error),
            opt_num(s.joint_f_max)};
}

Table trial_table(const std::vector<TrialOutcome> &outcomes) {
    Table t;
    t.header = {"r", "cos_theta", "R", "fidelity", "sq_error"};
    t.rows.reserve(outcomes.size());
    for (const TrialOutcome &o : outcomes) {
        t.rows.push_back({num(o.true_state.purity()), num(o.cos_theta), num(o.purity_estimate), num(o.fidelity),
                          num(o.squared_error)});
    }
    return t;
}

Output simulation_output(const SimulationRun &run, const std::string &per_trial) {
    Output o;
    o.table.header = summary_header();
    o.table.rows.push_back(summary_row(run.summary));
    o.seed = run.summary.seed;
    if (!per_trial.empty()) {
        o.extra.emplace(per_trial, trial_table(run.outcomes));
    }
    return o;
}

Output mse_cmd(const AdaptiveConfig &base, const std::vector<double> &grid) {
    Output o;
    o.table.header = {"r", "n", "alpha", "n0", "n1", "trials", "seed", "mse", "se_mse", "n_times_mse",
                      "se_n_times_mse", "bias", "se_bias", "cr_limit"};
    for (double r : grid) {
        PointwiseMse m = pointwise_mse(r, base);
        const double n = base.n_copies;
        o.table.rows.push_back({num(r), num(base.n_copies), num(base.alpha), num(base.n0()), num(base.n1()),
                                num(base.trials), std::to_string(base.seed), num(m.mse.mean), num(m.mse.std_error),
                                num(n * m.mse.mean), num(n * m.mse.std_error), num(m.bias.mean),
                                num(m.bias.std_error), num(1.0 - r * r)});
    }
    o.seed = base.seed;
    return o;
}

Output predict_cmd(int n, double alpha, double lambda, const std::string &kind) {
    AsymptoticPrediction p = kind == "joint" ? joint_prediction(n) : adaptive_prediction(n, alpha, lambda);
    Output o;
    o.table.header = {"kind", "n", "alpha", "lambda", "term", "value"};
    Row prefix{prediction_kind_name(p.kind), num(n), kind == "joint" ? std::string() : num(alpha), num(lambda)};
    auto add = [&](const std::string &term, double value) {
        Row row = prefix;
        row.push_back(term);
        row.push_back(num(value));
        o.table.rows.push_back(std::move(row));
    };
    for (const PredictionTerm &t : p.deficit_terms) {
        add(t.name, t.value);
    }
    add("deficit", p.deficit());
    add("n_times_deficit", n * p.deficit());
    add("fidelity", p.value);
    return o;
}

Output compare_cmd(const AdaptiveConfig &config, const Common &c) {
    JointBoundResult exact = max_fidelity(config.n_copies, config.prior, bound_options(c));
    AdaptiveConfig sim_config = config;
    sim_config.compare_joint = false;
    SimulationSummary sim = run_adaptive(sim_config);
    std::optional<AsymptoticPrediction> pred;
    if (!config.prior.is_tabulated()) {
        pred = adaptive_prediction(config.n_copies, config.alpha, config.prior.lambda());
    }
    const double n = config.n_copies;
    Output o;
    o.table.header = {"n",         "alpha",         "prior",        "trials",          "seed",
                      "exact_f_max", "exact_n_times_one_minus_f", "sim_fidelity", "sim_se",
                      "sim_n_times_one_minus_f", "sim_se_scaled", "predicted_fidelity",
                      "predicted_n_times_deficit", "prediction_correction"};
    double correction = 0.0;
    if (pred) {
        for (const PredictionTerm &t : pred->deficit_terms) {
            if (t.name != "one_over_2n1") {
                correction += t.value;
            }
        }
    }
    o.table.rows.push_back({num(config.n_copies), num(config.alpha), config.prior.label(), num(config.trials),
                            std::to_string(config.seed), num(exact.f_max), num(n * (1.0 - exact.f_max)),
                            num(sim.mean_fidelity.mean), num(sim.mean_fidelity.std_error),
                            num(n * (1.0 - sim.mean_fidelity.mean)), num(n * sim.mean_fidelity.std_error),
                            pred ? num(pred->value) : std::string(), pred ? num(n * pred->deficit()) : std::string(),
                            pred ? num(correction) : std::string()});
    o.seed = config.seed;
    return o;
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size()) {
            throw DomainError("malformed purity grid entry: " + item);
        }
        grid.push_back(v);
    }
    if (grid.empty()) {
        throw DomainError("empty purity grid");
    }
    return grid;
}

}  // namespace

PriorFamily parse_prior(std::string_view text) {
    if (text == "hard-sphere") {
        return PriorFamily::hard_sphere();
    }
    if (text == "bures") {
        return PriorFamily::bures();
    }
    if (text.starts_with("lambda=")) {
        std::string_view v = text.substr(7);
        double lambda = 0.0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), lambda);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            throw DomainError("malformed lambda in prior: " + std::string(text));
        }
        if (!(lambda >= 0.0 && lambda < 1.0)) {
            throw DomainError("prior lambda must lie in [0, 1)");
        }
        return PriorFamily::with_lambda(lambda);
    }
    if (text.starts_with("table=")) {
        std::ifstream file{std::string(text.substr(6))};
        if (!file) {
            throw DomainError("cannot read prior table " + std::string(text.substr(6)));
        }
        std::vector<double> knots, weights;
        std::string line;
        while (std::getline(file, line)) {
            if (line.empty() || line[0] == '#') {
                continue;
            }
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fields(line);
            double r = 0.0, w = 0.0;
            if (!(fields >> r >> w)) {
                if (knots.empty()) {
                    continue;  // header row
                }
                throw DomainError("malformed prior table row: " + line);
            }
            knots.push_back(r);
            weights.push_back(w);
        }
        return PriorFamily::tabulated(std::move(knots), std::move(weights));
    }
    throw DomainError("unknown prior '" + std::string(text) + "' (hard-sphere, bures, lambda=<x>, table=<path>)");
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Purity estimation bounds and protocol simulations for qubits", "qpurity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QPURITY_VERSION);
    app.option_defaults()->always_capture_default();

    Common common;
    std::string prior_text;
    int n = 0;
    int n_min = 10, n_max = 5000, points = 30, max_n = 512;
    bool per_block = false;
    double alpha = 0.7, lambda = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::optional<double> fixed_r;
    std::string per_trial, kind = "auto", grid_text = "0.5";
    bool no_joint = false;

    auto add_n = [&](CLI::App *sub) { sub->add_option("--n", n, "Number of copies N")->required(); };
    auto add_prior = [&](CLI::App *sub) {
        sub->add_option("--prior", prior_text, "hard-sphere | bures | lambda=<x> | table=<path>")->required();
    };
    auto add_sim = [&](CLI::App *sub) {
        sub->add_option("--trials", trials, "Monte Carlo trials")->required()->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "64-bit seed")->required();
    };

    CLI::App *joint = app.add_subcommand("joint-bound", "Exact optimal fidelity of a joint measurement");
    add_n(joint);
    add_prior(joint);
    joint->add_flag("--per-block", per_block, "Emit one row per spin block");

    CLI::App *equatorial = app.add_subcommand("equatorial-bound", "Exact bound for states in the x-y plane");
    add_n(equatorial);
    add_prior(equatorial);
    equatorial->add_flag("--per-block", per_block, "Emit one row per (j, m) block");
    equatorial->add_option("--max-n", max_n, "Refuse N above this ceiling");

    CLI::App *fig1 = app.add_subcommand("fig1", "N(1 - F_max) over log-spaced N");
    fig1->add_option("--n-min", n_min)->check(CLI::PositiveNumber);
    fig1->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    fig1->add_option("--points", points)->check(CLI::PositiveNumber);
    add_prior(fig1);

    CLI::App *adaptive = app.add_subcommand("simulate-adaptive", "Two-stage separable protocol");
    add_n(adaptive);
    adaptive->add_option("--alpha", alpha, "Tomography exponent, N0 = round(N^alpha)");
    add_prior(adaptive);
    add_sim(adaptive);
    adaptive->add_option("--fixed-r", fixed_r, "Fix the true purity");
    adaptive->add_option("--per-trial", per_trial, "Also write trial-level CSV to this path");
    adaptive->add_flag("--no-joint", no_joint, "Skip the exact joint-bound column");

    CLI::App *greedy = app.add_subcommand("simulate-greedy", "Fixed-axis baseline");
    add_n(greedy);
    add_prior(greedy);
    add_sim(greedy);
    greedy->add_option("--fixed-r", fixed_r, "Fix the true purity");
    greedy->add_option("--per-trial", per_trial, "Also write trial-level CSV to this path");

    CLI::App *mse = app.add_subcommand("mse", "Pointwise mean square error of the adaptive estimate");
    add_n(mse);
    mse->add_option("--alpha", alpha);
    mse->add_option("--r", grid_text, "Comma-separated purity grid");
    add_sim(mse);

    CLI::App *predict = app.add_subcommand("predict", "Asymptotic fidelity predictions");
    add_n(predict);
    predict->add_option("--alpha", alpha);
    predict->add_option("--lambda", lambda)->required();
    predict->add_option("--kind", kind)->check(CLI::IsMember({"auto", "joint", "adaptive"}));

    CLI::App *compare = app.add_subcommand("compare", "Exact bound vs simulation vs prediction");
    add_n(compare);
    compare->add_option("--alpha", alpha);
    add_prior(compare);
    add_sim(compare);

    for (CLI::App *sub : {joint, equatorial, fig1, adaptive, greedy, mse, predict, compare}) {
        add_common(sub, common);
    }

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) {
            args.emplace_back(argv[i]);
        }
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    CLI::App *sub = app.get_subcommands().front();
    const auto start = std::chrono::steady_clock::now();
    try {
        Output result;
        auto adaptive_config = [&]() {
            AdaptiveConfig config{.n_copies = n,
                                  .alpha = alpha,
                                  .prior = parse_prior(prior_text.empty() ? "hard-sphere" : prior_text),
                                  .trials = trials,
                                  .seed = seed,
                                  .clamp = ClampPolicy::clamp_to_zero,
                                  .threads = common.threads,
                                  .fixed_r = fixed_r,
                                  .compare_joint = !no_joint};
            return config;
        };
        if (sub == joint) {
            result = joint_bound_cmd(n, parse_prior(prior_text), per_block, common);
        } else if (sub == equatorial) {
            result = equatorial_cmd(n, parse_prior(prior_text), per_block, max_n, common);
        } else if (sub == fig1) {
            result = fig1_cmd(n_min, n_max, points, parse_prior(prior_text), common);
        } else if (sub == adaptive) {
            resolve_isa(common.isa);
            result = simulation_output(simulate_adaptive(adaptive_config()), per_trial);
        } else if (sub == greedy) {
            GreedyConfig config{.n_copies = n,
                                .prior = parse_prior(prior_text),
                                .trials = trials,
                                .seed = seed,
                                .threads = common.threads,
                                .fixed_r = fixed_r,
                                .fixed_direction = std::nullopt};
            result = simulation_output(simulate_greedy(config), per_trial);
        } else if (sub == mse) {
            AdaptiveConfig config = adaptive_config();
            config.validate();
            result = mse_cmd(config, parse_grid(grid_text));
        } else if (sub == predict) {
            result = predict_cmd(n, alpha, lambda, kind);
        } else {
            AdaptiveConfig config = adaptive_config();
            config.validate();
            result = compare_cmd(config, common);
        }

        const std::string body = result.table.str();
        std::optional<fs::path> extra_path;
        if (result.extra) {
            extra_path = resolve_out(result.extra->first);
            write_file(*extra_path, result.extra->second.str());
        }
        std::optional<fs::path> out_path;
        if (!common.out.empty()) {
            out_path = resolve_out(common.out);
            write_file(*out_path, body);
        } else {
            out << body << std::flush;
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        nlohmann::ordered_json manifest;
        manifest["tool"] = "qpurity";
        manifest["version"] = QPURITY_VERSION;
        manifest["csv_schema"] = kCsvSchemaVersion;
        manifest["subcommand"] = sub->get_name();
        manifest["params"] = param_echo(sub);
        manifest["seed"] = result.seed ? nlohmann::ordered_json(*result.seed) : nlohmann::ordered_json(nullptr);
        manifest["isa"] = kernels::isa_name(resolve_isa(common.isa));
        manifest["output"] = out_path ? out_path->string() : std::string("-");
        manifest["rows"] = result.table.rows.size();
        manifest["digest"] = "fnv1a64:" + hex64(fnv1a64(body));
        if (extra_path) {
            manifest["per_trial_output"] = extra_path->string();
        }
        manifest["duration_s"] = seconds;
        const std::string line = manifest.dump();
        err << "manifest " << line << '\n';
        if (out_path) {
            write_file(fs::path(out_path->string() + ".manifest.json"), line + "\n");
        }
        return kOk;
    } catch (const DomainError &e) {
        err << "qpurity " << sub->get_name() << ": invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const CapabilityError &e) {
        err << "qpurity " << sub->get_name() << ": unsupported: " << e.what() << '\n';
        return kCapability;
    } catch (const NumericalError &e) {
        err << "qpurity " << sub->get_name() << ": numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::invalid_argument &e) {
        err << "qpurity " << sub->get_name() << ": invalid argument: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range &e) {
        err << "qpurity " << sub->get_name() << ": invalid argument: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace qpurity::cli
