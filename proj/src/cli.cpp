// Copyright 2026 The ptmoments Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptm/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptm/ensembles.hpp"
#include "ptm/errors.hpp"
#include "ptm/haar_analytics.hpp"
#include "ptm/pxp.hpp"
#include "ptm/shadows.hpp"
#include "ptm/stabilizer.hpp"
#include "ptm/stats.hpp"

#ifndef PTM_VERSION
#define PTM_VERSION "unknown"
#endif

namespace ptm::cli {

namespace {

struct Options {
    int na = -1;
    int nb = -1;
    int nc = 0;
    int nab = -1;
    int nc_max = -1;
    std::string grid;
    double max_fraction = 0.75;
    std::string method = "exact";
    int samples = 100;
    std::uint64_t seed = 0;
    int chi = 8;
    double epsilon = 0.0;
    int nswap = 0;
    bool no_negativity = false;
    std::string triple;
    int n = 10;
    std::string quench = "polarized";
    std::vector<double> window{20.0, 50.0};
    int snapshots = 300;
    std::string c_layout = "block";
    int ns = 64;
    int nu = 100;
    int nm = 10;
    std::size_t budget = 100000;
    std::string format = "csv";
    std::string out;
    int threads = 0;
};

std::vector<Tripartition> resolve_grid(const Options &o) {
    if (o.grid.empty()) {
        if (o.na < 0 || o.nb < 0) {
            throw ValidationError("--na and --nb are required without --grid");
        }
        return {Tripartition(o.na, o.nb, o.nc)};
    }
    if (o.nab < 2) {
        throw ValidationError("--grid needs --nab >= 2");
    }
    if (o.grid == "full") {
        return ensembles::full_grid(o.nab, o.nc_max < 0 ? o.nab : o.nc_max);
    }
    int rows = 0;
    int cols = 0;
    char x = 0;
    std::istringstream in(o.grid);
    if (in >> rows >> x >> cols && x == 'x' && in.eof() && rows > 0 && cols > 1) {
        return ensembles::fraction_grid(o.nab, rows, cols, o.max_fraction);
    }
    throw ValidationError("--grid must be 'full' or RxC, got '" + o.grid + "'");
}

void add_stats_rows(std::vector<Row> &rows, const std::string &family,
                    const Tripartition &t, const stats::EnsembleStats &st) {
    const auto n = static_cast<std::uint64_t>(st.count);
    const auto push = [&](const char *q, double v, double e) {
        rows.push_back({family, t, q, v, e, n, st.seed});
    };
    using stats::Quantity;
    push("p2", st.mean_of(Quantity::P2), st.error_of(Quantity::P2));
    push("p3", st.mean_of(Quantity::P3), st.error_of(Quantity::P3));
    push("p4", st.mean_of(Quantity::P4), st.error_of(Quantity::P4));
    push("r2_tilde", st.r2_tilde.value, st.r2_tilde.error);
    push("r2_mean", st.mean_of(Quantity::R2), st.error_of(Quantity::R2));
    if (std::isfinite(st.mean_of(Quantity::Negativity))) {
        push("negativity", st.mean_of(Quantity::Negativity),
             st.error_of(Quantity::Negativity));
    }
    push("e3", st.e3_tilde.value, st.e3_tilde.error);
}

std::vector<Row> run_haar_analytic(const Options &o) {
    const auto grid = resolve_grid(o);
    const auto scan =
        ensembles::analytic_scan(grid, ensembles::method_from_string(o.method), o.epsilon);
    const std::string family = o.epsilon > 0.0 ? "noisy-haar" : "haar";
    std::vector<Row> rows;
    for (const auto &r : scan) {
        for (int k = 2; k <= 4; ++k) {
            rows.push_back({family, r.partition, "p" + std::to_string(k),
                            r.moments.value(k), 0.0, 0, o.seed});
        }
        rows.push_back({family, r.partition, "r2_tilde", r.r2_tilde, 0.0, 0, o.seed});
        rows.push_back({family, r.partition, "e3", r.e3_tilde, 0.0, 0, o.seed});
    }
    return rows;
}

std::vector<Row> run_family(const Options &o, ensembles::Family f) {
    ensembles::FamilyParams p;
    p.epsilon = o.epsilon;
    p.chi = o.chi;
    p.n_swap = o.nswap;
    p.with_negativity = !o.no_negativity;
    const auto grid = resolve_grid(o);
    const auto scan = ensembles::phase_diagram_scan(f, p, grid, o.samples, o.seed);
    std::vector<Row> rows;
    for (const auto &r : scan) {
        add_stats_rows(rows, std::string(ensembles::to_string(f)), r.partition, r.stats);
    }
    return rows;
}

stabilizer::StabilizerTriple parse_triple(const std::string &s) {
    std::vector<int> v;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(tok, &used));
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
        } catch (const std::logic_error &) {
            throw ValidationError("--triple: bad integer '" + tok + "'");
        }
    }
    if (v.size() != 7) {
        throw ValidationError("--triple needs 7 comma-separated counts "
                              "s_A,s_B,s_C,g_ABC,e_AB,e_AC,e_BC");
    }
    stabilizer::StabilizerTriple t{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    t.validate();
    return t;
}

std::vector<Row> run_stabilizer(const Options &o) {
    if (o.triple.empty()) {
        return run_family(o, ensembles::Family::Stabilizer);
    }
    const auto tr = parse_triple(o.triple);
    const Tripartition t = tr.tripartition();
    const MomentSet m = stabilizer::stab_pt_moments(tr);
    const auto inv = stabilizer::stab_invariants(tr);
    std::vector<Row> rows;
    for (int k = 2; k <= 4; ++k) {
        rows.push_back({"stabilizer", t, "p" + std::to_string(k), m.value(k), 0.0, 1,
                        o.seed});
    }
    rows.push_back({"stabilizer", t, "r2_tilde", inv.r2, 0.0, 1, o.seed});
    rows.push_back({"stabilizer", t, "r2_mean", inv.r2, 0.0, 1, o.seed});
    rows.push_back({"stabilizer", t, "negativity", inv.negativity, 0.0, 1, o.seed});
    rows.push_back({"stabilizer", t, "e3", inv.e3, 0.0, 1, o.seed});
    return rows;
}

std::vector<Row> run_pxp(const Options &o) {
    if (o.window.size() != 2 || !(o.window[0] <= o.window[1]) || o.snapshots < 1) {
        throw ValidationError("--window needs t_lo,t_hi with t_lo <= t_hi");
    }
    const auto init = pxp::initial_state_from_string(o.quench);
    const auto times = pxp::uniform_times(o.window[0], o.window[1], o.snapshots);
    const auto run = pxp::evolve_quench(o.n, init, times);
    const auto scan = pxp::tripartition_scan(run, o.window[0], o.window[1],
                                             pxp::chain_layout_from_string(o.c_layout));
    std::vector<Row> rows;
    for (const auto &r : scan) {
        if (o.na >= 0 && !(r.partition == Tripartition(o.na, o.nb, o.nc))) {
            continue;
        }
        const auto k = static_cast<std::uint64_t>(r.snapshots);
        rows.push_back({"pxp-window", r.partition, "p2", r.p2, 0.0, k, o.seed});
        rows.push_back({"pxp-window", r.partition, "p3", r.p3, 0.0, k, o.seed});
        rows.push_back({"pxp-window", r.partition, "p4", r.p4, 0.0, k, o.seed});
        rows.push_back({"pxp-window", r.partition, "r2_tilde", r.r2_tilde, 0.0, k, o.seed});
        rows.push_back(
            {"pxp-window", r.partition, "negativity", r.mean_negativity, 0.0, k, o.seed});
    }
    const pxp::ConstrainedBasis basis(o.n);
    double entropy = 0.0;
    for (Eigen::Index j = 0; j < run.snapshots.cols(); ++j) {
        entropy += pxp::entanglement_entropy(pxp::embed(basis, run.snapshots.col(j)),
                                             o.n, o.n / 2);
    }
    entropy /= static_cast<double>(run.snapshots.cols());
    rows.push_back({"pxp-window", Tripartition(o.n / 2, o.n - o.n / 2, 0), "entropy",
                    entropy, 0.0, static_cast<std::uint64_t>(run.snapshots.cols()),
                    o.seed});
    return rows;
}

std::vector<Row> run_shadows(const Options &o) {
    if (o.na < 0 || o.nb < 0) {
        throw ValidationError("shadows needs --na and --nb");
    }
    const Tripartition t(o.na, o.nb, o.nc);
    shadows::CampaignConfig cfg;
    cfg.n_states = o.ns;
    cfg.n_unitaries = o.nu;
    cfg.n_shots = o.nm;
    cfg.tuple_budget = o.budget;
    cfg.seed = o.seed;
    const auto res = shadows::campaign_r2_haar(cfg, t);
    std::vector<Row> rows;
    const auto recs = static_cast<std::uint64_t>(res.records);
    const auto states = static_cast<std::uint64_t>(o.ns);
    for (std::size_t k = 0; k < 3; ++k) {
        rows.push_back({"shadows", t, "p" + std::to_string(k + 2), res.moments[k].value,
                        res.moments[k].error, recs, o.seed});
    }
    rows.push_back({"shadows", t, "r2_tilde", res.r2_tilde.value, res.r2_tilde.error,
                    recs, o.seed});
    for (std::size_t k = 0; k < 3; ++k) {
        rows.push_back({"haar", t, "p" + std::to_string(k + 2), res.dense_moments[k],
                        0.0, states, o.seed});
    }
    rows.push_back({"haar", t, "r2_tilde", res.dense_r2_tilde, 0.0, states, o.seed});
    return rows;
}

nlohmann::json to_json(const std::vector<Row> &rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : rows) {
        nlohmann::json value = std::isfinite(r.value) ? nlohmann::json(r.value)
                                                      : nlohmann::json(nullptr);
        nlohmann::json err = std::isfinite(r.std_error) ? nlohmann::json(r.std_error)
                                                        : nlohmann::json(nullptr);
        arr.push_back({{"family", r.family},
                       {"N_A", r.partition.n_a()},
                       {"N_B", r.partition.n_b()},
                       {"N_C", r.partition.n_c()},
                       {"quantity", r.quantity},
                       {"value", value},
                       {"std_error", err},
                       {"n_samples", r.n_samples},
                       {"seed", r.seed}});
    }
    return arr;
}

nlohmann::json parameters(const CLI::App &sub) {
    nlohmann::json p = nlohmann::json::object();
    for (const CLI::Option *opt : sub.get_options()) {
        if (opt->get_single_name() == "help") {
            continue;
        }
        if (opt->count() == 0) {
            p[opt->get_single_name()] = opt->get_default_str();
            continue;
        }
        const auto res = opt->results();
        p[opt->get_single_name()] = res.size() == 1 ? nlohmann::json(res[0])
                                                    : nlohmann::json(res);
    }
    return p;
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string to_csv(const std::vector<Row> &rows) {
    std::string s = std::string(kCsvHeader) + "\n";
    for (const auto &r : rows) {
        s += r.family + "," + std::to_string(r.partition.n_a()) + "," +
             std::to_string(r.partition.n_b()) + "," +
             std::to_string(r.partition.n_c()) + "," + r.quantity + "," +
             format_number(r.value) + "," + format_number(r.std_error) + "," +
             std::to_string(r.n_samples) + "," + std::to_string(r.seed) + "\n";
    }
    return s;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Partial-transpose moments and entanglement phase diagrams",
                 "ptmoments"};
    app.set_version_flag("--version", PTM_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();

    const auto common = [&](CLI::App *s) {
        s->add_option("--seed", o.seed, "Master seed");
        s->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--out", o.out, "Output path (default stdout)");
        s->add_option("--threads", o.threads, "Worker threads (0: all cores)")
            ->check(CLI::NonNegativeNumber);
    };
    const auto partition = [&](CLI::App *s, bool grid) {
        s->add_option("--na", o.na, "Qubits in A");
        s->add_option("--nb", o.nb, "Qubits in B");
        s->add_option("--nc", o.nc, "Qubits in C");
        if (grid) {
            s->add_option("--nab", o.nab, "N_A + N_B for grid scans");
            s->add_option("--grid", o.grid, "full, or RxC fraction grid");
            s->add_option("--nc-max", o.nc_max, "Largest N_C of the full grid");
            s->add_option("--max-fraction", o.max_fraction,
                          "Largest N_C/N of the fraction grid")
                ->check(CLI::Range(0.0, 0.99));
        }
    };
    const auto sampled = [&](CLI::App *s) {
        partition(s, true);
        s->add_option("--samples", o.samples, "States per grid point")
            ->check(CLI::PositiveNumber);
    };

    auto *ha = app.add_subcommand("haar-analytic", "Haar-averaged moments");
    partition(ha, true);
    ha->add_option("--method", o.method, "exact, leading or asymptotic")
        ->check(CLI::IsMember({"exact", "leading", "asymptotic"}));
    ha->add_option("--epsilon", o.epsilon, "White-noise strength")
        ->check(CLI::Range(0.0, 1.0));
    common(ha);

    auto *mc = app.add_subcommand("haar-mc", "Sampled Haar states");
    sampled(mc);
    common(mc);

    auto *noise = app.add_subcommand("noise", "Sampled Haar states with white noise");
    sampled(noise);
    noise->add_option("--epsilon", o.epsilon, "White-noise strength")
        ->check(CLI::Range(0.0, 1.0))
        ->required();
    common(noise);

    auto *stab = app.add_subcommand("stabilizer", "Stabilizer states");
    sampled(stab);
    stab->add_option("--triple", o.triple, "s_A,s_B,s_C,g_ABC,e_AB,e_AC,e_BC");
    common(stab);

    auto *mps = app.add_subcommand("mps", "Random matrix product states");
    sampled(mps);
    mps->add_option("--chi", o.chi, "Bond dimension")->check(CLI::PositiveNumber);
    mps->add_flag("--no-negativity", o.no_negativity,
                  "Skip diagonalizing the partial transpose at mixed points");
    common(mps);

    auto *ferm = app.add_subcommand("fermion", "Random fermionic Gaussian states");
    sampled(ferm);
    common(ferm);

    auto *doped = app.add_subcommand("doped-mg", "SWAP-doped matchgate circuits");
    sampled(doped);
    doped->add_option("--nswap", o.nswap, "Number of SWAP gates")
        ->check(CLI::NonNegativeNumber);
    common(doped);

    auto *px = app.add_subcommand("pxp", "PXP quench, time-window averages");
    px->add_option("--n", o.n, "Chain length")->check(CLI::Range(2, 20));
    px->add_option("--quench", o.quench, "Initial state")
        ->check(CLI::IsMember({"z2", "polarized"}));
    px->add_option("--window", o.window, "t_lo t_hi")->expected(2)->delimiter(',');
    px->add_option("--snapshots", o.snapshots, "Snapshots in the window")
        ->check(CLI::PositiveNumber);
    px->add_option("--c-layout", o.c_layout, "C as one block after B, or split around A|B")
        ->check(CLI::IsMember({"block", "split"}));
    partition(px, false);
    common(px);

    auto *sh = app.add_subcommand("shadows", "Randomized-measurement estimates");
    partition(sh, false);
    sh->add_option("--ns", o.ns, "States")->check(CLI::PositiveNumber);
    sh->add_option("--nu", o.nu, "Unitaries per state")->check(CLI::PositiveNumber);
    sh->add_option("--nm", o.nm, "Shots per unitary")->check(CLI::PositiveNumber);
    sh->add_option("--budget", o.budget, "Tuples per U-statistic")
        ->check(CLI::PositiveNumber);
    common(sh);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        if (code != 0) {
            err << app.help();
            return 2;
        }
        return 0;
    }

    const CLI::App *sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const auto start = std::chrono::steady_clock::now();
    std::vector<Row> rows;
    try {
        stats::set_threads(o.threads);
        if (name == "haar-analytic") {
            rows = run_haar_analytic(o);
        } else if (name == "haar-mc") {
            rows = run_family(o, ensembles::Family::Haar);
        } else if (name == "noise") {
            rows = run_family(o, ensembles::Family::NoisyHaar);
        } else if (name == "stabilizer") {
            rows = run_stabilizer(o);
        } else if (name == "mps") {
            rows = run_family(o, ensembles::Family::RandomMps);
        } else if (name == "fermion") {
            rows = run_family(o, ensembles::Family::Fermion);
        } else if (name == "doped-mg") {
            rows = run_family(o, ensembles::Family::DopedMatchgate);
        } else if (name == "pxp") {
            rows = run_pxp(o);
        } else {
            rows = run_shadows(o);
        }
    } catch (const std::exception &e) {
        err << "ptmoments " << name << ": " << e.what() << "\n";
        return 1;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string text;
    if (o.format == "json") {
        nlohmann::json doc;
        doc["manifest"] = {{"subcommand", name},
                           {"parameters", parameters(*sub)},
                           {"seed", o.seed},
                           {"version", PTM_VERSION},
                           {"threads", stats::threads()},
                           {"wall_clock_seconds", wall}};
        doc["rows"] = to_json(rows);
        text = doc.dump(2) + "\n";
    } else {
        text = to_csv(rows);
    }
    if (o.out.empty() || o.out == "-") {
        out << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        f << text;
        if (!f) {
            err << "ptmoments: cannot write " << o.out << "\n";
            return 1;
        }
    }
    return 0;
}

int run(int argc, const char *const *argv) { return run(argc, argv, std::cout, std::cerr); }

} // namespace ptm::cli
