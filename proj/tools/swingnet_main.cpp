#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "swingnet/campaign.hpp"
#include "swingnet/dynamics.hpp"
#include "swingnet/grid_io.hpp"
#include "swingnet/trace_io.hpp"

namespace {

using namespace swingnet;

Vector read_phase_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw GridError("cannot open phase file " + path);
    Vector v(n);
    for (int i = 0; i < n; ++i)
        if (!(in >> v[i])) throw GridError("phase file " + path + " has fewer than " +
                                           std::to_string(n) + " values");
    return v;
}

void print_stability(const StabilityReport& rep) {
    std::cout << "eigenvalue real parts:";
    for (int i = 0; i < rep.eigen_real_parts.size(); ++i) {
        std::cout << " " << rep.eigen_real_parts[i];
        if (i == rep.structural_zero_index) std::cout << "*";
    }
    std::cout << "   (* structural zero)\n";
    std::cout << "lambda2 = " << rep.lambda2 << "\n";
    std::cout << "verdict: " << to_string(rep.verdict) << "\n";
}

int cmd_solve(const std::string& grid_path, const SolverConfig& solver,
              const std::string& initial_path, const std::string& out_path) {
    GridTopology g = load_grid(grid_path);
    Vector init = initial_path.empty() ? Vector::Zero(g.node_count())
                                       : read_phase_file(initial_path, g.node_count());
    Equilibrium eq = solve_equilibrium(g, init, solver);
    std::cout << "converged: " << (eq.converged ? "yes" : "no") << "  iterations: " << eq.iterations
              << "  |residual| = " << eq.residual_norm << "\n";
    if (!eq.converged) {
        std::cout << "diagnostic: " << eq.diagnostic << "\n";
        return 2;
    }
    std::cout.precision(10);
    for (const auto& n : g.nodes())
        std::cout << "theta_" << n.id << " = " << eq.phases[g.index_of(n.id)] << "\n";
    StabilityReport rep = classify_stability(hessian(g, eq));
    print_stability(rep);
    if (!out_path.empty()) {
        nlohmann::json doc{{"format", "swingnet-equilibrium v1"},
                           {"converged", eq.converged},
                           {"iterations", eq.iterations},
                           {"residual_norm", eq.residual_norm},
                           {"stability", to_json(rep)},
                           {"solver", to_json(solver)}};
        nlohmann::json phases = nlohmann::json::object();
        for (const auto& n : g.nodes())
            phases[std::to_string(n.id)] = eq.phases[g.index_of(n.id)];
        doc["phases"] = phases;
        std::ofstream out(out_path);
        out << doc.dump(2) << "\n";
    }
    return 0;
}

int cmd_analyze(const std::string& grid_path, const SolverConfig& solver,
                const std::string& initial_path, const std::string& out_path) {
    GridTopology g = load_grid(grid_path);
    Vector init = initial_path.empty() ? Vector::Zero(g.node_count())
                                       : read_phase_file(initial_path, g.node_count());
    Equilibrium eq = solve_equilibrium(g, init, solver);
    if (!eq.converged) {
        std::cerr << "no equilibrium: " << eq.diagnostic << "\n";
        return 2;
    }
    auto reports = analyze_all_nodes(g, eq);
    std::cout << "node\tbeta\ts1\ts2\tverdict\n";
    std::cout.precision(6);
    for (const auto& r : reports) {
        std::cout << r.node << "\t" << r.beta << "\t" << r.s1.real();
        if (r.s1.imag() != 0.0) std::cout << (r.s1.imag() > 0 ? "+" : "") << r.s1.imag() << "i";
        std::cout << "\t" << r.s2.real();
        if (r.s2.imag() != 0.0) std::cout << (r.s2.imag() > 0 ? "+" : "") << r.s2.imag() << "i";
        std::cout << "\t" << to_string(r.verdict) << "\n";
    }
    if (!out_path.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        std::ofstream out(out_path);
        out << nlohmann::json{{"format", "swingnet-poles v1"},
                              {"reports", arr},
                              {"solver", to_json(solver)}}
                   .dump(2)
            << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swing-equation grid simulator: equilibria, stability, disturbances, cascades"};
    app.set_config("--config", "", "read options from an INI file");
    app.require_subcommand(1);
    app.fallthrough();  // global solver flags may follow the subcommand

    SolverConfig solver;
    app.add_option("--eps1", solver.eps1, "step-size tolerance")->capture_default_str();
    app.add_option("--eps2", solver.eps2, "residual tolerance")->capture_default_str();
    app.add_option("--max-iters", solver.max_iterations, "solver iteration cap")
        ->capture_default_str();
    app.add_option("--seed", solver.rng_seed, "seed for all randomized pieces")
        ->capture_default_str();

    std::string grid_path, initial_path, out_path;

    auto* solve = app.add_subcommand("solve", "solve the equilibrium and classify stability");
    solve->add_option("grid", grid_path, "grid file")->required();
    solve->add_option("--initial", initial_path, "initial phases, one value per line");
    solve->add_option("--out", out_path, "write a JSON report");

    auto* analyze = app.add_subcommand("analyze", "per-node disturbance poles and verdicts");
    analyze->add_option("grid", grid_path, "grid file")->required();
    analyze->add_option("--initial", initial_path, "initial phases, one value per line");
    analyze->add_option("--out", out_path, "write a JSON report");

    auto* cascade = app.add_subcommand("cascade", "attack one edge and trace the cascade");
    CascadePolicy policy;
    cascade->add_option("grid", grid_path, "grid file")->required();
    std::vector<NodeId> attack_pair;
    cascade->add_option("--attack", attack_pair, "edge to remove: two node ids")
        ->expected(2)
        ->required();
    cascade->add_option("--alpha", policy.alpha, "line tolerance")->capture_default_str();
    cascade->add_option("--disturbance-mag", policy.disturbance_magnitude,
                        "assumed small-disturbance magnitude, recorded with the trace")
        ->capture_default_str();
    cascade->add_option("--max-rounds", policy.max_rounds, "round cap")->capture_default_str();
    cascade->add_option("--out", out_path, "write the trace JSON");

    auto* campaign = app.add_subcommand("campaign", "run T single-edge attacks and aggregate");
    CampaignConfig ccfg;
    std::string strategy = "ordered", out_dir;
    campaign->add_option("grid", grid_path, "grid file")->required();
    campaign->add_option("--attacks", ccfg.attack_count, "number of attacks T")->required();
    campaign->add_option("--strategy", strategy, "ordered | random")->capture_default_str();
    campaign->add_option("--alpha", ccfg.policy.alpha, "line tolerance")->capture_default_str();
    campaign->add_option("--disturbance-mag", ccfg.policy.disturbance_magnitude,
                         "assumed small-disturbance magnitude, recorded with traces")
        ->capture_default_str();
    campaign->add_option("--max-rounds", ccfg.policy.max_rounds, "round cap")
        ->capture_default_str();
    campaign->add_option("--jobs", ccfg.parallelism, "worker threads")->capture_default_str();
    campaign->add_option("--out", out_dir, "output directory")->required();

    auto* simulate = app.add_subcommand("simulate", "integrate the swing equation and export");
    double dt = 0.01, horizon = 20.0, kick_mag = 1e-3, kick_time = 0.0;
    NodeId kick_node = -1;
    std::string kick_mode = "phase", traj_out;
    int stride = 1;
    simulate->add_option("grid", grid_path, "grid file")->required();
    simulate->add_option("--dt", dt, "integration step")->capture_default_str();
    simulate->add_option("--horizon", horizon, "simulated seconds")->capture_default_str();
    simulate->add_option("--initial", initial_path, "initial phases (default: solved equilibrium)");
    simulate->add_option("--kick", kick_node, "node to disturb");
    simulate->add_option("--kick-mag", kick_mag, "disturbance magnitude")->capture_default_str();
    simulate->add_option("--kick-time", kick_time, "disturbance time")->capture_default_str();
    simulate->add_option("--kick-mode", kick_mode, "phase | velocity")->capture_default_str();
    simulate->add_option("--stride", stride, "export every n-th step")->capture_default_str();
    simulate->add_option("--out", traj_out, "trajectory TSV file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(grid_path, solver, initial_path, out_path);
        if (analyze->parsed()) return cmd_analyze(grid_path, solver, initial_path, out_path);

        if (cascade->parsed()) {
            policy.solver = solver;
            policy.rng_seed = solver.rng_seed;
            if (policy.alpha >= 1.0)
                std::cerr << "note: alpha >= 1 suppresses overload failures\n";
            GridTopology g = load_grid(grid_path);
            CascadeTrace trace = run_cascade(g, attack_pair[0], attack_pair[1], policy);
            std::cout << "attack (" << trace.attack.first << ", " << trace.attack.second
                      << "): " << to_string(trace.outcome) << "  FN = " << trace.fn
                      << "  FE = " << trace.fe << "  rounds = " << trace.rounds.size() << "\n";
            if (!out_path.empty()) write_trace(trace, policy, out_path);
            return 0;
        }

        if (campaign->parsed()) {
            ccfg.policy.solver = solver;
            ccfg.policy.rng_seed = solver.rng_seed;
            if (strategy == "ordered") ccfg.strategy = AttackStrategy::Ordered;
            else if (strategy == "random") ccfg.strategy = AttackStrategy::RandomWithoutReplacement;
            else throw CLI::ValidationError("--strategy", "must be 'ordered' or 'random'");
            if (ccfg.policy.alpha >= 1.0)
                std::cerr << "note: alpha >= 1 suppresses overload failures\n";
            ccfg.output_dir = out_dir;
            GridTopology g = load_grid(grid_path);
            CampaignResult res = run_campaign(g, ccfg);
            std::cout << "attacks: " << res.summary.attacks_run
                      << "  cascades: " << res.summary.cascades_triggered
                      << "  mean failed fraction: " << res.summary.mean_failed_fraction << "\n";
            for (const auto& [name, count] : res.summary.outcome_counts)
                std::cout << "  " << name << ": " << count << "\n";
            return 0;
        }

        if (simulate->parsed()) {
            GridTopology g = load_grid(grid_path);
            Vector init;
            if (initial_path.empty()) {
                Equilibrium eq = solve_equilibrium(g, solver);
                if (!eq.converged) {
                    std::cerr << "no equilibrium to start from: " << eq.diagnostic << "\n";
                    return 2;
                }
                init = eq.phases;
            } else {
                init = read_phase_file(initial_path, g.node_count());
            }
            std::vector<DisturbanceSpec> specs;
            if (kick_node >= 0) {
                DisturbanceSpec spec;
                spec.targets = {kick_node};
                spec.magnitude = kick_mag;
                spec.time = kick_time;
                spec.mode = kick_mode == "velocity" ? KickMode::VelocityKick : KickMode::PhaseKick;
                specs.push_back(spec);
            }
            TrajectoryRecord traj = integrate_swing(g, init, Vector::Zero(g.node_count()), dt,
                                                    horizon, specs, solver.rng_seed);
            std::ofstream out(traj_out);
            if (!out) throw GridError("cannot write trajectory file " + traj_out);
            write_trajectory(traj, out, stride);
            if (!traj.diverged_nodes.empty()) {
                std::cout << "diverged nodes:";
                for (const auto& [id, t] : traj.diverged_nodes)
                    std::cout << " " << id << " (t = " << t << ")";
                std::cout << "\n";
            }
            return 0;
        }
    } catch (const GridParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const GridValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
