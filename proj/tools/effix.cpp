#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kInputError = 2;

struct Invocation {
    std::string command;
    std::function<effix::cli::Outcome()> run;
    std::optional<std::string> out_path;
    std::string payload_key;  // result member written by --out
};

int emit(const Invocation& inv, const std::vector<std::string>& args) {
    const auto start = std::chrono::steady_clock::now();
    effix::cli::Outcome outcome = inv.run();
    const auto stop = std::chrono::steady_clock::now();

    if (inv.out_path) {
        if (inv.payload_key.empty() || !outcome.result.contains(inv.payload_key)) {
            throw effix::InputError("--out is not supported by '" + inv.command + "'");
        }
        effix::cli::write_file(*inv.out_path, outcome.result.at(inv.payload_key).dump(2) + "\n");
    }
    effix::Json report{{"command", inv.command}, {"arguments", args}, {"input_digest", outcome.digest},
                       {"result", std::move(outcome.result)}};
    if (outcome.seed) report["seed"] = *outcome.seed;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact efficiency analysis of lotteries under ordinal preference profiles"};
    app.require_subcommand(1);
    bool verify = true;
    app.add_flag("--verify-certificates,!--no-verify-certificates", verify,
                 "Re-check every emitted certificate by substitution (default on)");
    std::optional<std::string> out_path;

    Invocation inv;
    std::string profile_path, lottery_path, spec_path, action;
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 0;
    bool exact = false;
    effix::cli::CensusOptions census;

    auto* pareto = app.add_subcommand("pareto", "Pareto-optimal outcomes");
    pareto->add_option("profile", profile_path, "Profile JSON")->required();

    auto* rsd = app.add_subcommand("rsd", "Random Serial Dictatorship lottery");
    rsd->add_option("profile", profile_path, "Profile JSON")->required();
    auto* exact_flag = rsd->add_flag("--exact", exact, "Enumerate all dictator orders (default)");
    auto* sample_opt = rsd->add_option("--sample", sample, "Sample this many orders instead")->excludes(exact_flag);
    rsd->add_option("--seed", seed, "Seed for --sample")->needs(sample_opt);

    auto* efficient = app.add_subcommand("efficient", "Ex-ante efficiency of a lottery, with certificate");
    efficient->add_option("profile", profile_path, "Profile JSON")->required();
    efficient->add_option("lottery", lottery_path, "Lottery JSON")->required();

    auto* dominate = app.add_subcommand("dominate", "A lottery strictly dominating the input, if any");
    dominate->add_option("profile", profile_path, "Profile JSON")->required();
    dominate->add_option("lottery", lottery_path, "Lottery JSON")->required();
    dominate->add_option("--out", out_path, "Also write the dominating lottery here");

    auto* equivalence = app.add_subcommand("equivalence", "Do ex-ante and ex-post efficiency coincide?");
    equivalence->add_option("profile", profile_path, "Profile JSON")->required();

    auto* cen = app.add_subcommand("census", "Coincidence frequency over sampled or enumerated profiles");
    cen->add_option("--domain", census.domain, "strict | dichotomous | single-peaked")
        ->check(CLI::IsMember({"strict", "dichotomous", "single-peaked"}));
    cen->add_option("--agents", census.agents, "Number of agents");
    cen->add_option("--outcomes", census.outcomes, "Number of outcomes (max columns with --antichains)");
    cen->add_option("--trials", census.trials, "Random profiles to draw");
    cen->add_option("--seed", census.seed, "Generator seed");
    cen->add_flag("--exhaustive", census.exhaustive, "Enumerate every profile instead of sampling");
    cen->add_flag("--antichains", census.antichains, "Dichotomous: enumerate antichain column sets");
    cen->add_option("--csv", census.csv, "Per-profile CSV sidecar");

    auto* ballot = app.add_subcommand("ballot", "Ballot-counting specs: verify, build, split");
    ballot->add_option("action", action, "verify | build | split")
        ->required()
        ->check(CLI::IsMember({"verify", "build", "split"}));
    ballot->add_option("spec", spec_path, "Ballot spec JSON")->required();
    ballot->add_option("--out", out_path, "Also write the built profile or split spec here");

    auto* reverse = app.add_subcommand("reverse", "Reverse every agent's ranking");
    reverse->add_option("profile", profile_path, "Profile JSON")->required();
    reverse->add_option("--out", out_path, "Also write the reversed profile here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kInputError;
    }

    namespace cmd = effix::cli;
    if (pareto->parsed()) {
        inv = {"pareto", [&] { return cmd::pareto(profile_path); }, std::nullopt, ""};
    } else if (rsd->parsed()) {
        inv = {"rsd", [&] { return cmd::rsd(profile_path, sample, seed); }, std::nullopt, ""};
    } else if (efficient->parsed()) {
        inv = {"efficient", [&] { return cmd::efficient(profile_path, lottery_path, verify, false); }, std::nullopt, ""};
    } else if (dominate->parsed()) {
        inv = {"dominate", [&] { return cmd::efficient(profile_path, lottery_path, verify, true); }, out_path, "dominating"};
    } else if (equivalence->parsed()) {
        inv = {"equivalence", [&] { return cmd::equivalence(profile_path, verify); }, std::nullopt, ""};
    } else if (cen->parsed()) {
        census.verify = verify;
        inv = {"census", [&] { return cmd::census(census); }, std::nullopt, ""};
    } else if (ballot->parsed()) {
        inv = {"ballot", [&] { return cmd::ballot(action, spec_path); }, out_path, action == "build" ? "profile" : "spec"};
    } else {
        inv = {"reverse", [&] { return cmd::reverse(profile_path); }, out_path, "profile"};
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return emit(inv, args);
    } catch (const cmd::AuditFailure& e) {
        std::cerr << "effix: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "effix: input error: " << e.what() << "\n";
    } catch (const std::length_error& e) {
        std::cerr << "effix: limit exceeded: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "effix: internal error: " << e.what() << "\n";
    }
    return kInputError;
}
