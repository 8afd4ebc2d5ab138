// pto: plan, benchmark, validate and render path trees from the command line.
//
// Exit codes: 0 ok, 1 bad input or usage, 2 no complete tree found,
// 3 tree failed validation.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pto/pto.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnsolvable = 2;
constexpr int kExitInvalid = 3;

struct Options {
    std::string scenario;
    std::string tree;
    std::string out;
    std::string csv;
    std::string seeds = "12";
    std::string iterationsList = "1000";
    std::size_t iterations = 1000;
    std::uint64_t seed = 1;
    std::string sampler = "uniform";
    double goalBias = 0.2;
    double cameraFraction = 0.5;
    double radius = 0.5;
    double resolution = 0;
    std::size_t simplifyRounds = 100;
    unsigned threads = 0;
};

void addSamplerFlags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--sampler", o.sampler, "State sampler")->check(CLI::IsMember({"uniform", "camera"}));
    cmd->add_option("--goal-bias", o.goalBias, "Probability of drawing a goal state")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--camera-fraction", o.cameraFraction, "Share of non-goal draws from the camera sampler")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--radius", o.radius, "Random graph connection radius")->check(CLI::PositiveNumber);
    cmd->add_option("--resolution", o.resolution, "Collision check step (default robotRadius/2)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--simplify-rounds", o.simplifyRounds, "Shortcut attempts per tree segment");
}

pto::PlannerConfig plannerConfig(const Options& o)
{
    pto::PlannerConfig c;
    c.iterations = o.iterations;
    c.radius = o.radius;
    c.resolution = o.resolution;
    c.simplifyRounds = o.simplifyRounds;
    c.sampler.kind = o.sampler == "camera" ? pto::SamplerKind::CameraBased : pto::SamplerKind::Uniform;
    c.sampler.goalBias = o.goalBias;
    c.sampler.cameraFraction = o.cameraFraction;
    c.sampler.seed = o.seed;
    c.sampler.validate();
    return c;
}

template <class T>
std::vector<T> parseList(const std::string& text, const char* what)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<T>(v));
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "not a nonnegative integer: '" + item + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(what, "empty list");
    return out;
}

// "12" means seeds 1..12; "3,7,9" lists them
std::vector<std::uint64_t> parseSeeds(const std::string& text)
{
    auto list = parseList<std::uint64_t>(text, "--seeds");
    if (text.find(',') != std::string::npos) return list;
    if (list.front() == 0) throw CLI::ValidationError("--seeds", "need at least one seed");
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= list.front(); ++s) seeds.push_back(s);
    return seeds;
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") std::cout << text;
    else pto::writeTextFile(path, text);
}

void printReport(const pto::ValidationReport& report)
{
    for (const auto* check : report.checks()) {
        std::cout << check->name << ": " << (check->passed() ? "ok" : "FAILED") << '\n';
        for (const auto& v : check->violations) std::cout << "  " << v << '\n';
    }
}

int runPlan(const Options& o)
{
    const pto::Environment env = pto::loadScenario(o.scenario);
    const auto config = plannerConfig(o);
    spdlog::info("planning {} with {} iterations, seed {}, {} sampler", o.scenario, o.iterations, o.seed, o.sampler);
    const pto::PlanResult r = pto::planPathTree(env, config);
    spdlog::debug("random graph {} vertices / {} edges, belief graph {} vertices / {} edges over {} beliefs",
                  r.stats.randomVertices, r.stats.randomEdges, r.stats.beliefVertices, r.stats.beliefEdges,
                  r.stats.beliefs);
    if (!r.success) {
        spdlog::error("{}", r.failure);
        return kExitUnsolvable;
    }
    emit(o.out, pto::pathTreeToJson(r.tree).dump(2) + "\n");
    std::cerr << "cost " << r.cost << " (before shortcutting " << r.rawCost << ")\n";
    std::cerr << "times [s]: random graph " << r.times.randomGraph << ", belief graph " << r.times.beliefGraph
              << ", costs " << r.times.costs << ", extraction " << r.times.extraction << ", simplification "
              << r.times.simplification << ", total " << r.times.total << '\n';
    return kExitOk;
}

int runBenchmark(const Options& o)
{
    const pto::Environment env = pto::loadScenario(o.scenario);
    const auto config = plannerConfig(o);
    const auto seeds = parseSeeds(o.seeds);
    const auto budgets = parseList<std::size_t>(o.iterationsList, "--iterations");
    spdlog::info("benchmark: {} seeds x {} budgets", seeds.size(), budgets.size());
    const auto records = pto::runBenchmark(env, config, budgets, seeds, o.threads);
    const std::string csv = pto::benchmarkCsv(records);
    if (!o.csv.empty()) pto::writeTextFile(o.csv, csv);
    for (const auto& s : pto::summarize(records)) {
        std::cout << "iterations " << s.iterations << ": success " << s.successes << "/" << s.runs;
        if (s.successes > 0) std::cout << ", mean cost " << s.meanCost << ", std " << s.stdCost;
        std::cout << ", mean time " << s.meanTime << " s\n";
    }
    if (o.csv.empty()) std::cout << csv;
    return kExitOk;
}

int runValidate(const Options& o)
{
    const pto::Environment env = pto::loadScenario(o.scenario);
    const pto::PathTree tree = pto::loadPathTree(o.tree);
    const auto report = pto::validatePathTree(tree, env, o.resolution);
    printReport(report);
    if (!report.passed()) return kExitInvalid;
    std::cout << "expected cost " << pto::evaluatePathTreeCost(tree, env) << '\n';
    return kExitOk;
}

int runRender(const Options& o)
{
    const pto::Environment env = pto::loadScenario(o.scenario);
    const pto::PathTree tree = o.tree.empty() ? pto::PathTree{} : pto::loadPathTree(o.tree);
    emit(o.out, pto::renderSvg(env, tree));
    return kExitOk;
}

void configureLogging()
{
    auto logger = spdlog::stderr_color_mt("pto");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("PTO_LOG")) spdlog::cfg::helpers::load_levels(level);
}

}  // namespace

int main(int argc, char** argv)
{
    configureLogging();
    Options o;
    CLI::App app{"Contingency path tree planner for worlds with partially observable objects"};
    app.require_subcommand(1);

    auto* plan = app.add_subcommand("plan", "Plan a path tree and write it as JSON");
    plan->add_option("--scenario", o.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    plan->add_option("--iterations", o.iterations, "Random graph iterations");
    plan->add_option("--seed", o.seed, "Random seed");
    plan->add_option("--out", o.out, "Output tree JSON (default stdout)");
    addSamplerFlags(plan, o);

    auto* bench = app.add_subcommand("benchmark", "Plan over several seeds and iteration budgets");
    bench->add_option("--scenario", o.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    bench->add_option("--iterations", o.iterationsList, "Comma-separated iteration budgets");
    bench->add_option("--seeds", o.seeds, "Seed count N (seeds 1..N) or comma-separated seeds");
    bench->add_option("--csv", o.csv, "Output CSV (default stdout)");
    bench->add_option("--threads", o.threads, "Worker threads (default: hardware concurrency)");
    addSamplerFlags(bench, o);

    auto* validate = app.add_subcommand("validate", "Check a tree against a scenario");
    validate->add_option("--scenario", o.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    validate->add_option("--tree", o.tree, "Tree JSON")->required()->check(CLI::ExistingFile);
    validate->add_option("--resolution", o.resolution, "Collision check step (default robotRadius/2)")
        ->check(CLI::NonNegativeNumber);

    auto* render = app.add_subcommand("render", "Draw a scenario and optional tree as SVG");
    render->add_option("--scenario", o.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    render->add_option("--tree", o.tree, "Tree JSON")->check(CLI::ExistingFile);
    render->add_option("--out", o.out, "Output SVG (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*plan) return runPlan(o);
        if (*bench) return runBenchmark(o);
        if (*validate) return runValidate(o);
        return runRender(o);
    } catch (const pto::FormatError& e) {
        spdlog::error("{}", e.what());
    } catch (const CLI::Error& e) {
        spdlog::error("{}", e.what());
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
    }
    return kExitInput;
}
