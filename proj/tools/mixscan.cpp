// Command-line front end: simulate -> scan -> evaluate, plus per-transaction
// explanation. Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixscan/cluster.hpp"
#include "mixscan/detector.hpp"
#include "mixscan/evaluate.hpp"
#include "mixscan/ledger.hpp"
#include "mixscan/mixsim.hpp"
#include "mixscan/params.hpp"
#include "mixscan/report_io.hpp"

namespace {

using namespace mixscan;

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out_path, const std::string& truth_path) {
    SimScenario scenario = config_path.empty() ? SimScenario{} : scenario_from_file(config_path);
    if (seed) scenario.seed = *seed;

    SimResult result = generate(scenario);
    write_blocks_file(out_path, result.blocks);
    write_truth_file(truth_path, result.truth);

    std::cout << "simulate: seed=" << scenario.seed << " blocks=" << result.blocks.size()
              << " txs=" << result.tx_count << " mixer_chains=" << result.truth.mixer_chains.size()
              << " mixer_addresses=" << result.truth.mixer_addresses.size()
              << " dirty=" << result.truth.dirty_addresses.size()
              << " clean=" << result.truth.clean_addresses.size() << '\n';
    std::cout << "wrote " << out_path << " and " << truth_path << '\n';
    return 0;
}

DetectionParams load_params(const std::string& params_path) {
    if (params_path.empty()) return DetectionParams{};
    return detection_params_from_file(params_path);
}

int cmd_scan(const std::string& ledger_path, const std::string& params_path,
             const std::string& report_path, const std::string& clusters_path, bool strict) {
    LoadStats stats;
    Ledger ledger = load_ledger_file(ledger_path, strict, &stats);
    DetectionParams params = load_params(params_path);

    DetectionReport report = run_detection(ledger, params.chain, params.pattern);
    ClusterSet clusters = build_clusters(ledger);
    report = propagate_labels(clusters, std::move(report));
    write_report_file(report_path, report);

    if (!clusters_path.empty()) write_clusters_file(clusters_path, clusters);

    std::cout << "scan: blocks=" << stats.blocks << " txs=" << stats.txs;
    if (stats.malformed_skipped) std::cout << " malformed_skipped=" << stats.malformed_skipped;
    std::cout << " seeds=" << report.diagnostics.seeds_found
              << " chains=" << report.chains.size() << " labels=" << report.labels.size()
              << " conflicts=" << report.conflicts.size() << '\n';
    std::cout << "wrote " << report_path << '\n';
    return 0;
}

int cmd_evaluate(const std::string& report_path, const std::string& truth_path,
                 const std::string& out_path) {
    ReportView report = read_report_file(report_path);
    GroundTruth truth = read_truth_file(truth_path);
    EvalMetrics metrics = evaluate_detection(report, truth);

    print_metrics(std::cout, metrics);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(Errc::IoError, "cannot write " + out_path);
        out << metrics_to_json(metrics) << '\n';
        std::cout << "wrote " << out_path << '\n';
    }
    return 0;
}

int cmd_explain(const std::string& ledger_path, const std::string& params_path,
                const std::string& txid) {
    Ledger ledger = load_ledger_file(ledger_path, false);
    DetectionParams params = load_params(params_path);

    const Transaction* tx = ledger.find_tx(txid);
    if (!tx) {
        std::cerr << "error: unknown txid " << txid << '\n';
        return 2;
    }

    std::cout << "tx " << tx->txid << " (block " << tx->block_height << ", "
              << tx->inputs.size() << " in / " << tx->outputs.size() << " out)\n";
    if (is_sweeper(*tx, params.pattern)) std::cout << "  matches the sweeper shape\n";

    auto verdict = try_classify(ledger, *tx, params.pattern);
    if (!verdict) {
        std::cout << "  UnresolvableInput: "
                  << (tx->is_coinbase() ? "coinbase transactions have no funding output"
                                        : "the input's funding transaction is not in the ledger")
                  << "\n  not classifiable as a candidate\n";
        return 0;
    }

    auto failed = [&](Condition c) {
        return std::find(verdict->failed.begin(), verdict->failed.end(), c) !=
               verdict->failed.end();
    };
    auto show = [&](Condition c, const std::string& detail) {
        std::cout << "  [" << (failed(c) ? "FAIL" : "pass") << "] " << condition_name(c) << ": "
                  << detail << '\n';
    };

    show(Condition::InputCount,
         std::to_string(tx->inputs.size()) + " input(s), need exactly 1");
    show(Condition::OutputCount,
         std::to_string(tx->outputs.size()) + " output(s), need exactly 2");

    if (tx->inputs.size() == 1) {
        const TxOutput& funding = ledger.output_at(tx->inputs[0]);
        std::string types = std::string(addr_type_name(funding.type)) + " funding";
        if (tx->outputs.size() == 2)
            types += std::string(", outputs ") + addr_type_name(tx->outputs[0].type) + "/" +
                     addr_type_name(tx->outputs[1].type);
        show(Condition::AddressTypes, types + " (need p2sh funding and a p2sh output)");
        if (tx->outputs.size() == 2) {
            std::size_t service = service_output_index(*tx);
            show(Condition::AmountRatio,
                 "service side " + std::to_string(tx->outputs[service].value_sat) + " vs other " +
                     std::to_string(tx->outputs[1 - service].value_sat) + ", need >= " +
                     std::to_string(params.pattern.ratio_threshold.to_double()) + "x");
        }
        show(Condition::InputValue,
             std::to_string(funding.value_sat) + " sat, need > " +
                 std::to_string(params.pattern.input_value_threshold_sat));
    }

    std::cout << "  candidate: " << (verdict->is_candidate ? "yes" : "no") << '\n';
    if (!verdict->is_candidate) return 0;

    ChainRecord chain = build_chain(ledger, txid, params.chain, params.pattern);
    auto [accepted, reason] = accept_chain(chain, params.chain);
    std::cout << "  chain: length=" << chain.txids.size() << " sweeper_root="
              << (chain.sweeper_root ? *chain.sweeper_root : std::string("none"))
              << " anomalies=" << chain.anomaly_count
              << (chain.aborted ? " (aborted at cap)" : "");
    if (chain.txids.size() >= 2)
        std::cout << " time_median_min=" << chain_time_median(chain).to_double();
    std::cout << '\n';
    std::cout << "  " << (accepted ? "ACCEPTED" : std::string("REJECTED: ") + reject_reason_name(*reason))
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixscan: mixing-service detection over transaction graphs"};
    app.require_subcommand(1);

    std::string config_path, out_path, truth_path, ledger_path, params_path, report_path,
        clusters_path, metrics_path, txid;
    std::optional<std::uint64_t> seed;
    bool strict = false;

    CLI::App* sim = app.add_subcommand("simulate", "Generate a synthetic ledger plus ground truth");
    sim->add_option("--config", config_path, "Scenario config file (key = value lines)");
    sim->add_option("--seed", seed, "Override the scenario seed");
    sim->add_option("--out", out_path, "Output block file (JSONL)")->required();
    sim->add_option("--truth", truth_path, "Output ground-truth JSON")->required();

    CLI::App* scan = app.add_subcommand("scan", "Detect mixing chains and label addresses");
    scan->add_option("--ledger", ledger_path, "Block file to scan")->required();
    scan->add_option("--params", params_path, "Detection params file")->envname("MIXSCAN_PARAMS");
    scan->add_option("--report", report_path, "Output report JSON")->required();
    scan->add_option("--clusters", clusters_path, "Optional clusters export JSON");
    scan->add_flag("--strict", strict, "Abort on the first malformed record");

    CLI::App* eval = app.add_subcommand("evaluate", "Score a report against ground truth");
    eval->add_option("--report", report_path, "Report JSON from scan")->required();
    eval->add_option("--truth", truth_path, "Ground-truth JSON from simulate")->required();
    eval->add_option("--out", metrics_path, "Optional metrics JSON output");

    CLI::App* explain = app.add_subcommand("explain", "Explain one transaction's verdict and chain");
    explain->add_option("--ledger", ledger_path, "Block file to load")->required();
    explain->add_option("--params", params_path, "Detection params file")->envname("MIXSCAN_PARAMS");
    explain->add_option("--tx", txid, "Transaction id to explain")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, seed, out_path, truth_path);
        if (scan->parsed()) return cmd_scan(ledger_path, params_path, report_path, clusters_path, strict);
        if (eval->parsed()) return cmd_evaluate(report_path, truth_path, metrics_path);
        if (explain->parsed()) return cmd_explain(ledger_path, params_path, txid);
    } catch (const mixscan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
