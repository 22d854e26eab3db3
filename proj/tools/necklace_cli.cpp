#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "necklace/cli_report.hpp"

using necklace::report::CommandConfig;
using necklace::report::Format;

int main(int argc, char** argv) {
    CLI::App app{"Certified construction and search for right-angled necklace bundles"};
    app.require_subcommand(1);

    CommandConfig config;
    long k = 0, m = 0, n = 0, n_max = 0;
    std::string format = "json";
    std::string output, ratio;

    auto add_triple = [&](CLI::App* cmd) {
        cmd->add_option("--k", k, "first rotation index")->required();
        cmd->add_option("--m", m, "second rotation index")->required();
        cmd->add_option("--n", n, "number of hyperplanes (even)")->required();
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--precision-bits", config.precision_bits,
                        "working precision for interval evaluations")
            ->check(CLI::Range(16L, 1024L));
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--output", output, "write the artifact to this path");
        cmd->add_option("--workers", config.workers, "worker threads for enumeration")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* check = app.add_subcommand("check", "certify one parameter triple");
    add_triple(check);
    add_common(check);
    check->add_flag("--oracle", config.with_oracle,
                    "also run the double-precision angle tracker");

    CLI::App* search = app.add_subcommand("search", "enumerate triples up to n-max");
    search->add_option("--n-max", n_max, "largest n to enumerate")->required();
    add_common(search);
    search->add_flag("--oracle", config.with_oracle,
                     "also run the double-precision angle tracker");
    search->add_option("--ratio", ratio, "keep only feasible triples with this exact ratio p/q");

    CLI::App* trace = app.add_subcommand("trace", "trace a string at the solved configuration");
    add_triple(trace);
    add_common(trace);
    trace->add_option("--samples", config.samples, "path samples (default 16n)");

    CLI::App* verify = app.add_subcommand("verify", "full exact cross-check battery");
    add_triple(verify);
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    for (CLI::App* cmd : {check, search, trace, verify})
        if (cmd->parsed()) config.subcommand = cmd->get_name();
    if (check->parsed() || trace->parsed() || verify->parsed()) {
        config.k = k;
        config.m = m;
        config.n = n;
    }
    if (search->parsed()) {
        config.n_max = n_max;
        if (!ratio.empty()) config.ratio_filter = ratio;
    }
    config.output_format = format == "csv" ? Format::Csv : Format::Json;
    if (!output.empty()) config.output_path = output;

    return necklace::report::run(config, std::cout, std::cerr);
}
