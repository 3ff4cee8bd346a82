// multichunk: compress a chain complex of free 2-parameter persistence
// modules to the smallest quasi-isomorphic one.

#include "cli_common.hpp"

namespace {

const char* kUsage =
    "usage: multichunk [options] [input] [output]\n"
    "\n"
    "Reads an scc2020 chain complex and writes the smallest quasi-isomorphic\n"
    "chain complex in the same format. input/output default to '-'\n"
    "(stdin/stdout).\n"
    "\n"
    "options:\n"
    "  --threads <n|auto>  worker threads (default: auto, or MPCOMPRESS_THREADS)\n"
    "  --stats[=pretty]    print statistics to stderr (key=value, or a table)\n"
    "  --verify            cross-check the output against brute-force oracles\n"
    "  --help              show this message\n"
    "\n"
    "exit codes: 0 ok, 1 parse error, 2 validation error, 3 verification mismatch\n";

}  // namespace

int main(int argc, char** argv) {
    cli::CommonArgs args;
    std::vector<std::string> positional;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            std::cout << kUsage;
            return 0;
        } else if (arg == "--threads") {
            if (++i == argc) cli::fail_usage("--threads expects a value", kUsage);
            args.threads = cli::parse_thread_value(argv[i], kUsage);
            args.threads_given = true;
        } else if (arg.rfind("--threads=", 0) == 0) {
            args.threads = cli::parse_thread_value(arg.substr(10), kUsage);
            args.threads_given = true;
        } else if (arg == "--stats") {
            args.stats = cli::StatsMode::KeyValue;
        } else if (arg == "--stats=pretty") {
            args.stats = cli::StatsMode::Pretty;
        } else if (arg == "--verify") {
            args.verify = true;
        } else if (arg.size() > 1 && arg[0] == '-' && arg != "-") {
            cli::fail_usage("unknown option '" + arg + "'", kUsage);
        } else {
            positional.push_back(arg);
        }
    }
    if (positional.size() > 2) cli::fail_usage("too many arguments", kUsage);
    if (positional.size() > 0) args.input = positional[0];
    if (positional.size() > 1) args.output = positional[1];
    cli::apply_thread_env(args, kUsage);

    const auto t_total = std::chrono::steady_clock::now();
    auto t_io = std::chrono::steady_clock::now();
    cli::InputData in = cli::read_input(args.input);
    double io_seconds = cli::seconds_since(t_io);

    mpc_options options;
    mpc_options_init(&options);
    options.threads = args.threads;
    options.collect_stats = args.stats != cli::StatsMode::None;

    mpc_complex* out = nullptr;
    mpc_status status = mpc_multi_chunk(in.complex, &options, &out);
    if (status != MPC_OK) cli::fail_status(status, "multi-chunk compression");

    if (args.verify) {
        status = mpc_verify_multi_chunk(in.complex, out);
        if (status != MPC_OK) cli::fail_status(status, "verification");
    }

    t_io = std::chrono::steady_clock::now();
    const std::size_t out_bytes = cli::write_output(out, args.output);
    io_seconds += cli::seconds_since(t_io);

    if (args.stats != cli::StatsMode::None) {
        std::ostringstream stats;
        stats << cli::take_library_stats();
        stats << "io_seconds=" << io_seconds << "\n";
        stats << "total_seconds=" << cli::seconds_since(t_total) << "\n";
        stats << "io_share=" << (cli::seconds_since(t_total) > 0
                                     ? io_seconds / cli::seconds_since(t_total)
                                     : 0.0)
              << "\n";
        stats << "input_bytes=" << in.bytes << "\n";
        stats << "output_bytes=" << out_bytes << "\n";
        if (in.bytes > 0)
            stats << "compression_ratio=" << static_cast<double>(out_bytes) / in.bytes << "\n";
        cli::print_stats(args.stats, stats.str());
    }

    mpc_complex_free(out);
    mpc_complex_free(in.complex);
    return 0;
}
