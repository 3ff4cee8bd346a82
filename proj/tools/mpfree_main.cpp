// mpfree: minimal presentations of the homology of a chain complex of free
// 2-parameter persistence modules.

#include "cli_common.hpp"

namespace {

const char* kUsage =
    "usage: mpfree [options] [input] [output]\n"
    "\n"
    "Reads an scc2020 chain complex and writes one length-1 chain complex per\n"
    "computed homology dimension, encoding a minimal presentation. By default\n"
    "the input is compressed with multi-chunk first and every consecutive\n"
    "pair of boundary maps is processed (a length-k complex yields k-1\n"
    "presentations). With several outputs, file names get an _h<n> suffix;\n"
    "writing to stdout concatenates the documents. input/output default to\n"
    "'-' (stdin/stdout).\n"
    "\n"
    "options:\n"
    "  --dim <n>             only the presentation of the homology at dimension n\n"
    "  --no-chunk-preprocess skip the multi-chunk compression step\n"
    "  --lw-baseline         grid-scan code paths instead of the queue-driven ones\n"
    "  --threads <n|auto>    worker threads (default: auto, or MPCOMPRESS_THREADS)\n"
    "  --stats[=pretty]      print statistics to stderr (key=value, or a table)\n"
    "  --verify              cross-check every presentation against the oracle\n"
    "  --help                show this message\n"
    "\n"
    "exit codes: 0 ok, 1 parse error, 2 validation error, 3 verification mismatch\n";

std::string suffixed_path(const std::string& path, int dim) {
    const std::size_t slash = path.find_last_of('/');
    const std::size_t dot = path.find_last_of('.');
    const std::string suffix = "_h" + std::to_string(dim);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

int main(int argc, char** argv) {
    cli::CommonArgs args;
    bool chunk_preprocess = true;
    bool lw_baseline = false;
    int dim = -1;
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
        } else if (arg == "--dim") {
            if (++i == argc) cli::fail_usage("--dim expects a value", kUsage);
            dim = std::atoi(argv[i]);
            if (dim < 1) cli::fail_usage("--dim expects a positive dimension", kUsage);
        } else if (arg.rfind("--dim=", 0) == 0) {
            dim = std::atoi(arg.c_str() + 6);
            if (dim < 1) cli::fail_usage("--dim expects a positive dimension", kUsage);
        } else if (arg == "--no-chunk-preprocess") {
            chunk_preprocess = false;
        } else if (arg == "--lw-baseline") {
            lw_baseline = true;
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

    const int num_matrices = static_cast<int>(mpc_complex_num_blocks(in.complex)) - 1;
    if (dim >= 1 && dim + 1 > num_matrices) {
        std::cerr << "error: --dim " << dim << " needs boundary maps for dimensions "
                  << dim + 1 << " and " << dim << ", input has " << std::max(num_matrices, 0)
                  << " boundary maps\n";
        return 2;
    }
    if (dim < 0 && num_matrices < 2) {
        std::cerr << "error: input must be a chain complex of length at least 2\n";
        return 2;
    }

    mpc_options options;
    mpc_options_init(&options);
    options.threads = args.threads;
    options.lw_baseline = lw_baseline;
    options.collect_stats = args.stats != cli::StatsMode::None;

    std::ostringstream stats;
    mpc_complex* work = in.complex;
    mpc_complex* preprocessed = nullptr;
    if (chunk_preprocess) {
        mpc_status status = mpc_multi_chunk(in.complex, &options, &preprocessed);
        if (status != MPC_OK) cli::fail_status(status, "multi-chunk preprocessing");
        work = preprocessed;
        if (options.collect_stats) stats << cli::take_library_stats();
    }

    // Highest homology dimension first, matching the order of the stored
    // boundary maps.
    std::vector<int> dims;
    if (dim >= 1) {
        dims.push_back(dim);
    } else {
        for (int n = num_matrices - 1; n >= 1; --n) dims.push_back(n);
    }

    std::size_t out_bytes = 0;
    for (int n : dims) {
        mpc_complex* presentation = nullptr;
        mpc_status status = mpc_minimal_presentation(work, n, &options, &presentation);
        if (status != MPC_OK)
            cli::fail_status(status, "presentation of dimension " + std::to_string(n));
        if (options.collect_stats) {
            stats << "homology_dim=" << n << "\n";
            stats << cli::take_library_stats();
        }
        if (args.verify) {
            status = mpc_verify_presentation(in.complex, n, presentation);
            if (status != MPC_OK)
                cli::fail_status(status, "verification of dimension " + std::to_string(n));
        }
        t_io = std::chrono::steady_clock::now();
        const std::string path = args.output == "-" || dims.size() == 1
                                     ? args.output
                                     : suffixed_path(args.output, n);
        out_bytes += cli::write_output(presentation, path);
        io_seconds += cli::seconds_since(t_io);
        mpc_complex_free(presentation);
    }

    if (args.stats != cli::StatsMode::None) {
        stats << "io_seconds=" << io_seconds << "\n";
        stats << "total_seconds=" << cli::seconds_since(t_total) << "\n";
        stats << "input_bytes=" << in.bytes << "\n";
        stats << "output_bytes=" << out_bytes << "\n";
        if (in.bytes > 0)
            stats << "compression_ratio=" << static_cast<double>(out_bytes) / in.bytes << "\n";
        cli::print_stats(args.stats, stats.str());
    }

    if (preprocessed) mpc_complex_free(preprocessed);
    mpc_complex_free(in.complex);
    return 0;
}
