#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mpcompress.h"

namespace cli {

enum class StatsMode { None, KeyValue, Pretty };

struct CommonArgs {
    std::string input = "-";
    std::string output = "-";
    int threads = 0;  // 0: auto
    bool threads_given = false;
    StatsMode stats = StatsMode::None;
    bool verify = false;
};

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

[[noreturn]] inline void fail_usage(const std::string& message, const char* usage) {
    std::cerr << "error: " << message << "\n" << usage;
    std::exit(2);
}

inline int parse_thread_value(const std::string& value, const char* usage) {
    if (value == "auto") return 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (!end || *end != '\0' || v <= 0) fail_usage("--threads expects a positive integer or 'auto'", usage);
    return static_cast<int>(v);
}

// --threads falls back to MPCOMPRESS_THREADS when not given on the line.
inline void apply_thread_env(CommonArgs& args, const char* usage) {
    if (args.threads_given) return;
    const char* env = std::getenv("MPCOMPRESS_THREADS");
    if (env && *env) args.threads = parse_thread_value(env, usage);
}

inline int exit_code_for(mpc_status status) {
    switch (status) {
        case MPC_OK: return 0;
        case MPC_ERROR_PARSE: return 1;
        case MPC_ERROR_VERIFY: return 3;
        default: return 2;
    }
}

[[noreturn]] inline void fail_status(mpc_status status, const std::string& context) {
    std::cerr << "error: " << context << ": " << mpc_error_message() << "\n";
    std::exit(exit_code_for(status));
}

struct InputData {
    mpc_complex* complex = nullptr;
    std::size_t bytes = 0;
};

// Reads '-' from stdin, anything else as a file path.
inline InputData read_input(const std::string& path) {
    InputData in;
    mpc_status status;
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        const std::string text = buffer.str();
        in.bytes = text.size();
        status = mpc_parse_string(text.data(), text.size(), &in.complex);
    } else {
        if (std::FILE* f = std::fopen(path.c_str(), "rb")) {
            std::fseek(f, 0, SEEK_END);
            in.bytes = static_cast<std::size_t>(std::ftell(f));
            std::fclose(f);
        }
        status = mpc_parse_file(path.c_str(), &in.complex);
    }
    if (status != MPC_OK) fail_status(status, "reading '" + path + "'");
    return in;
}

// Returns the serialized size.
inline std::size_t write_output(const mpc_complex* c, const std::string& path) {
    char* data = nullptr;
    std::size_t size = 0;
    mpc_status status = mpc_write_string(c, &data, &size);
    if (status != MPC_OK) fail_status(status, "serializing output");
    if (path == "-") {
        std::fwrite(data, 1, size, stdout);
        std::fflush(stdout);
    } else {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) {
            mpc_buffer_free(data);
            std::cerr << "error: cannot open '" << path << "' for writing\n";
            std::exit(2);
        }
        std::fwrite(data, 1, size, f);
        std::fclose(f);
    }
    mpc_buffer_free(data);
    return size;
}

inline std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t eq = line.find('=');
        if (eq != std::string::npos) out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

inline void print_stats(StatsMode mode, const std::string& kv_text) {
    if (mode == StatsMode::KeyValue) {
        std::cerr << kv_text;
        return;
    }
    std::size_t width = 0;
    const auto pairs = parse_kv(kv_text);
    for (const auto& [key, value] : pairs) width = std::max(width, key.size());
    for (const auto& [key, value] : pairs)
        std::cerr << "  " << key << std::string(width - key.size() + 2, ' ') << value << "\n";
}

// Library stats from the last collect_stats run, if any.
inline std::string take_library_stats() {
    char* data = mpc_stats_dump();
    if (!data) return {};
    std::string text = data;
    mpc_buffer_free(data);
    return text;
}

}  // namespace cli
