#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

// Shared plumbing for the CLI: exit codes, %.17g rendering, manifest
// assembly, and error reporting. The CLI talks to the core exclusively
// through the C API in comasslab.h.

namespace cli {

// Process exit codes (also documented in the README).
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInputFormat = 3;

inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof(esc), "\\u%04x", c);
          out += esc;
        } else {
          out += c;
        }
    }
  }
  return out;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Reconstructs the invoking command line for the manifest.
std::string command_line(int argc, char** argv);

// {"command":..., "seed":..., "config":{...}, "version":..., "threads":..., "wall_time_s":...}
std::string manifest_json(const std::string& command, std::uint64_t seed,
                          const std::string& config_json, int threads, double wall_s);

// --threads when given (> 0), else COMASS_LAB_THREADS, else 1.
int effective_threads(int cli_threads);

// Seed-stream derivation for CLI-side trial loops.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Reads a whole file; exits with kExitInputFormat on failure.
std::string slurp_file(const std::string& path);

}  // namespace cli
