#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace tentctl::cli {

// Commands write their primary output to `out` and diagnostics to `diag`,
// returning a process exit code. Flag parsing/validation failures name the
// offending flag on `diag` and return 2.

struct CountOptions {
  int period = 1;
};

struct EnumerateOptions {
  std::string H = "3";
  int period = 1;
};

struct FindOptions {
  std::string H = "3";
  int period = 1;
  std::string regime = "pos";           // "pos" | "neg"
  std::optional<std::string> offset;    // c in (-1,1); default +-0.4 by regime
  std::optional<std::string> theta;     // exact rational text, overrides offset
  std::optional<std::string> seed_value;  // single-seed mode
  int grid = 50;                        // grid mode (when no seed_value)
  int precision = 0;                    // 0 -> 1.05*T*log10(H) rule
  std::optional<std::string> threshold;
  long max_iters = 400;
  bool force = false;  // proceed with theta outside both regimes
  std::optional<std::string> trace_path;  // single-seed only: CSV n,x,U,Uhat
  std::string range_lo = "0";
  std::string range_hi = "1";
};

struct GraphOptions {
  std::string H = "3";
  int period = 1;
  std::string theta;
  long samples = 1000;
  int precision = 0;
};

struct CantorOptions {
  std::string mode;  // "cycles" | "first-type"
  std::string H = "3";
  int period = 13;
  int bins = 50;
  std::string source = "oracle";  // cycles mode: "oracle" | "finder"
  std::optional<std::string> offset_pos;  // finder source; default "0.4"
  std::optional<std::string> offset_neg;  // finder source; default "-0.4"
  int grid = 50;
  int precision = 0;
  int depth = 25;
  long count = 200000;
  unsigned long long seed = 1;
};

struct VerifyOptions {
  std::string H = "3";
  int period = 1;
  std::string tolerance = "1e-12";
};

int cmd_count(const CountOptions& opt, std::ostream& out, std::ostream& diag);
int cmd_enumerate(const EnumerateOptions& opt, std::ostream& out, std::ostream& diag);
int cmd_find(const FindOptions& opt, std::ostream& out, std::ostream& diag);
int cmd_graph(const GraphOptions& opt, std::ostream& out, std::ostream& diag);
int cmd_cantor(const CantorOptions& opt, std::ostream& out, std::ostream& diag);
// Reads `find` JSON lines from `in`, matches them against the exact oracle.
// Exit 0 when every found cycle matched within tolerance.
int cmd_verify(const VerifyOptions& opt, std::istream& in, std::ostream& out,
               std::ostream& diag);

}  // namespace tentctl::cli
