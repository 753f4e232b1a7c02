#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "cli/format.hpp"

namespace wbalg::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  int p = 3;
  int d = 3;
  Format format = Format::json;
  double tol = 1e-9;
};

// Rejects layouts whose 2p-register operators exceed the dense guard.
void require_operator_scale(const RunConfig& cfg);

int cmd_dims(const RunConfig& cfg, std::ostream& os);
int cmd_bmatrix(const RunConfig& cfg, const std::string& mu, const std::string& nu, std::ostream& os);

struct UnitsOptions {
  std::string ideal = "all";  // top, sub, all
  std::optional<int> row;     // 1-based unit labels for an operator dump
  std::optional<int> col;
};
int cmd_units(const RunConfig& cfg, const UnitsOptions& opt, std::ostream& os);

struct SpectrumOptions {
  std::optional<int> arcs;        // default: p and p-1
  std::string method = "brute";   // brute, analytic, both
  bool fig7 = false;
};
int cmd_spectrum(const RunConfig& cfg, const SpectrumOptions& opt, std::ostream& os);

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& os);

}  // namespace wbalg::cli
