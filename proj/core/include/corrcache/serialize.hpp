#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrcache/bounds.hpp"
#include "corrcache/multireq.hpp"
#include "corrcache/scheme.hpp"
#include "corrcache/verify.hpp"

namespace corrcache {

/// Transmission as JSON: instance, demand, leaders, load and a `groups`
/// array of `{step, J, B, rows}` with rows listed as canonical sub-block ids.
/// Output is indented and stable for identical inputs.
std::string transmission_json(const ProblemInstance& inst, const Transmission& tx);

/// Group-tagged rows read back from transmission_json output.
struct ParsedTransmission {
  std::vector<LinearCombination> combinations;
  std::string load;
};
ParsedTransmission parse_transmission_json(std::string_view text);

/// Verification report: instance, demand, leaders, load as `p/q`, decodable
/// flag and per-user missing lists (empty on success).
std::string verification_json(const ProblemInstance& inst, const DemandVector& d, const VerificationResult& result);

std::string multirequest_json(const std::vector<std::pair<MultiRequestCase, VerificationResult>>& cases);

std::string sweep_csv(const SweepReport& report);
std::string sweep_json(const SweepReport& report);

/// One row of a memory-load curve.
struct CurveRow {
  Rational memory;
  Rational load;
  std::optional<int> t;
  /// `s` or `avg`
  std::string type_label;
  /// converse | scheme | baseline
  std::string kind;
  /// bound | optimal | UNVERIFIED | reference
  std::string status;
};

/// Header `M,load,t,s_or_avg,kind,M_float,load_float,status`; exact values
/// as `p/q`, floats with 10 significant digits.
std::string curve_csv(const std::vector<CurveRow>& rows);

std::string envelope_json(const Envelope& env, int n_files, int n_users, int overlap,
                          const std::optional<Rational>& evaluated_at);

/// Fixed 10-significant-digit rendering used for the float columns.
std::string format_float(double value);

}  // namespace corrcache
