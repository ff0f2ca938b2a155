#pragma once

// One verification result per JSON line:
// {"check", "params", "value", "bound", "ratio", "pass", "wall_time", "report_only"}.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

namespace d5 {

using Json = nlohmann::ordered_json;

struct VerificationReport {
  std::string check;
  Json params = Json::object();
  double value = 0;
  double bound = 0;
  double ratio = 0;
  bool pass = false;
  std::optional<double> wall_time;  // seconds; left empty for byte-stable output
  bool report_only = false;
  std::string note;  // free text, e.g. why a check is flagged
};

/// pass iff ratio <= threshold.
inline VerificationReport assertable(std::string check, Json params, double value, double bound, double ratio,
                                     double threshold = 1.0) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.value = value;
  r.bound = bound;
  r.ratio = ratio;
  r.pass = ratio <= threshold;
  return r;
}

/// Always passes; `within` records whether the value fell inside the band.
inline VerificationReport report_only(std::string check, Json params, double value, double bound, double ratio,
                                      std::optional<bool> within = std::nullopt) {
  VerificationReport r = assertable(std::move(check), std::move(params), value, bound, ratio);
  r.pass = true;
  r.report_only = true;
  if (within) r.params["within_band"] = *within;
  return r;
}

namespace detail {
// JSON has no inf/nan.
inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace detail

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["value"] = detail::finite_or_null(r.value);
  j["bound"] = detail::finite_or_null(r.bound);
  j["ratio"] = detail::finite_or_null(r.ratio);
  j["pass"] = r.pass;
  j["wall_time"] = r.wall_time ? Json(*r.wall_time) : Json(nullptr);
  j["report_only"] = r.report_only;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline void write_json_line(std::ostream& os, const VerificationReport& r) { os << to_json(r).dump() << '\n'; }

/// Runs fn() -> VerificationReport and fills wall_time when `timed`.
template <class Fn>
VerificationReport timed_check(bool timed, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = fn();
  if (timed) r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace d5
