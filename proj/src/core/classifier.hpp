#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "core/model.hpp"

namespace smtpflow {

enum class Feature : uint8_t { Bytes = 0, Packets = 1, Bpp = 2 };
const char* to_string(Feature f);

struct FeatureVote {
  Feature feature;
  FlowClass vote;

  friend bool operator==(const FeatureVote&, const FeatureVote&) = default;
};

/// One feature's vote under the threshold table.
///   Bytes:   < byte_lo failed | [byte_lo, byte_hi) rejected | >= byte_hi accepted
///   Packets: < pkt_lo failed  | [pkt_lo, pkt_hi] rejected   | > pkt_hi accepted
///   Bpp:     < bpp_bound rejected | >= bpp_bound accepted
/// Bpp never votes Failed: the boundary table gives both small classes the
/// same bytes/packet range, so that feature only separates accepted traffic.
FlowClass classify_feature(const FlowRecord& flow, Feature feature, const Thresholds& t);

struct Classification {
  FlowClass decision;
  std::array<FeatureVote, 3> votes;  // Bytes, Packets, Bpp
};

/// Majority vote over the three features; with no majority the Bytes vote
/// wins (flow size is the sharpest of the three discriminators).
Classification classify(const FlowRecord& flow, const Thresholds& t);

class EmpiricalCdf {
 public:
  /// Throws empty_sample for an empty value set.
  static EmpiricalCdf from_values(std::vector<double> values);

  /// |{v : v < x}| / n  (strictly below).
  double fraction_below(double x) const;

  /// Order statistic at rank floor(q * (n - 1)), q in [0, 1].
  double quantile(double q) const;

  size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf compute_cdf(std::vector<double> values);
double fraction_below(const EmpiricalCdf& cdf, double x);

/// Recovers thresholds from labeled flows: each boundary is the smallest
/// integer t minimizing the two-sided overlap count between the classes it
/// separates (e.g. byte_lo minimizes |failed with bytes >= t| +
/// |rejected with bytes < t|). Requires >= 100 flows of every class.
Thresholds calibrate(std::span<const LabeledFlow> labeled);

}  // namespace smtpflow
