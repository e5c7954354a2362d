#include "core/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace smtpflow {

const char* to_string(Feature f) {
  switch (f) {
    case Feature::Bytes: return "bytes";
    case Feature::Packets: return "packets";
    case Feature::Bpp: return "bpp";
  }
  return "?";
}

FlowClass classify_feature(const FlowRecord& flow, Feature feature, const Thresholds& t) {
  switch (feature) {
    case Feature::Bytes:
      if (flow.bytes < t.byte_lo) return FlowClass::Failed;
      if (flow.bytes < t.byte_hi) return FlowClass::Rejected;
      return FlowClass::Accepted;
    case Feature::Packets:
      if (flow.packets < t.pkt_lo) return FlowClass::Failed;
      if (flow.packets <= t.pkt_hi) return FlowClass::Rejected;
      return FlowClass::Accepted;
    case Feature::Bpp:
      return bytes_per_packet(flow) < t.bpp_bound ? FlowClass::Rejected : FlowClass::Accepted;
  }
  raise(Errc::internal, "unknown feature");
}

Classification classify(const FlowRecord& flow, const Thresholds& t) {
  Classification c{};
  c.votes = {FeatureVote{Feature::Bytes, classify_feature(flow, Feature::Bytes, t)},
             FeatureVote{Feature::Packets, classify_feature(flow, Feature::Packets, t)},
             FeatureVote{Feature::Bpp, classify_feature(flow, Feature::Bpp, t)}};
  int tally[kNumClasses] = {0, 0, 0};
  for (const FeatureVote& v : c.votes) ++tally[class_index(v.vote)];
  c.decision = c.votes[0].vote;  // Bytes wins without a majority
  for (size_t i = 0; i < kNumClasses; ++i)
    if (tally[i] >= 2) c.decision = static_cast<FlowClass>(i);
  return c;
}

EmpiricalCdf EmpiricalCdf::from_values(std::vector<double> values) {
  if (values.empty()) raise(Errc::empty_sample, "empirical CDF needs at least one value");
  std::sort(values.begin(), values.end());
  EmpiricalCdf cdf;
  cdf.sorted_ = std::move(values);
  return cdf;
}

double EmpiricalCdf::fraction_below(double x) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double q) const {
  q = std::clamp(q, 0.0, 1.0);
  size_t rank = static_cast<size_t>(q * static_cast<double>(sorted_.size() - 1));
  return sorted_[rank];
}

EmpiricalCdf compute_cdf(std::vector<double> values) {
  return EmpiricalCdf::from_values(std::move(values));
}

double fraction_below(const EmpiricalCdf& cdf, double x) { return cdf.fraction_below(x); }

namespace {

// Smallest integer t minimizing |{lower >= t}| + |{upper < t}|. The cost is
// piecewise constant and changes only at floor(v)+1, so those points (plus
// the left end as anchor) are the complete candidate set.
int64_t best_boundary(std::vector<double> lower, std::vector<double> upper) {
  std::sort(lower.begin(), lower.end());
  std::sort(upper.begin(), upper.end());
  std::vector<int64_t> candidates;
  candidates.reserve(lower.size() + upper.size() + 1);
  candidates.push_back(static_cast<int64_t>(std::floor(std::min(lower.front(), upper.front()))));
  for (double v : lower) candidates.push_back(static_cast<int64_t>(std::floor(v)) + 1);
  for (double v : upper) candidates.push_back(static_cast<int64_t>(std::floor(v)) + 1);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto count_below = [](const std::vector<double>& v, int64_t t) {
    return static_cast<size_t>(
        std::lower_bound(v.begin(), v.end(), static_cast<double>(t)) - v.begin());
  };

  int64_t best_t = candidates.front();
  size_t best_cost = std::numeric_limits<size_t>::max();
  for (int64_t t : candidates) {
    size_t cost = (lower.size() - count_below(lower, t)) + count_below(upper, t);
    if (cost < best_cost) {
      best_cost = cost;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace

Thresholds calibrate(std::span<const LabeledFlow> labeled) {
  std::vector<double> bytes[kNumClasses];
  std::vector<double> packets[kNumClasses];
  std::vector<double> bpp[kNumClasses];
  for (const LabeledFlow& lf : labeled) {
    size_t i = class_index(lf.label);
    bytes[i].push_back(static_cast<double>(lf.flow.bytes));
    packets[i].push_back(static_cast<double>(lf.flow.packets));
    bpp[i].push_back(bytes_per_packet(lf.flow));
  }
  for (size_t i = 0; i < kNumClasses; ++i)
    if (bytes[i].size() < 100)
      raise(Errc::insufficient_class_samples,
            std::string(to_string(static_cast<FlowClass>(i))) + ": have " +
                std::to_string(bytes[i].size()) + ", need >= 100");

  constexpr size_t F = class_index(FlowClass::Failed);
  constexpr size_t R = class_index(FlowClass::Rejected);
  constexpr size_t A = class_index(FlowClass::Accepted);

  Thresholds t;
  t.byte_lo = static_cast<uint64_t>(std::max<int64_t>(1, best_boundary(bytes[F], bytes[R])));
  t.byte_hi = static_cast<uint64_t>(std::max<int64_t>(1, best_boundary(bytes[R], bytes[A])));
  t.pkt_lo = static_cast<uint64_t>(std::max<int64_t>(1, best_boundary(packets[F], packets[R])));
  // The packets vote treats values <= pkt_hi as rejected, so the boundary
  // search runs on the same >=/< objective and the bound is t* - 1.
  t.pkt_hi = static_cast<uint64_t>(std::max<int64_t>(2, best_boundary(packets[R], packets[A]) - 1));
  std::vector<double> small_bpp = bpp[F];
  small_bpp.insert(small_bpp.end(), bpp[R].begin(), bpp[R].end());
  t.bpp_bound = static_cast<double>(std::max<int64_t>(1, best_boundary(small_bpp, bpp[A])));
  validate(t);
  return t;
}

}  // namespace smtpflow
