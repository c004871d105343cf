// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/evaluation/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "defexam/common/error.hpp"
#include "defexam/common/random.hpp"

namespace defexam::evaluation {

namespace {

double pct(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

ThresholdChoice balance_threshold(const std::vector<double>& scores, double target_fraction) {
  if (scores.empty()) throw Error(ErrorKind::kInvalidArgument, "balance_threshold: no scores");
  if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "balance_threshold: target must lie in (0, 1)");
  }
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto fraction_at = [&](double t) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    return (n - static_cast<double>(below)) / n;
  };

  std::vector<double> candidates(sorted.begin(), sorted.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  candidates.push_back(std::nextafter(sorted.back(), std::numeric_limits<double>::infinity()));

  // Fractions fall as t rises, so the first candidate within the target is the smallest.
  for (double t : candidates) {
    const double f = fraction_at(t);
    if (f <= target_fraction + 1e-12) {
      if (target_fraction - f < 1.0 / n - 1e-12) return {t, f, true};
      break;
    }
  }
  ThresholdChoice best{candidates.front(), fraction_at(candidates.front()), false};
  for (double t : candidates) {
    const double f = fraction_at(t);
    if (std::abs(f - target_fraction) <= std::abs(best.achieved_fraction - target_fraction) + 1e-12) {
      best = {t, f, false};
    }
  }
  return best;
}

double harmonic_mean(double a, double b) { return a + b == 0.0 ? 0.0 : 2.0 * a * b / (a + b); }

BinaryMetrics binary_metrics(const std::vector<bool>& predictions, const std::vector<bool>& labels) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "binary_metrics: length mismatch");
  }
  BinaryMetrics m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i]) {
      ++(labels[i] ? m.tp : m.fp);
    } else {
      ++(labels[i] ? m.fn : m.tn);
    }
  }
  m.precision_undefined = m.tp + m.fp == 0;
  m.recall_undefined = m.tp + m.fn == 0;
  m.precision = pct(m.tp, m.tp + m.fp);
  m.recall = pct(m.tp, m.tp + m.fn);
  m.f1 = harmonic_mean(m.precision, m.recall);
  m.accuracy = pct(m.tp + m.tn, labels.size());
  m.predicted_positive = pct(m.tp + m.fp, labels.size());
  return m;
}

double auroc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw Error(ErrorKind::kInvalidArgument, "auroc: length mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  // Average ranks (1-based) over tie groups.
  std::vector<double> rank(scores.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) rank[order[k]] = avg;
    i = j;
  }
  double pos = 0, neg = 0, rank_sum = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) {
      ++pos;
      rank_sum += rank[i];
    } else {
      ++neg;
    }
  }
  if (pos == 0 || neg == 0) throw Error(ErrorKind::kInvalidArgument, "auroc needs both classes");
  const double u = rank_sum - pos * (pos + 1) / 2.0;
  return 100.0 * u / (pos * neg);
}

MultilabelResult multilabel_metrics(const CategoryScores& test_scores, const CategoryLabels& test_labels,
                                    const CategoryScores& validation_scores,
                                    const CategoryLabels& validation_labels) {
  if (test_scores.size() != test_labels.size() || validation_scores.size() != validation_labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "multilabel_metrics: length mismatch");
  }
  MultilabelResult out;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t c = 0; c < corpus::kNumFinalCategories; ++c) {
    CategoryResult r;
    r.category = corpus::kFinalCategories[c];
    std::vector<double> val(validation_scores.size());
    std::size_t val_pos = 0;
    for (std::size_t i = 0; i < val.size(); ++i) {
      val[i] = validation_scores[i][c];
      val_pos += validation_labels[i][c] ? 1 : 0;
    }
    if (val_pos == 0 || val_pos == val.size()) {
      r.threshold_defaulted = true;
      r.threshold = 0.5;
      r.validation_rate = val.empty() ? 0.0 : static_cast<double>(val_pos) / val.size();
    } else {
      r.validation_rate = static_cast<double>(val_pos) / static_cast<double>(val.size());
      r.threshold = balance_threshold(val, r.validation_rate).threshold;
    }
    std::vector<bool> pred(test_scores.size()), lab(test_scores.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
      pred[i] = test_scores[i][c] >= r.threshold;
      lab[i] = test_labels[i][c] != 0;
    }
    r.metrics = binary_metrics(pred, lab);
    tp += r.metrics.tp;
    fp += r.metrics.fp;
    fn += r.metrics.fn;
    out.macro_f1 += r.metrics.f1 / static_cast<double>(corpus::kNumFinalCategories);
    out.categories.push_back(r);
  }
  out.micro_f1 = harmonic_mean(pct(tp, tp + fp), pct(tp, tp + fn));
  return out;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kInvalidArgument, "pearson: length mismatch");
  if (std::set<double>(x.begin(), x.end()).size() < 2 ||
      std::set<double>(y.begin(), y.end()).size() < 2) {
    return std::nullopt;
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

CalibrationReport calibration_analysis(const std::vector<double>& probabilities,
                                       const std::vector<bool>& outcomes,
                                       const std::vector<double>& judge_confidences,
                                       const std::vector<double>& judge_similarities) {
  if (probabilities.size() != outcomes.size()) {
    throw Error(ErrorKind::kInvalidArgument, "calibration_analysis: length mismatch");
  }
  constexpr std::size_t kBins = 10;
  CalibrationReport report;
  std::vector<double> sum_p(kBins, 0), sum_y(kBins, 0);
  report.bins.resize(kBins);
  for (std::size_t b = 0; b < kBins; ++b) {
    report.bins[b].lower = static_cast<double>(b) / kBins;
    report.bins[b].upper = static_cast<double>(b + 1) / kBins;
  }
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = std::clamp(probabilities[i], 0.0, 1.0);
    const auto b = std::min<std::size_t>(kBins - 1, static_cast<std::size_t>(p * kBins));
    ++report.bins[b].count;
    sum_p[b] += p;
    sum_y[b] += outcomes[i] ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(probabilities.size());
  for (std::size_t b = 0; b < kBins; ++b) {
    auto& bin = report.bins[b];
    bin.fraction = n == 0 ? 0.0 : static_cast<double>(bin.count) / n;
    bin.low_support = bin.fraction < 0.01;
    if (bin.count > 0) {
      bin.mean_probability = sum_p[b] / static_cast<double>(bin.count);
      bin.accuracy = sum_y[b] / static_cast<double>(bin.count);
    }
  }
  if (!judge_confidences.empty() || !judge_similarities.empty()) {
    report.pearson = pearson(judge_confidences, judge_similarities);
  }
  return report;
}

std::vector<classifiers::ScoredClaim> random_baseline(const std::vector<corpus::LabeledClaim>& rows,
                                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<classifiers::ScoredClaim> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    classifiers::ScoredClaim s;
    s.application_id = row.application_id();
    s.claim_number = row.claim.number;
    s.probability = rng.uniform01();
    for (auto& c : s.categories) c = rng.uniform01();
    out.push_back(s);
  }
  return out;
}

}  // namespace defexam::evaluation
