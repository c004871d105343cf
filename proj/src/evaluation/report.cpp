// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/evaluation/report.hpp"

#include <set>

#include <fmt/format.h>

#include "defexam/classifiers/logistic.hpp"
#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"

namespace defexam::evaluation {

namespace {

struct Aligned {
  std::vector<double> scores;
  CategoryScores categories;
  std::vector<bool> labels;
  CategoryLabels category_labels;
  std::size_t matched = 0;
  std::size_t failed = 0;
};

Aligned align(const std::vector<corpus::LabeledClaim>& rows,
              const std::vector<classifiers::ScoredClaim>& scores) {
  const auto index = classifiers::by_key(scores);
  const auto targets = classifiers::category_targets(rows);
  Aligned a;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto it = index.find({rows[i].application_id(), rows[i].claim.number});
    if (it != index.end()) {
      ++a.matched;
      if (it->second.failed) ++a.failed;
      a.scores.push_back(it->second.probability);
      a.categories.push_back(it->second.categories);
    } else {
      a.scores.push_back(0.0);
      a.categories.push_back({});
    }
    a.labels.push_back(rows[i].label);
    a.category_labels.push_back(targets[i]);
  }
  return a;
}

std::string opt(const std::optional<double>& v, int digits = 1) {
  return v ? fmt::format("{:.{}f}", *v, digits) : std::string("-");
}

}  // namespace

ModelEvaluation evaluate_scores(const std::string& name,
                                const std::vector<corpus::LabeledClaim>& test_rows,
                                const std::vector<classifiers::ScoredClaim>& test_scores,
                                const std::vector<corpus::LabeledClaim>& validation_rows,
                                const std::vector<classifiers::ScoredClaim>& validation_scores) {
  const auto test = align(test_rows, test_scores);
  const auto val = align(validation_rows, validation_scores);
  if (test.matched == 0) {
    throw Error(ErrorKind::kPrerequisite, "no test predictions for " + name + "; run `predict` first");
  }
  if (val.matched == 0) {
    throw Error(ErrorKind::kPrerequisite,
                "no validation predictions for " + name + "; run `predict --split validation` first");
  }
  ModelEvaluation out;
  out.name = name;
  out.test_claims = test_rows.size();
  out.failed_predictions = test.failed;

  BinaryBlock binary;
  binary.threshold = balance_threshold(val.scores, 0.5);
  std::vector<bool> predicted(test.scores.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) predicted[i] = test.scores[i] >= binary.threshold.threshold;
  binary.metrics = binary_metrics(predicted, test.labels);
  if (std::set<bool>(test.labels.begin(), test.labels.end()).size() == 2) {
    binary.auroc = auroc(test.scores, test.labels);
  }
  out.binary = binary;
  out.multilabel = multilabel_metrics(test.categories, test.category_labels, val.categories,
                                      val.category_labels);
  out.calibration = calibration_analysis(test.scores, test.labels);
  return out;
}

void write_reports(const std::filesystem::path& dir, const std::vector<ModelEvaluation>& models) {
  std::string binary =
      "model\tthreshold\tvalidation_fraction\tprecision\trecall\tf1\tauroc\taccuracy\tpercent_indefinite\t"
      "failed_predictions\tflags\n";
  std::string multilabel = "model\tcategory\tthreshold\tvalidation_rate\tprecision\trecall\tf1\tflags\n";
  std::string judge =
      "model\taverage\tvariant\tprecision\trecall\tf1\tclaims\tfailed_pairs\n";
  std::string calibration = "model\tbin_lower\tbin_upper\tcount\tfraction\tmean_probability\taccuracy\tlow_support\n";
  std::string summary = "# Evaluation summary\n";

  for (const auto& m : models) {
    summary += fmt::format("\n## {}\n\nTest claims: {} (failed predictions: {})\n", m.name, m.test_claims,
                           m.failed_predictions);
    if (m.binary) {
      const auto& b = *m.binary;
      std::string flags;
      if (!b.threshold.target_reached) flags += "threshold_target_unreachable;";
      if (b.metrics.precision_undefined) flags += "precision_undefined;";
      binary += fmt::format("{}\t{:.6f}\t{:.4f}\t{:.2f}\t{:.2f}\t{:.2f}\t{}\t{:.2f}\t{:.2f}\t{}\t{}\n", m.name,
                            b.threshold.threshold, b.threshold.achieved_fraction, b.metrics.precision,
                            b.metrics.recall, b.metrics.f1, opt(b.auroc, 2), b.metrics.accuracy,
                            b.metrics.predicted_positive, m.failed_predictions, flags);
      summary += fmt::format(
          "\n| P | R | F1 | AUROC | Acc | % indef | threshold |\n|---|---|---|---|---|---|---|\n"
          "| {:.1f} | {:.1f} | {:.1f} | {} | {:.1f} | {:.1f} | {:.4f} |\n",
          b.metrics.precision, b.metrics.recall, b.metrics.f1, opt(b.auroc), b.metrics.accuracy,
          b.metrics.predicted_positive, b.threshold.threshold);
    }
    if (m.multilabel) {
      summary += "\n| Category | F1 |\n|---|---|\n";
      for (const auto& c : m.multilabel->categories) {
        std::string flags;
        if (c.threshold_defaulted) flags += "threshold_defaulted;";
        if (c.metrics.recall_undefined) flags += "no_test_positives;";
        multilabel += fmt::format("{}\t{}\t{:.6f}\t{:.4f}\t{:.2f}\t{:.2f}\t{:.2f}\t{}\n", m.name,
                                  corpus::id(c.category), c.threshold, c.validation_rate,
                                  c.metrics.precision, c.metrics.recall, c.metrics.f1, flags);
        summary += fmt::format("| {} | {:.1f} |\n", corpus::display_name(c.category), c.metrics.f1);
      }
      multilabel += fmt::format("{}\tmacro\t\t\t\t\t{:.2f}\t\n{}\tmicro\t\t\t\t\t{:.2f}\t\n", m.name,
                                m.multilabel->macro_f1, m.name, m.multilabel->micro_f1);
      summary += fmt::format("| Macro | {:.1f} |\n| Micro | {:.1f} |\n", m.multilabel->macro_f1,
                             m.multilabel->micro_f1);
    }
    if (m.judge) {
      const auto& j = *m.judge;
      summary += "\n| Judge | P | R | F1 |\n|---|---|---|---|\n";
      const std::pair<const char*, const Prf*> blocks[] = {{"macro\tsoft", &j.macro_soft},
                                                           {"macro\tge75", &j.macro_75},
                                                           {"micro\tsoft", &j.micro_soft},
                                                           {"micro\tge75", &j.micro_75}};
      for (const auto& [label, prf] : blocks) {
        judge += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", m.name, label, opt(prf->p, 2), opt(prf->r, 2),
                             opt(prf->f1, 2), j.claims, j.failed_pairs);
        std::string pretty = label;
        pretty[pretty.find('\t')] = ' ';
        summary += fmt::format("| {} | {} | {} | {} |\n", pretty, opt(prf->p), opt(prf->r), opt(prf->f1));
      }
    }
    if (m.calibration) {
      for (const auto& bin : m.calibration->bins) {
        calibration += fmt::format("{}\t{:.1f}\t{:.1f}\t{}\t{:.4f}\t{}\t{}\t{}\n", m.name, bin.lower, bin.upper,
                                   bin.count, bin.fraction, opt(bin.mean_probability, 4),
                                   opt(bin.accuracy, 4), bin.low_support ? "yes" : "no");
      }
      if (m.calibration->pearson) {
        summary += fmt::format("\nPearson correlation (reason confidence vs. judge similarity): {:.3f}\n",
                               *m.calibration->pearson);
      }
    }
  }
  fs::write_file_atomic(dir / "binary.tsv", binary);
  fs::write_file_atomic(dir / "multilabel.tsv", multilabel);
  fs::write_file_atomic(dir / "judge.tsv", judge);
  fs::write_file_atomic(dir / "calibration.tsv", calibration);
  fs::write_file_atomic(dir / "summary.md", summary);
}

}  // namespace defexam::evaluation
