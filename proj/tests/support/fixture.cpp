// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixture.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include <fmt/format.h>

#include "defexam/common/random.hpp"
#include "defexam/ingest/convert.hpp"
#include "defexam/oa/extraction.hpp"

namespace defexam::testing {
namespace {

using nlohmann::json;

const std::vector<std::string> kNouns = {
    "sensor",    "controller", "housing",  "processor", "memory",   "module",   "interface",
    "bracket",   "valve",      "circuit",  "display",   "antenna",  "battery",  "filter",
    "actuator",  "buffer",     "receiver", "encoder",   "register", "terminal", "cache",
    "scheduler", "router",     "gateway",  "database",  "pipeline", "lens",     "spring"};
const std::vector<std::string> kVerbs = {"process", "filter", "encode", "transmit", "store", "compare"};
const std::vector<std::string> kVerbing = {"processing", "filtering", "encoding",
                                           "transmitting", "storing",  "comparing"};
const std::vector<std::string> kAdjectives = {"large", "thin", "fast", "flexible", "rigid", "short"};
const std::vector<std::string> kCoined = {"hyperlattice", "quasi-node", "flux frame", "meta-slot"};
const std::vector<std::string> kSystems = {"system", "apparatus", "device"};

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

Date add_days(Date d, int days) {
  // Coarse calendar arithmetic is enough for fixture dates: 28-day months.
  int total = d.day - 1 + days;
  int months = total / 28;
  d.day = total % 28 + 1;
  int m = d.month - 1 + months;
  d.year += m / 12;
  d.month = m % 12 + 1;
  return d;
}

// Inserts `clause` before the final period of a claim.
void append_clause(std::string& claim, const std::string& clause) {
  if (!claim.empty() && claim.back() == '.') claim.pop_back();
  claim += clause + ".";
}

std::string quote_noise(Rng& rng, const std::string& recitation) {
  switch (rng.below(6)) {
    case 0: return "“" + recitation + "”";
    case 1: {
      std::string s = recitation;
      s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
      return s;
    }
    case 2: {
      std::string s = recitation;
      if (auto sp = s.find(' '); sp != std::string::npos) s.insert(sp, " ");
      return s;
    }
    default: return recitation;
  }
}

struct Planted {
  std::string category;
  std::string recitation;  // empty: no recitation
  std::string reason;
};

Planted plant(Rng& rng, std::string& claim, int number, const std::vector<std::string>& elements,
              std::set<std::string>& used_nouns) {
  static const std::vector<std::string> kCategories = {
      "antecedent_basis",   "antecedent_basis",   "antecedent_basis", "undefined_term",
      "undefined_term",     "relative_term",      "relative_term",    "exemplary_phrasing",
      "functional_claiming", "contradicting_limitations", "omission_of_essential_elements"};
  const auto& category = pick(rng, kCategories);
  Planted p{category, "", ""};
  if (category == "antecedent_basis") {
    std::string noun;
    do {
      noun = pick(rng, kNouns);
    } while (used_nouns.count(noun));
    used_nouns.insert(noun);
    append_clause(claim, fmt::format(", wherein the {} is connected to the {}", noun, elements[0]));
    p.recitation = "the " + noun;
    p.reason = fmt::format(
        "Claim {} recites the limitation \"{}\". There is insufficient antecedent basis for this "
        "limitation in the claim.", number, p.recitation);
  } else if (category == "undefined_term") {
    const auto& coined = pick(rng, kCoined);
    append_clause(claim, fmt::format(", wherein the {} forms a {} element", elements[1], coined));
    p.recitation = coined + " element";
    p.reason = fmt::format("The term \"{}\" in claim {} is not defined by the claim, and the "
                           "specification does not provide a standard for ascertaining its meaning.",
                           p.recitation, number);
  } else if (category == "relative_term") {
    const auto& adj = pick(rng, kAdjectives);
    append_clause(claim, fmt::format(", wherein the {} is substantially {}", elements[1], adj));
    p.recitation = "substantially " + adj;
    p.reason = fmt::format("The term \"{}\" in claim {} is a relative term which renders the claim "
                           "indefinite.", p.recitation, number);
  } else if (category == "exemplary_phrasing") {
    const auto& noun = pick(rng, kNouns);
    append_clause(claim, fmt::format(", wherein the {} comprises a part such as a {}", elements[2], noun));
    p.recitation = "such as a " + noun;
    p.reason = fmt::format("Regarding claim {}, the phrase \"{}\" renders the claim indefinite because it "
                           "is unclear whether the limitations following the phrase are part of the "
                           "claimed invention.", number, p.recitation);
  } else if (category == "functional_claiming") {
    const auto& verbing = pick(rng, kVerbing);
    append_clause(claim, fmt::format(", wherein the {} includes means for {} the data", elements[0], verbing));
    p.recitation = "means for " + verbing + " the data";
    p.reason = fmt::format("Claim {} recites \"{}\" but the specification fails to disclose the "
                           "corresponding structure for performing the claimed function.",
                           number, p.recitation);
  } else if (category == "contradicting_limitations") {
    append_clause(claim, fmt::format(", wherein the {} is both fixed and movable", elements[0]));
    p.recitation = "both fixed and movable";
    p.reason = fmt::format("Claim {} is indefinite because the limitation \"{}\" is internally "
                           "inconsistent.", number, p.recitation);
  } else {
    p.reason = fmt::format("Claim {} is indefinite for omitting essential elements: the claim does "
                           "not recite how the output is generated.", number);
  }
  return p;
}

}  // namespace

std::filesystem::path fresh_temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("defexam_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const std::vector<std::string>& planted_markers() {
  static const std::vector<std::string> kMarkers = {"substantially", "such as", "means for",
                                                    "fixed and movable", "element"};
  return kMarkers;
}

std::vector<FixtureApplication> make_fixture(const FixtureOptions& options) {
  Rng rng(options.seed);
  std::vector<FixtureApplication> apps;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < options.applications; ++i) {
    FixtureApplication app;
    do {
      app.id = std::to_string(15000000 + i * 1000 + rng.below(1000));
    } while (ids.count(app.id));
    ids.insert(app.id);
    app.filing_date = Date{static_cast<int>(2014 + rng.below(10)), static_cast<int>(1 + rng.below(12)),
                           static_cast<int>(1 + rng.below(28))};
    app.cpc_codes = {fmt::format("G06F  {}/{}", 3 + rng.below(40), 10 * rng.below(9))};
    if (rng.below(3) == 0) app.cpc_codes.push_back("H04L 9/0" + std::to_string(rng.below(9)));
    app.office_action_date = add_days(app.filing_date, 300 + static_cast<int>(rng.below(400)));

    // Elements introduced in claim 1.
    std::vector<std::string> elements;
    std::set<std::string> used;
    while (elements.size() < 4) {
      const auto& n = pick(rng, kNouns);
      if (used.insert(n).second) elements.push_back(n);
    }
    const auto& system = pick(rng, kSystems);
    const auto n_claims = 3 + rng.below(10);
    std::vector<bool> is_method(n_claims + 1, false);
    app.claim_texts.push_back(fmt::format(
        "A {} comprising: a {}; a {} coupled to the {}; and a {} configured to {} data received from the {}.",
        system, elements[0], elements[1], elements[0], elements[2], pick(rng, kVerbs), elements[1]));
    for (std::size_t k = 2; k <= n_claims; ++k) {
      if (rng.below(4) == 0) {
        is_method[k] = true;
        app.claim_texts.push_back(fmt::format("A method comprising: {} a signal at a {}; storing the signal in a {}; and {} the signal.",
                                              pick(rng, kVerbing), elements[0], elements[3], pick(rng, kVerbing)));
        continue;
      }
      const std::size_t parent = 1 + rng.below(k - 1);
      const std::string head = is_method[parent] ? "The method" : "The " + system;
      std::string tail;
      switch (rng.below(3)) {
        case 0: tail = fmt::format("the {} comprises a {}", elements[rng.below(4)], pick(rng, kNouns)); break;
        case 1: tail = fmt::format("the {} is arranged adjacent to the {}", elements[0], elements[1]); break;
        default: tail = "the data is transmitted to a remote server"; break;
      }
      app.claim_texts.push_back(fmt::format("{} of claim {}, wherein {}.", head, parent, tail));
    }

    app.paragraphs.clear();
    const auto n_par = 4 + rng.below(5);
    for (std::size_t k = 0; k < n_par; ++k) {
      app.paragraphs.push_back(fmt::format(
          "In some embodiments the {} may be implemented as a {} that communicates with the {}. The {} "
          "may {} data using a {}.",
          elements[rng.below(4)], pick(rng, kNouns), elements[rng.below(4)], elements[rng.below(4)],
          pick(rng, kVerbs), pick(rng, kNouns)));
    }

    app.rejected_112b = rng.uniform01() < options.rejected_fraction;
    if (app.rejected_112b) {
      app.has_112_section = true;
      const auto n_targets = 1 + rng.below(std::min<std::size_t>(3, n_claims));
      std::vector<int> numbers(n_claims);
      for (std::size_t k = 0; k < n_claims; ++k) numbers[k] = static_cast<int>(k + 1);
      rng.shuffle(numbers);
      numbers.resize(n_targets);
      std::sort(numbers.begin(), numbers.end());
      for (int number : numbers) {
        auto& claim = app.claim_texts[number - 1];
        const std::size_t n_reasons = 1 + (rng.below(4) == 0 ? 1 : 0);
        for (std::size_t r = 0; r < n_reasons; ++r) {
          const auto planted = plant(rng, claim, number, elements, used);
          FixtureReason reason;
          reason.category = planted.category;
          reason.reason_text = planted.reason;
          if (!planted.recitation.empty()) reason.recitations.push_back(quote_noise(rng, planted.recitation));
          // Some reasons cover a range that also spans the next claim.
          if (rng.below(6) == 0 && number < static_cast<int>(n_claims)) {
            reason.claims.push_back(fmt::format("{}-{}", number, number + 1));
          } else {
            reason.claims.push_back(number);
          }
          if (r > 0) reason.context = fmt::format("See the rejection of claim {} above.", number);
          app.reasons.push_back(std::move(reason));
        }
      }
      // A parse-only reason that never reaches the dataset.
      if (rng.below(3) == 0 && n_claims > 1) {
        FixtureReason dep;
        dep.category = rng.below(2) == 0 ? "dependence" : "other";
        const int j = static_cast<int>(n_claims);
        dep.claims.push_back(j);
        dep.reason_text = fmt::format("Claim {} is rejected because it depends from a rejected claim.", j);
        app.reasons.push_back(std::move(dep));
      }
      if (i % 5 == 0) app.invalid_extraction_replies = 1;
    } else {
      app.has_112_section = rng.below(4) == 0;
      // Clean applications sometimes carry a marker phrase too, so the text
      // signal is informative but not perfect.
      if (rng.below(6) == 0) {
        append_clause(app.claim_texts[rng.below(n_claims)],
                      fmt::format(", wherein the {} is substantially {}", elements[1], pick(rng, kAdjectives)));
      }
    }
    apps.push_back(std::move(app));
  }

  const std::vector<Defect> kinds = {Defect::kNoOfficeAction, Defect::kFiledBeforeFloor,
                                     Defect::kNoXmlRendition, Defect::kMalformedClaims};
  for (std::size_t d = 0; d < options.defects && d < apps.size(); ++d) {
    auto& app = apps[apps.size() - 1 - d];
    app.defect = kinds[d % kinds.size()];
    if (app.defect == Defect::kFiledBeforeFloor) app.filing_date.year = 2012;
  }
  return apps;
}

std::string FixtureApplication::office_action_xml() const {
  std::string x = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<document>\n";
  x += "<heading>DETAILED ACTION</heading>\n";
  x += "<p>The present application, filed on or after March 16, 2013, is being examined under the first "
       "inventor to file provisions of the AIA.</p>\n";
  if (rejected_112b) {
    std::set<int> rejected;
    for (const auto& r : reasons) {
      for (const auto& c : r.claims) {
        if (std::holds_alternative<int>(c)) rejected.insert(std::get<int>(c));
      }
    }
    std::string list;
    for (int c : rejected) list += (list.empty() ? "" : ", ") + std::to_string(c);
    x += "<heading>Claim Rejections - 35 USC § 112</heading>\n";
    x += "<p>The following is a quotation of 35 U.S.C. 112(b): The specification shall conclude with one or "
         "more claims particularly pointing out and distinctly claiming the subject matter.</p>\n";
    x += "<p>Claims " + list + " are rejected under 35 U.S.C. 112(b) as being indefinite.</p>\n";
    for (const auto& r : reasons) x += "<p>" + xml_escape(r.reason_text) + "</p>\n";
  } else if (has_112_section) {
    x += "<heading>Claim Rejections - 35 USC § 112</heading>\n";
    x += "<p>Claim 1 is rejected under 35 U.S.C. 112(a) as failing to comply with the written description "
         "requirement.</p>\n";
  }
  x += "<heading>Claim Rejections - 35 USC § 103</heading>\n";
  x += "<p>Claims 1-" + std::to_string(claim_texts.size()) +
       " are rejected under 35 U.S.C. 103 as being unpatentable over Smith in view of Jones.</p>\n";
  x += "</document>\n";
  return x;
}

std::string FixtureApplication::claims_xml() const {
  if (defect == Defect::kMalformedClaims) return "<claims><claim num=\"1\">A broken claim</claims>";
  std::string x = "<?xml version=\"1.0\"?>\n<claims>\n";
  for (std::size_t i = 0; i < claim_texts.size(); ++i) {
    x += fmt::format("<claim num=\"{}\"><claim-text>{}. {}</claim-text></claim>\n", i + 1, i + 1,
                     xml_escape(claim_texts[i]));
  }
  x += "</claims>\n";
  return x;
}

std::string FixtureApplication::specification_xml() const {
  std::string x = "<?xml version=\"1.0\"?>\n<description>\n<heading>DETAILED DESCRIPTION</heading>\n";
  for (const auto& p : paragraphs) x += "<p>" + xml_escape(p) + "</p>\n";
  x += "</description>\n";
  return x;
}

json FixtureApplication::extraction_reply() const {
  json reasons_json = json::array();
  std::set<int> rejected;
  for (const auto& r : reasons) {
    json claims = json::array();
    for (const auto& c : r.claims) {
      if (std::holds_alternative<int>(c)) {
        claims.push_back(std::get<int>(c));
        rejected.insert(std::get<int>(c));
      } else {
        claims.push_back(std::get<std::string>(c));
      }
    }
    json reason = {{"reasonText", r.reason_text},
                   {"claims", claims},
                   {"reasonCategory", r.category},
                   {"claimRecitations", r.recitations}};
    if (r.context) reason["reasonContext"] = *r.context;
    reasons_json.push_back(reason);
  }
  return {{"rejectedClaims", rejected}, {"rejectionReasons", reasons_json}};
}

std::vector<ingest::DocumentBundle> fixture_bundles(const std::vector<FixtureApplication>& apps) {
  std::vector<ingest::DocumentBundle> out;
  for (const auto& a : apps) {
    if (a.defect != Defect::kNone) continue;
    ingest::DocumentBundle b;
    const auto oa = ingest::convert_xml_to_text(a.office_action_xml());
    b.first_office_action.application_id = a.id;
    b.first_office_action.mail_date = a.office_action_date;
    b.first_office_action.sections = oa.sections;
    b.first_office_action.full_text = oa.markdown;
    b.first_office_action.raw_source_ref = a.id + "/office_action.xml";
    b.application.application_id = a.id;
    b.application.filing_date = a.filing_date;
    b.application.cpc_codes = a.cpc_codes;
    b.application.claims = ingest::extract_claims(a.claims_xml(), a.id);
    b.application.description_paragraphs = ingest::extract_description_paragraphs(a.specification_xml());
    b.application.office_action_refs = {a.id + "-OA1"};
    b.claims_doc_date = a.filing_date;
    b.spec_doc_date = a.filing_date;
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.application.application_id < y.application.application_id;
  });
  return out;
}

std::map<std::string, oa::RawRejectionRecord> fixture_records(const std::vector<FixtureApplication>& apps) {
  std::map<std::string, oa::RawRejectionRecord> out;
  for (const auto& a : apps) {
    if (a.defect != Defect::kNone) continue;
    out[a.id] = a.extraction_reply().get<oa::RawRejectionRecord>();
  }
  return out;
}

std::map<std::string, const FixtureApplication*> extraction_messages(const std::vector<FixtureApplication>& apps) {
  std::map<std::string, const FixtureApplication*> out;
  for (const auto& a : apps) {
    if (a.defect != Defect::kNone) continue;
    corpus::OfficeActionDocument doc;
    doc.sections = ingest::convert_xml_to_text(a.office_action_xml()).sections;
    const auto sections = oa::select_112_sections(doc);
    if (!sections.empty()) out[oa::render_sections(sections)] = &a;
  }
  return out;
}

}  // namespace defexam::testing
