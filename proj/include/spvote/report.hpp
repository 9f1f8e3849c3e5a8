#pragma once

// Experiment reports as JSON, CSV or plain text. Output depends only on the
// result, so identical results give byte-identical documents.

#include <charconv>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "spvote/montecarlo.hpp"
#include "spvote/profile_io.hpp"

namespace spvote {

enum class ReportFormat { json, csv, text };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "text") return ReportFormat::text;
  throw std::invalid_argument("unknown format '" + s + "' (expected json, csv or text)");
}

namespace detail {

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

inline std::string fixed5(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

inline Committee parse_committee_label(const std::string& label, std::size_t m) {
  Committee w;
  if (m <= 26) {
    for (char ch : label) {
      auto c = parse_candidate(std::string_view(&ch, 1), m);
      if (!c) throw std::invalid_argument("bad committee label '" + label + "'");
      w.push_back(*c);
    }
  } else {
    std::size_t start = 0;
    while (start <= label.size()) {
      const auto plus = label.find('+', start);
      const auto tok = label.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      auto c = parse_candidate(tok, m);
      if (!c) throw std::invalid_argument("bad committee label '" + label + "'");
      w.push_back(*c);
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
  }
  std::sort(w.begin(), w.end());
  return w;
}

/// Union of committees seen by either method, lexicographic.
inline std::set<Committee> all_committees(const ExperimentResult& r) {
  std::set<Committee> out;
  for (const auto& kv : r.bloc_freq) out.insert(kv.first);
  for (const auto& kv : r.copeland_freq) out.insert(kv.first);
  return out;
}

inline std::uint64_t lookup(const std::map<Committee, std::uint64_t>& freq, const Committee& w) {
  auto it = freq.find(w);
  return it == freq.end() ? 0 : it->second;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const ExperimentResult& r) {
  const auto& c = r.config;
  nlohmann::ordered_json j;
  j["model"] = model_name(c.model);
  j["candidates"] = c.m;
  j["winners"] = c.k;
  j["voters"] = c.voters;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tie_policy"] = tie_policy_name(c.tie_policy);
  if (c.model == Model::eb) j["eb_stddev"] = c.eb_stddev;
  j["counted_trials"] = r.counted();
  j["discarded_trials"] = r.discarded;

  auto freq = [&](const std::map<Committee, std::uint64_t>& f) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (const auto& [w, n] : f) o[committee_label(w, c.m)] = n;
    return o;
  };
  j["bloc_freq"] = freq(r.bloc_freq);
  j["copeland_freq"] = freq(r.copeland_freq);
  j["agreement_count"] = r.agreement_count;
  j["agreement_rate"] = r.agreement_rate();
  j["bloc_tie_count"] = r.bloc_tie_count;
  j["copeland_tie_count"] = r.copeland_tie_count;
  j["gehrlein_count"] = r.gehrlein_count;
  j["gehrlein_rate"] = r.gehrlein_rate();
  j["condorcet_set_count"] = r.condorcet_set_count;
  j["condorcet_set_rate"] = r.condorcet_set_rate();
  nlohmann::ordered_json ls = nlohmann::ordered_json::object();
  for (std::size_t q = 0; q < c.quotas.size(); ++q)
    ls[c.quotas[q].name()] = {{"count", r.locally_stable_count[q]}, {"rate", r.locally_stable_rate(q)}};
  j["locally_stable"] = ls;
  if (auto b = try_label_bounds(r)) {
    j["label_lower_bounds"] = {{"gehrlein", b->gehrlein}, {"locally_stable", b->locally_stable}};
  } else {
    j["label_lower_bounds"] = nullptr;
  }
  return j;
}

/// Inverse of to_json for the counters and configuration.
inline ExperimentResult result_from_json(const nlohmann::ordered_json& j) {
  ExperimentResult r;
  auto& c = r.config;
  c.model = parse_model(j.at("model").get<std::string>());
  c.m = j.at("candidates").get<std::size_t>();
  c.k = j.at("winners").get<std::size_t>();
  c.voters = j.at("voters").get<std::uint64_t>();
  c.trials = j.at("trials").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tie_policy = parse_tie_policy(j.at("tie_policy").get<std::string>());
  if (j.contains("eb_stddev")) c.eb_stddev = j.at("eb_stddev").get<double>();
  r.discarded = j.at("discarded_trials").get<std::uint64_t>();
  for (const auto& [label, n] : j.at("bloc_freq").items())
    r.bloc_freq[detail::parse_committee_label(label, c.m)] = n.get<std::uint64_t>();
  for (const auto& [label, n] : j.at("copeland_freq").items())
    r.copeland_freq[detail::parse_committee_label(label, c.m)] = n.get<std::uint64_t>();
  r.agreement_count = j.at("agreement_count").get<std::uint64_t>();
  r.bloc_tie_count = j.at("bloc_tie_count").get<std::uint64_t>();
  r.copeland_tie_count = j.at("copeland_tie_count").get<std::uint64_t>();
  r.gehrlein_count = j.at("gehrlein_count").get<std::uint64_t>();
  r.condorcet_set_count = j.at("condorcet_set_count").get<std::uint64_t>();
  c.quotas.clear();
  for (const auto& [name, entry] : j.at("locally_stable").items()) {
    c.quotas.push_back(parse_quota(name.size() > 1 && name[0] == 'q' ? name.substr(1) : name));
    r.locally_stable_count.push_back(entry.at("count").get<std::uint64_t>());
  }
  return r;
}

inline std::string emit_report(const ExperimentResult& r, ReportFormat format) {
  const auto& c = r.config;
  switch (format) {
    case ReportFormat::json: return to_json(r).dump(2) + "\n";

    case ReportFormat::csv: {
      std::string out = "winning_set,bloc_count,bloc_prob,copeland_count,copeland_prob\n";
      for (const auto& w : detail::all_committees(r)) {
        const auto b = detail::lookup(r.bloc_freq, w);
        const auto k = detail::lookup(r.copeland_freq, w);
        out += committee_label(w, c.m) + "," + std::to_string(b) + "," + detail::format_double(r.rate(b)) + "," +
               std::to_string(k) + "," + detail::format_double(r.rate(k)) + "\n";
      }
      out += "\nmetric,count,rate\n";
      auto row = [&](const std::string& name, std::uint64_t n) {
        out += name + "," + std::to_string(n) + "," + detail::format_double(r.rate(n)) + "\n";
      };
      row("agreement", r.agreement_count);
      row("gehrlein_stable", r.gehrlein_count);
      row("condorcet_set", r.condorcet_set_count);
      for (std::size_t q = 0; q < c.quotas.size(); ++q)
        row("locally_stable_" + c.quotas[q].name(), r.locally_stable_count[q]);
      row("bloc_ties", r.bloc_tie_count);
      row("copeland_ties", r.copeland_tie_count);
      row("discarded", r.discarded);
      if (auto b = try_label_bounds(r)) {
        out += "label_bound_gehrlein,," + detail::format_double(b->gehrlein) + "\n";
        out += "label_bound_locally_stable,," + detail::format_double(b->locally_stable) + "\n";
      }
      return out;
    }

    case ReportFormat::text: {
      std::string out = "model " + model_name(c.model) + ", m=" + std::to_string(c.m) + ", k=" + std::to_string(c.k) +
                        ", N=" + std::to_string(c.voters) + ", trials=" + std::to_string(c.trials) +
                        ", seed=" + std::to_string(c.seed) +
                        (c.model == Model::eb ? ", eb sd=" + detail::format_double(c.eb_stddev) : std::string()) + "\n";
      out += "winning set    bloc      copeland\n";
      for (const auto& w : detail::all_committees(r)) {
        std::string label = committee_label(w, c.m);
        label.resize(std::max<std::size_t>(label.size(), 14), ' ');
        out += label + " " + detail::fixed5(r.rate(detail::lookup(r.bloc_freq, w))) + "   " +
               detail::fixed5(r.rate(detail::lookup(r.copeland_freq, w))) + "\n";
      }
      out += "agreement: " + detail::fixed5(r.agreement_rate()) + "\n";
      out += "gehrlein-stable: " + detail::fixed5(r.gehrlein_rate()) + "\n";
      out += "condorcet set: " + detail::fixed5(r.condorcet_set_rate()) + "\n";
      for (std::size_t q = 0; q < c.quotas.size(); ++q)
        out += "locally stable (" + c.quotas[q].name() + "): " + detail::fixed5(r.locally_stable_rate(q)) + "\n";
      if (auto b = try_label_bounds(r))
        out += "label lower bounds: gehrlein " + detail::fixed5(b->gehrlein) + ", locally stable " +
               detail::fixed5(b->locally_stable) + "\n";
      out += "ties: bloc " + std::to_string(r.bloc_tie_count) + ", copeland " + std::to_string(r.copeland_tie_count) +
             ", discarded " + std::to_string(r.discarded) + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace spvote
