#pragma once

// Line-oriented profile text format:
//
//   # comment
//   m=5
//   50: A B C D E
//   40: B E C D A
//
// Candidates are letters when m <= 26 and 0-based indices otherwise. The m=
// line may be omitted, in which case m is the length of the first ballot.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spvote/profiles.hpp"

namespace spvote {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename Int>
std::optional<Int> parse_uint(std::string_view s) {
  Int value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses a candidate token (letter or index) for an m-candidate election.
inline std::optional<CandidateId> parse_candidate(std::string_view token, std::size_t m) {
  if (m <= 26) {
    if (token.size() != 1) return std::nullopt;
    const char ch = token[0];
    if (ch < 'A' || ch >= static_cast<char>('A' + m)) return std::nullopt;
    return CandidateId(static_cast<std::uint32_t>(ch - 'A'));
  }
  auto idx = detail::parse_uint<std::uint32_t>(token);
  if (!idx || *idx >= m) return std::nullopt;
  return CandidateId(*idx);
}

inline Profile parse_profile(std::string_view text) {
  std::optional<std::size_t> m;
  std::vector<Profile::Entry> entries;
  std::size_t line_no = 0;
  bool seen_ballot = false;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = detail::trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == 'm') {
      auto rest = detail::trim(line.substr(1));
      if (rest.empty() || rest.front() != '=') throw ParseError(line_no, "malformed line");
      if (m) throw ParseError(line_no, "duplicate m= line");
      if (seen_ballot) throw ParseError(line_no, "m= must precede ballot lines");
      auto value = detail::parse_uint<std::size_t>(detail::trim(rest.substr(1)));
      if (!value || *value == 0) throw ParseError(line_no, "invalid candidate count");
      m = *value;
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "malformed line (expected '<count>: ...')");
    auto count = detail::parse_uint<Profile::Count>(detail::trim(line.substr(0, colon)));
    if (!count) throw ParseError(line_no, "invalid count");
    const auto tokens = detail::split_ws(line.substr(colon + 1));
    if (tokens.empty()) throw ParseError(line_no, "empty ballot");
    if (!m) m = tokens.size();
    if (tokens.size() != *m)
      throw ParseError(line_no, "ballot lists " + std::to_string(tokens.size()) + " candidates, expected " +
                                    std::to_string(*m));

    std::vector<CandidateId> order;
    order.reserve(tokens.size());
    std::vector<bool> seen(*m, false);
    for (auto tok : tokens) {
      auto c = parse_candidate(tok, *m);
      if (!c) throw ParseError(line_no, "unknown candidate '" + std::string(tok) + "'");
      if (seen[c->index]) throw ParseError(line_no, "candidate '" + std::string(tok) + "' repeated");
      seen[c->index] = true;
      order.push_back(*c);
    }
    entries.emplace_back(Ranking(std::move(order)), *count);
    seen_ballot = true;
  }

  if (!m) throw ParseError(line_no, "no candidates declared and no ballots");
  return Profile(*m, entries);
}

inline std::string format_ranking(const Ranking& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ' ';
    out += candidate_label(r[i], r.size());
  }
  return out;
}

/// Canonical form: m= line, then ballots in lexicographic ranking order.
inline std::string serialize_profile(const Profile& p) {
  std::string out = "m=" + std::to_string(p.candidates()) + "\n";
  for (const auto& [ranking, count] : p.counts())
    out += std::to_string(count) + ": " + format_ranking(ranking) + "\n";
  return out;
}

inline Profile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

}  // namespace spvote
