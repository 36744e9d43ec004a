#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "weakirv/profile.hpp"

namespace weakirv {

// Native:  `candidates: a,b,c` then lines `WEIGHT: {a,b} > c > d`.
// PrefLib: orders-with-ties in either the `# ALTERNATIVE NAME i: x` /
//          `COUNT: 1,{2,3},4` layout or the legacy numeric-header layout
//          with `COUNT,1,{2,3},4` lines.
enum class ProfileFormat { Native, PrefLib };

// Ballots that leave candidates unranked.
enum class Truncation { CompleteWithBottomClass, Reject };

struct ParseOptions {
  Truncation truncation = Truncation::CompleteWithBottomClass;
  bool merge_duplicates = true;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  for (auto l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    out.emplace_back(l);
  }
  return out;
}

inline bool valid_name(std::string_view n) {
  if (n.empty()) return false;
  for (char ch : n)
    if (std::isspace(static_cast<unsigned char>(ch)) || std::string_view("{},>:#").find(ch) != std::string_view::npos)
      return false;
  return true;
}

inline Rational parse_weight(std::string_view text, std::size_t line) {
  Rational w;
  try {
    w = parse_rational(trim(text));
  } catch (const ParseError&) {
    throw ParseError("malformed weight '" + std::string(trim(text)) + "'", line, ParseError::Kind::BadWeight);
  }
  if (w <= 0) throw ParseError("weight must be positive", line, ParseError::Kind::BadWeight);
  return w;
}

// Splits `1,{2,3},4` (PrefLib) into groups at top-level commas.
inline std::vector<std::vector<std::string_view>> preflib_groups(std::string_view body, std::size_t line) {
  std::vector<std::vector<std::string_view>> groups;
  std::size_t i = 0;
  body = trim(body);
  if (body.empty()) return groups;
  while (i < body.size()) {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i < body.size() && body[i] == '{') {
      auto close = body.find('}', i);
      if (close == std::string_view::npos) throw ParseError("unbalanced '{'", line);
      std::vector<std::string_view> members;
      auto inner = trim(body.substr(i + 1, close - i - 1));
      if (!inner.empty())
        for (auto t : split(inner, ',')) members.push_back(trim(t));
      groups.push_back(members);
      i = close + 1;
    } else {
      auto comma = body.find(',', i);
      if (comma == std::string_view::npos) comma = body.size();
      groups.push_back({trim(body.substr(i, comma - i))});
      i = comma;
    }
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i < body.size()) {
      if (body[i] != ',') throw ParseError("expected ',' between ranks", line);
      ++i;
      if (i >= body.size()) throw ParseError("trailing ','", line);
    }
  }
  return groups;
}

// Splits `{a,b} > c > d` into classes of names.
inline std::vector<std::vector<std::string_view>> native_groups(std::string_view body, std::size_t line) {
  std::vector<std::vector<std::string_view>> groups;
  body = trim(body);
  if (body.empty()) return groups;
  for (auto part : split(body, '>')) {
    part = trim(part);
    std::vector<std::string_view> members;
    if (!part.empty() && part.front() == '{') {
      if (part.back() != '}') throw ParseError("unbalanced '{'", line);
      auto inner = trim(part.substr(1, part.size() - 2));
      if (inner.empty()) throw ParseError("empty indifference class", line);
      for (auto t : split(inner, ',')) members.push_back(trim(t));
    } else {
      members.push_back(part);
    }
    for (auto mname : members)
      if (!valid_name(mname)) throw ParseError("malformed candidate '" + std::string(mname) + "'", line);
    groups.push_back(members);
  }
  return groups;
}

struct BallotBuilder {
  const std::vector<std::string>& roster;
  const ParseOptions& options;
  std::map<std::string, CandidateId, std::less<>> index;

  BallotBuilder(const std::vector<std::string>& r, const ParseOptions& o) : roster(r), options(o) {
    for (CandidateId c = 0; c < roster.size(); ++c) index.emplace(roster[c], c);
  }

  WeakOrder build(const std::vector<std::vector<std::string_view>>& groups, std::size_t line) const {
    std::vector<CandidateSet> classes;
    CandidateSet seen;
    for (auto& g : groups) {
      CandidateSet cls;
      for (auto name : g) {
        auto it = index.find(name);
        if (it == index.end())
          throw ParseError("unknown candidate '" + std::string(name) + "'", line, ParseError::Kind::UnknownCandidate);
        if (seen.contains(it->second))
          throw ParseError("candidate '" + std::string(name) + "' appears twice", line,
                           ParseError::Kind::DuplicateCandidate);
        seen.insert(it->second);
        cls.insert(it->second);
      }
      if (!cls.empty()) classes.push_back(cls);
    }
    auto rest = CandidateSet::first_n(static_cast<unsigned>(roster.size())) - seen;
    if (!rest.empty()) {
      if (options.truncation == Truncation::Reject)
        throw ParseError("ballot does not rank every candidate", line, ParseError::Kind::Truncated);
      classes.push_back(rest);
    }
    return WeakOrder(std::move(classes));
  }
};

inline Profile finish(std::vector<std::string> roster, std::vector<Vote> votes, const ParseOptions& options) {
  Profile p(std::move(roster), std::move(votes));
  return options.merge_duplicates ? canonicalize(p) : p;
}

inline Profile parse_native(std::string_view text, const ParseOptions& options) {
  std::optional<std::vector<std::string>> roster;
  std::vector<Vote> votes;
  std::optional<BallotBuilder> builder;
  auto lines = lines_of(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'WEIGHT: ballot'", ln + 1);
    auto head = trim(line.substr(0, colon));
    auto body = line.substr(colon + 1);
    if (head == "candidates") {
      if (roster) throw ParseError("roster declared twice", ln + 1);
      roster.emplace();
      for (auto name : split(body, ',')) {
        name = trim(name);
        if (!valid_name(name)) throw ParseError("malformed candidate '" + std::string(name) + "'", ln + 1);
        if (std::find(roster->begin(), roster->end(), name) != roster->end())
          throw ParseError("candidate '" + std::string(name) + "' declared twice", ln + 1,
                           ParseError::Kind::DuplicateCandidate);
        roster->emplace_back(name);
      }
      if (roster->size() > kMaxCandidates) throw ParseError("too many candidates", ln + 1);
      builder.emplace(*roster, options);
      continue;
    }
    if (!roster) throw ParseError("ballot before the 'candidates:' header", ln + 1, ParseError::Kind::MissingRoster);
    auto weight = parse_weight(head, ln + 1);
    votes.push_back({weight, builder->build(native_groups(body, ln + 1), ln + 1)});
  }
  if (!roster) throw ParseError("missing 'candidates:' header", 0, ParseError::Kind::MissingRoster);
  return finish(std::move(*roster), std::move(votes), options);
}

inline bool is_unsigned(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

inline Profile parse_preflib(std::string_view text, const ParseOptions& options) {
  auto lines = lines_of(text);
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  const bool legacy = first < lines.size() && is_unsigned(trim(lines[first]));

  std::map<unsigned, std::string> names;
  unsigned declared_m = 0;
  struct RawBallot {
    Rational weight;
    std::vector<std::vector<std::string_view>> groups;
    std::size_t line;
  };
  std::vector<RawBallot> raw;
  std::size_t ln = first;

  if (legacy) {
    declared_m = static_cast<unsigned>(std::stoul(std::string(trim(lines[ln]))));
    ++ln;
    for (unsigned i = 0; i < declared_m; ++i, ++ln) {
      if (ln >= lines.size()) throw ParseError("truncated candidate list", ln + 1);
      auto parts = split(lines[ln], ',');
      if (parts.size() < 2 || !is_unsigned(trim(parts[0]))) throw ParseError("expected 'INDEX,NAME'", ln + 1);
      auto idx = static_cast<unsigned>(std::stoul(std::string(trim(parts[0]))));
      std::string name(trim(lines[ln].substr(lines[ln].find(',') + 1)));
      names[idx] = name;
    }
    if (ln >= lines.size()) throw ParseError("missing voter-count line", ln + 1);
    ++ln;  // "voters,sum,unique"
    for (; ln < lines.size(); ++ln) {
      auto line = trim(lines[ln]);
      if (line.empty()) continue;
      auto comma = line.find(',');
      if (comma == std::string_view::npos) throw ParseError("expected 'COUNT,ranking'", ln + 1);
      raw.push_back({parse_weight(line.substr(0, comma), ln + 1), preflib_groups(line.substr(comma + 1), ln + 1), ln + 1});
    }
  } else {
    for (; ln < lines.size(); ++ln) {
      auto line = trim(lines[ln]);
      if (line.empty()) continue;
      if (line.front() == '#') {
        auto meta = trim(line.substr(1));
        auto colon = meta.find(':');
        if (colon == std::string_view::npos) continue;
        auto key = trim(meta.substr(0, colon));
        auto value = trim(meta.substr(colon + 1));
        if (key == "NUMBER ALTERNATIVES" && is_unsigned(value)) {
          declared_m = static_cast<unsigned>(std::stoul(std::string(value)));
        } else if (key.substr(0, 17) == "ALTERNATIVE NAME ") {
          auto idx = trim(key.substr(17));
          if (!is_unsigned(idx)) throw ParseError("malformed alternative index", ln + 1);
          names[static_cast<unsigned>(std::stoul(std::string(idx)))] = std::string(value);
        }
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected 'COUNT: ranking'", ln + 1);
      raw.push_back({parse_weight(line.substr(0, colon), ln + 1), preflib_groups(line.substr(colon + 1), ln + 1), ln + 1});
    }
  }

  unsigned m = declared_m;
  for (auto& [idx, _] : names) m = std::max(m, idx);
  for (auto& b : raw)
    for (auto& g : b.groups)
      for (auto id : g) {
        if (!is_unsigned(id))
          throw ParseError("alternative '" + std::string(id) + "' is not a number", b.line,
                           ParseError::Kind::UnknownCandidate);
        if (declared_m == 0) m = std::max(m, static_cast<unsigned>(std::stoul(std::string(id))));
      }
  if (m == 0) throw ParseError("no alternatives declared", 0, ParseError::Kind::MissingRoster);
  if (m > kMaxCandidates) throw ParseError("too many candidates");

  std::vector<std::string> roster;
  for (unsigned i = 1; i <= m; ++i) {
    auto it = names.find(i);
    roster.push_back(it != names.end() ? it->second : "c" + std::to_string(i));
  }
  std::vector<std::string> numbers;
  for (unsigned i = 1; i <= m; ++i) numbers.push_back(std::to_string(i));
  BallotBuilder builder(numbers, options);
  std::vector<Vote> votes;
  for (auto& b : raw) votes.push_back({b.weight, builder.build(b.groups, b.line)});
  return finish(std::move(roster), std::move(votes), options);
}

}  // namespace detail

inline Profile parse_profile(std::string_view text, ProfileFormat format, const ParseOptions& options = {}) {
  return format == ProfileFormat::Native ? detail::parse_native(text, options) : detail::parse_preflib(text, options);
}

// Full rankings only: every vote lists every class, bottom class included.
inline std::string serialize_profile(const Profile& profile, ProfileFormat format) {
  if (profile.num_votes() == 0 || profile.total_weight() == 0)
    throw PreconditionError("cannot serialize a profile without voting weight");
  std::ostringstream os;
  if (format == ProfileFormat::Native) {
    for (auto& n : profile.roster())
      if (!detail::valid_name(n)) throw PreconditionError("candidate name '" + n + "' cannot be written natively");
    os << "candidates: " << profile.names(profile.candidates()) << "\n";
    for (auto& v : profile.votes()) {
      if (v.weight == 0) continue;
      os << to_string(v.weight) << ":";
      const char* sep = " ";
      for (auto cls : v.order.classes()) {
        os << sep;
        sep = " > ";
        if (cls.size() == 1)
          os << profile.name(cls.front());
        else
          os << "{" << profile.names(cls) << "}";
      }
      os << "\n";
    }
  } else {
    os << "# NUMBER ALTERNATIVES: " << profile.num_candidates() << "\n";
    for (CandidateId c = 0; c < profile.num_candidates(); ++c)
      os << "# ALTERNATIVE NAME " << c + 1 << ": " << profile.name(c) << "\n";
    for (auto& v : profile.votes()) {
      if (v.weight == 0) continue;
      os << to_string(v.weight) << ": ";
      const char* sep = "";
      for (auto cls : v.order.classes()) {
        os << sep;
        sep = ",";
        if (cls.size() == 1) {
          os << cls.front() + 1;
        } else {
          os << "{";
          const char* inner = "";
          for (auto c : cls) {
            os << inner << c + 1;
            inner = ",";
          }
          os << "}";
        }
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace weakirv
