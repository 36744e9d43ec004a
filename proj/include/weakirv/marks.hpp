#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weakirv/ballotio.hpp"

namespace weakirv {

// Raw marks of one paper ballot: (candidate name, rank) pairs, ranks from 1.
struct MarkGrid {
  std::string ballot_id;
  std::set<std::pair<std::string, unsigned>> marks;
  std::optional<unsigned> max_rank;  // R; ballots may offer fewer ranks than candidates
};

struct MarkPolicy {
  bool complete_bottom = true;   // unranked candidates form one bottom class
  bool invalidate_gaps = false;  // a skipped rank invalidates instead of collapsing
};

enum class InvalidReason { DuplicateCandidateRanks, Empty, OtherStructural };

inline std::string to_string(InvalidReason r) {
  switch (r) {
    case InvalidReason::DuplicateCandidateRanks: return "duplicate-candidate-ranks";
    case InvalidReason::Empty: return "empty";
    case InvalidReason::OtherStructural: return "other-structural";
  }
  return {};
}

struct BallotClassification {
  enum class Kind { Linear, WeakOrder, Invalid };

  Kind kind = Kind::Invalid;
  std::optional<weakirv::WeakOrder> order;
  unsigned indifferences = 0;  // ranked classes holding two or more candidates
  std::optional<InvalidReason> reason;
  std::string detail;
  // The older reading: unique choices from rank 1 on, cut at the first
  // shared rank.
  std::vector<CandidateId> partial_count;
};

inline std::string to_string(BallotClassification::Kind k) {
  switch (k) {
    case BallotClassification::Kind::Linear: return "linear";
    case BallotClassification::Kind::WeakOrder: return "weak-order";
    case BallotClassification::Kind::Invalid: return "invalid";
  }
  return {};
}

// Linear means the ranked part is a strict order; an unranked tail does not
// count as an indifference.
inline BallotClassification interpret_mark_grid(const MarkGrid& grid, const std::vector<std::string>& roster,
                                                 const MarkPolicy& policy = {}) {
  BallotClassification out;
  auto invalid = [&](InvalidReason r, std::string why) {
    out.kind = BallotClassification::Kind::Invalid;
    out.reason = r;
    out.detail = std::move(why);
    out.order.reset();
    out.indifferences = 0;
    out.partial_count.clear();
    return out;
  };
  if (roster.empty() || roster.size() > kMaxCandidates) return invalid(InvalidReason::OtherStructural, "bad roster");
  if (grid.marks.empty()) return invalid(InvalidReason::Empty, "no marks");

  std::map<std::string_view, CandidateId> index;
  for (CandidateId c = 0; c < roster.size(); ++c) index.emplace(roster[c], c);

  std::map<unsigned, CandidateSet> by_rank;
  std::map<CandidateId, unsigned> rank_of;
  for (auto& [name, rank] : grid.marks) {
    auto it = index.find(name);
    if (it == index.end()) return invalid(InvalidReason::OtherStructural, "unknown candidate '" + name + "'");
    if (rank == 0 || (grid.max_rank && rank > *grid.max_rank))
      return invalid(InvalidReason::OtherStructural, "rank " + std::to_string(rank) + " out of range");
    if (auto [pos, fresh] = rank_of.emplace(it->second, rank); !fresh && pos->second != rank)
      return invalid(InvalidReason::DuplicateCandidateRanks, "'" + name + "' marked at several ranks");
    by_rank[rank].insert(it->second);
  }

  unsigned expected = 1;
  std::vector<CandidateSet> classes;
  CandidateSet ranked;
  bool shared = false;
  for (auto& [rank, cls] : by_rank) {
    if (rank != expected && policy.invalidate_gaps)
      return invalid(InvalidReason::OtherStructural, "rank " + std::to_string(expected) + " skipped");
    expected = rank + 1;
    classes.push_back(cls);
    ranked |= cls;
    if (cls.size() > 1) {
      ++out.indifferences;
      shared = true;
    } else if (!shared) {
      out.partial_count.push_back(cls.front());
    }
  }
  auto rest = CandidateSet::first_n(static_cast<unsigned>(roster.size())) - ranked;
  if (policy.complete_bottom && !rest.empty()) classes.push_back(rest);
  out.order = weakirv::WeakOrder(std::move(classes));
  out.kind = out.indifferences ? BallotClassification::Kind::WeakOrder : BallotClassification::Kind::Linear;
  return out;
}

// CSV with header `ballot_id,candidate,rank`; ballots keep first-appearance
// order. Repeated rows are the same mark.
inline std::vector<MarkGrid> parse_mark_grids(std::string_view text, std::optional<unsigned> max_rank = std::nullopt) {
  std::vector<MarkGrid> grids;
  std::map<std::string, std::size_t, std::less<>> where;
  auto lines = detail::lines_of(text);
  bool header = false;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto line = detail::trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    auto cells = detail::split(line, ',');
    if (cells.size() != 3) throw ParseError("expected 3 columns", ln + 1);
    for (auto& c : cells) c = detail::trim(c);
    if (!header) {
      if (cells[0] != "ballot_id" || cells[1] != "candidate" || cells[2] != "rank")
        throw ParseError("expected header 'ballot_id,candidate,rank'", ln + 1);
      header = true;
      continue;
    }
    if (cells[0].empty() || cells[1].empty()) throw ParseError("empty cell", ln + 1);
    if (!detail::is_unsigned(cells[2]) || cells[2].size() > 9) throw ParseError("malformed rank", ln + 1);
    auto [it, fresh] = where.emplace(std::string(cells[0]), grids.size());
    if (fresh) grids.push_back({std::string(cells[0]), {}, max_rank});
    grids[it->second].marks.emplace(std::string(cells[1]), static_cast<unsigned>(std::stoul(std::string(cells[2]))));
  }
  if (!header) throw ParseError("missing header 'ballot_id,candidate,rank'");
  return grids;
}

// Ballots with no marks cannot be written.
inline std::string write_mark_grids(const std::vector<MarkGrid>& grids) {
  std::ostringstream os;
  os << "ballot_id,candidate,rank\n";
  for (auto& g : grids)
    for (auto& [name, rank] : g.marks) os << g.ballot_id << "," << name << "," << rank << "\n";
  return os.str();
}

}  // namespace weakirv
