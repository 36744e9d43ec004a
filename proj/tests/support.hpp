#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "weakirv/weakirv.hpp"

namespace testing_support {

using namespace weakirv;

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Profile fixture(const std::string& name) {
  return parse_profile(slurp(std::string(WEAKIRV_DATA_DIR) + "/" + name), ProfileFormat::Native,
                       {Truncation::Reject, false});
}

inline Profile native(const std::string& text) { return parse_profile(text, ProfileFormat::Native); }

inline CandidateSet set_of(const Profile& p, std::initializer_list<const char*> names) {
  CandidateSet s;
  for (auto n : names) s.insert(p.id(n));
  return s;
}

inline std::vector<std::string> letters(unsigned m) {
  std::vector<std::string> r;
  for (unsigned c = 0; c < m; ++c) r.push_back(std::string(1, static_cast<char>('a' + c)));
  return r;
}

// Uniform-ish random weak order: random ranking, random cut points.
inline WeakOrder random_order(unsigned m, Rng& rng, double merge = 0.4) {
  return merge_adjacent(random_ranking(m, rng), merge, rng);
}

inline Profile random_profile(unsigned m, unsigned ballots, unsigned max_weight, Rng& rng, double merge = 0.4) {
  std::uniform_int_distribution<unsigned> w(1, max_weight);
  std::vector<Vote> votes;
  for (unsigned i = 0; i < ballots; ++i) votes.push_back({Rational(w(rng)), random_order(m, rng, merge)});
  return Profile(letters(m), std::move(votes));
}

inline Profile random_linear(unsigned m, unsigned ballots, unsigned max_weight, Rng& rng) {
  return random_profile(m, ballots, max_weight, rng, 0.0);
}

// Plain nested-vector form, used by oracles that avoid the library types.
using Classes = std::vector<std::vector<unsigned>>;

inline std::vector<std::pair<long, Classes>> plain(const Profile& p) {
  std::vector<std::pair<long, Classes>> out;
  for (auto& v : p.votes()) {
    Classes cls;
    for (auto c : v.order.classes()) {
      std::vector<unsigned> members;
      for (auto x : c) members.push_back(x);
      cls.push_back(members);
    }
    if (!v.weight.get_den().fits_ulong_p() || v.weight.get_den() != 1)
      throw std::runtime_error("plain() needs integer weights");
    out.emplace_back(v.weight.get_num().get_si(), cls);
  }
  return out;
}

}  // namespace testing_support
