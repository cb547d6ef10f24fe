#include "gridres/line_cover.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include <boost/dynamic_bitset.hpp>

namespace gridres {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Candidate {
  std::optional<ProjLine> line;  // empty for a singleton placeholder
  Bits cover;
  std::size_t singleton_of = 0;
};

// A line through p that misses `excluded` (and is affine when requested).
ProjLine singleton_line(const ProjPoint& p, const ProjPoint& excluded, bool allow_infinity) {
  const Field& f = p.field();
  std::vector<ProjPoint> helpers;
  helpers.emplace_back(f.zero(), f.one(), f.zero());
  for (int t = 0; t < 8; ++t) helpers.emplace_back(f.one(), f.from_int(t), f.zero());
  for (int t = 0; t < 4; ++t) {
    helpers.push_back(ProjPoint::affine(f.from_int(t), f.zero()));
    helpers.push_back(ProjPoint::affine(f.zero(), f.from_int(t)));
  }
  for (const auto& q : helpers) {
    if (q == p) continue;
    ProjLine l = join(p, q);
    if (l.contains(excluded)) continue;
    if (!allow_infinity && l.is_at_infinity()) continue;
    return l;
  }
  throw Error(ErrorCode::invalid_input, "no line through " + p.to_string() + " avoids the excluded point");
}

class CoverSearch {
 public:
  CoverSearch(std::vector<Candidate> candidates, std::size_t num_points, std::uint64_t budget)
      : cands_(std::move(candidates)), budget_(budget), through_(num_points) {
    for (std::size_t c = 0; c < cands_.size(); ++c) {
      for (std::size_t i = cands_[c].cover.find_first(); i != Bits::npos; i = cands_[c].cover.find_next(i)) {
        through_[i].push_back(c);
      }
    }
    // all singletons is always a cover
    for (std::size_t c = 0; c < cands_.size(); ++c) {
      if (!cands_[c].line) best_.push_back(c);
    }
  }

  std::vector<std::size_t> run(std::size_t num_points) {
    Bits uncovered(num_points);
    uncovered.set();
    std::vector<std::size_t> chosen;
    dfs(uncovered, chosen);
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void dfs(const Bits& uncovered, std::vector<std::size_t>& chosen) {
    if (++nodes_ > budget_) {
      throw Error(ErrorCode::budget_exceeded, "line cover search exceeded " + std::to_string(budget_) + " nodes");
    }
    std::size_t left = uncovered.count();
    if (left == 0) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    std::size_t widest = 1;
    for (const auto& c : cands_) widest = std::max(widest, (c.cover & uncovered).count());
    if (chosen.size() + (left + widest - 1) / widest >= best_.size()) return;

    std::size_t pivot = Bits::npos, fewest = SIZE_MAX;
    for (std::size_t i = uncovered.find_first(); i != Bits::npos; i = uncovered.find_next(i)) {
      if (through_[i].size() < fewest) {
        fewest = through_[i].size();
        pivot = i;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (gain, candidate)
    for (std::size_t c : through_[pivot]) order.emplace_back((cands_[c].cover & uncovered).count(), c);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, c] : order) {
      chosen.push_back(c);
      dfs(uncovered - cands_[c].cover, chosen);
      chosen.pop_back();
    }
  }

  std::vector<Candidate> cands_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> through_;
  std::vector<std::size_t> best_;
};

}  // namespace

LineCover min_line_cover(std::span<const ProjPoint> points, const ProjPoint& excluded,
                         const LineCoverOptions& options) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i] == excluded) throw Error(ErrorCode::invalid_input, "excluded point is among the points to cover");
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw Error(ErrorCode::duplicate_node, "repeated point " + points[i].to_string());
    }
  }
  LineCover out;
  if (n == 0) return out;

  std::map<ProjLine, Bits, ProjLineLess> joins;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ProjLine l = join(points[i], points[j]);
      if (joins.count(l) || l.contains(excluded)) continue;
      if (!options.allow_line_at_infinity && l.is_at_infinity()) continue;
      Bits cover(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (l.contains(points[k])) cover.set(k);
      }
      joins.emplace(l, std::move(cover));
    }
  }
  std::vector<Candidate> cands;
  for (auto& [l, cover] : joins) cands.push_back({l, cover, 0});
  for (std::size_t i = 0; i < n; ++i) {
    Bits cover(n);
    cover.set(i);
    cands.push_back({std::nullopt, cover, i});
  }

  CoverSearch search(cands, n, options.node_budget);
  auto best = search.run(n);
  out.nodes = search.nodes();
  out.size = best.size();
  for (std::size_t c : best) {
    out.lines.push_back(cands[c].line ? *cands[c].line
                                      : singleton_line(points[cands[c].singleton_of], excluded,
                                                       options.allow_line_at_infinity));
  }
  std::sort(out.lines.begin(), out.lines.end(), ProjLineLess{});
  return out;
}

}  // namespace gridres
