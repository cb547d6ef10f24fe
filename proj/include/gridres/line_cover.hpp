#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridres/projective.hpp"

namespace gridres {

struct LineCoverOptions {
  bool allow_line_at_infinity = true;
  std::uint64_t node_budget = 1'000'000;
};

struct LineCover {
  std::size_t size = 0;
  std::vector<ProjLine> lines;  // canonical order
  std::uint64_t nodes = 0;
};

/// Minimum number of lines covering `points` with no line through `excluded`.
/// Candidates are the joins of point pairs that avoid `excluded` plus one
/// singleton line per point; branch-and-bound on the uncovered point with the
/// fewest candidates. Throws budget_exceeded past the node limit.
LineCover min_line_cover(std::span<const ProjPoint> points, const ProjPoint& excluded,
                         const LineCoverOptions& options = {});

}  // namespace gridres
