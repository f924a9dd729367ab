#pragma once

#include <string>
#include <vector>

#include "lipset/interval_set.hpp"

namespace lipset {

// The three open fifths of (a,b) in the 3/11 - 1/11 - 3/11 - 1/11 - 3/11
// split: (a, a+3w/11) ∪ (a+4w/11, a+7w/11) ∪ (a+8w/11, b) with w = b-a.
IntervalSet level1_open(const Rational& a, const Rational& b);

// Level-k refinement: level 0 is (a,b); level k replaces every open
// component of the level k-1 set by its own level-1 split. 3^k components,
// measure (9/11)^k * (b-a). k is capped to keep materialization bounded.
IntervalSet levelk_open(const Rational& a, const Rational& b, int k, int max_k = 12);

// Closed nondegenerate components of window \ g, each tagged with the
// smallest m for which it is a gap of the level-m pattern of the window
// (0 when it is not a pattern component). g must be open and inside window.
std::vector<std::pair<Interval, int>> f_components(const IntervalSet& g,
                                                   const Interval& window);

struct LevelSchedule {
  std::vector<int> levels;          // level used by generation n (1-based)
  Rational budget = Rational(1, 2);  // exact cap on the total removed measure

  // l_n = 4(n+2): generation n removes fraction (9/11)^{4(n+2)} < 2^-(n+2),
  // so the removed total stays below 1/4 of the window, well under the
  // default budget of 1/2.
  static LevelSchedule default_for(int depth);
};

struct TaggedComponent {
  Interval interval;
  int level_tag;   // level within its generation's local pattern
  int generation;  // generation that created it (0 = initial window)
};

struct GenerationRecord {
  int level;
  Rational added_measure;      // |G_n|, exact
  Rational complement_after;   // window measure minus all removed so far
  Rational component_count;    // integer-valued; grows like (3^l - 1)^n
};

// Finite-depth stage of the nested fat-Cantor construction: generation n
// places a level-l_n open set in every closed component of the previous
// complement (adjoining the shared boundary points so the accumulated set
// stays open). The measure ledger is exact at every depth. Geometry
// (accumulated set + tagged components) is materialized only while the
// component count stays within the build cap; past that the stage carries
// the ledger alone, whose entries follow from the exact per-window measure
// factor (9/11)^l.
struct CantorStage {
  Interval window = Interval::closed(Rational(0), Rational(1));
  int depth = 0;
  LevelSchedule schedule;
  bool geometry = true;  // accumulated_open/components populated
  IntervalSet accumulated_open;
  std::vector<TaggedComponent> components;
  std::vector<GenerationRecord> ledger;

  Rational window_measure() const { return window.hi.value() - window.lo.value(); }
  Rational removed_measure() const;     // sum of the ledger entries
  Rational complement_measure() const;  // window measure - removed
  // Complement of the accumulated open set inside the window; geometry only.
  IntervalSet complement_set() const;
};

struct CantorBuildOptions {
  Interval window = Interval::closed(Rational(0), Rational(1));
  // Materialization cap on the component count; exceeded -> ledger-only.
  long component_cap = 20000;
};

CantorStage build_f_infinity(const LevelSchedule& schedule, int depth,
                             const CantorBuildOptions& opts = {});

struct DensityWindowRow {
  Interval component;
  int level_tag;
  Rational x;
  char side;  // 'L' or 'R'
  Rational density;
};

struct DensityWindowReport {
  std::vector<DensityWindowRow> rows;
  Rational max_density;
  bool pass;  // every density <= 1/2
};

// For every component of the final generation carrying the generation's
// maximal level tag (the components whose 6t-neighbourhoods on both sides
// are pure open territory), checks that the complement set has density at
// most 1/2 in [x-4t, x] and [x, x+4t] (clipped to the window) at sampled x.
// Default samples: endpoints, midpoint, quartiles. critical_mode adds every
// breakpoint of the piecewise-affine density maps, making the reported
// maximum the exact maximum over the whole component.
DensityWindowReport density_window_check(const CantorStage& stage,
                                         bool critical_mode = false);

struct FullMeasureAssembly {
  Interval window = Interval::closed(Rational(0), Rational(1));
  Rational epsilon;
  std::vector<CantorStage> stages;  // one per tile, pairwise disjoint
  Rational gap_measure;             // separation between tiles
  Rational uncovered_measure;       // gaps + per-stage removed open mass
};

// Finite-stage tiling surrogate of a full-measure union of fat-Cantor sets:
// `copies` disjoint closed tiles with geometrically split lengths and
// budgets (tile j receives budget epsilon * 2^-j * |window|), plus a gap
// allowance of epsilon * 2^-copies-1 * |window|. Each tile gets the minimal
// uniform level meeting its budget at the requested depth. The total
// uncovered measure is certified exactly and stays below epsilon * |window|.
FullMeasureAssembly build_full_measure_sosd(const Interval& window, const Rational& epsilon,
                                            int copies, int depth,
                                            const CantorBuildOptions& opts = {});

std::string density_window_csv(const DensityWindowReport& rep, bool decimals = false);

}  // namespace lipset
