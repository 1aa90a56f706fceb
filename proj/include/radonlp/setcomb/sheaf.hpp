#pragma once

#include "radonlp/setcomb/central.hpp"
#include "radonlp/setcomb/grid_set.hpp"
#include "radonlp/vfcalc/operator_spec.hpp"

#include <map>
#include <string>

namespace radonlp {

enum class StraightenKind {
  Identity,     // X_j = d/dx_k: fibers are the lines of the lattice along axis k
  Exact,        // X_j x_k = 1: coordinates (pi_j, x_k) flow-straighten X_j
  Approximate,  // x_k is only monotone along X_j; speed |X_j x_k| is reported
};

std::string to_string(StraightenKind k);

/// Coordinates in which X_j runs along the fiber parameter tau = x_k.
struct Straightening {
  StraightenKind kind = StraightenKind::Identity;
  unsigned direction = 1;        // j
  std::size_t axis = 0;          // k
  std::vector<CompiledFn> pi;    // fiber coordinates; unused for Identity
  CompiledFn speed;              // X_j x_k; unused for Identity

  static Straightening identity(unsigned j, std::size_t axis);
};

/// Picks Identity when X_j is a coordinate field, Exact when some component
/// of X_j is identically 1, and otherwise Approximate on the component
/// largest at the base point. Throws std::domain_error when X_j vanishes
/// at the base point and SpecError on symbolic parameters.
Straightening make_straightening(const FieldData& fd, unsigned j);

struct SheafConfig {
  double epsilon = 0.25;
  double constant = 4;                   // concentration constant of the certificates
  double level = 0.25;                   // E keeps fibers with mass >= level * mean mass
  std::optional<double> unit;            // default: ambient unit of all fiber parameters
  std::vector<double> fiber_h;           // lattice for pi_j images; default: g.h() without axis k
};

struct FiberCertificate {
  CellKey fiber{};                  // key of the fiber in the pi_j lattice
  DyadicInterval interval;          // I(y)
  double mass = 0;                  // |S(y)|
  double kept = 0;                  // |I(y) cap S(y)|
  double threshold = 0;             // 1/4 (|I|/unit)^eps |S(y)|
  double worst_ratio = 0;           // over recenterings at the cell endpoints of S'(y)
  bool pass = false;
};

struct ScaleClass {
  std::size_t fibers = 0;
  double mass = 0;  // total kept measure along the fibers
};

struct SheafReport {
  GridSet refined;
  unsigned direction = 1;
  std::size_t axis = 0;
  StraightenKind kind = StraightenKind::Identity;
  double width = 0;               // common dyadic width w_j
  double unit = 1;
  double epsilon = 0.25, constant = 4;
  double measure = 0, refined_measure = 0, ratio = 0;
  double level = 0;               // fiber mass threshold defining E
  std::size_t fibers = 0, level_fibers = 0;
  std::map<int, ScaleClass> histogram;  // scale exponent -> class, over E
  std::vector<FiberCertificate> certificates;
  double speed_min = 1, speed_max = 1;
  bool all_pass = false;
};

/// Minimal-dyadic-interval refinement along X_j: fibers over the level set
/// E get their width interval I(y) (threshold 1/4 (|I|/unit)^eps |S(y)|,
/// scales no finer than the cell), the scale class with the largest kept
/// mass wins (ties: coarsest), and the refined set keeps the cells of those
/// fibers lying in I(y). The axis-k lattice must be dyadic (cell size a
/// power of two, origin a multiple of it). Throws std::invalid_argument on
/// an empty set or a non-dyadic lattice and std::domain_error on a
/// degenerate straightening.
SheafReport sheaf_refine(const GridSet& g, const Straightening& s, const SheafConfig& cfg = {});
/// Single-threaded reference; same report as sheaf_refine.
SheafReport sheaf_refine_serial(const GridSet& g, const Straightening& s, const SheafConfig& cfg = {});

/// Fiber parameter sets of g: map from fiber key to the union of the
/// axis-k cell intervals.
std::map<CellKey, IntervalUnion> fiber_sets(const GridSet& g, const Straightening& s,
                                            const std::vector<double>& fiber_h);

}  // namespace radonlp
