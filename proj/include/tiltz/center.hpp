#pragma once

// Central elements of the completed algebra on finite truncations: the digit
// loops l_i, the sums L_v over the classes C_v, a centrality checker and an
// independent commutant solver.

#include <map>
#include <string>
#include <vector>

#include "tiltz/algebra.hpp"
#include "tiltz/linalg.hpp"

namespace tiltz {

struct DigitLoop {
  int index;
  Vertex v;
  Morphism morphism;
};

/// l_i e_{v-1} = (-1)^{a_i} a_i U_{hull{i}} D_{hull{i}} e_{v-1}; requires i in D_v.
DigitLoop digit_loop(Vertex v, int i, Engine& engine);
/// Product of l_i over i in S; S = {} gives the identity.
Morphism digit_set_loop(Vertex v, const DigitSet& s, Engine& engine);

struct CentralCandidate {
  enum class Type { Unit, Loop };
  Type kind = Type::Unit;
  Vertex key = 1;  // the eve for Unit, v for Loop
  std::map<Vertex, Morphism> support;

  /// The component at x, zero when x is outside the support.
  Morphism at(Vertex x, Prime p) const;
  std::string label() const;
};

/// 1 restricted to the members of b.
CentralCandidate unit_candidate(const Block& b, Prime p);
/// L_v with support C_v cut at the truncation bound; rejects eves.
CentralCandidate central_loop(Vertex v, const Truncation& t, Engine& engine);

struct CentralityReport {
  bool verified = true;
  std::size_t generators_checked = 0;
  std::vector<std::string> failures;
};

/// Check c g = g c for every generator g with both ends in [1, N - M].
CentralityReport check_centrality(const CentralCandidate& c, const Truncation& t, Vertex margin,
                                  Engine& engine);

/// Pointwise products on the common support.
std::map<Vertex, Morphism> central_products(const CentralCandidate& u, const CentralCandidate& w,
                                            Engine& engine);

struct SolverReport {
  Vertex eve = 1;
  Vertex bound = 1;
  Vertex margin = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  std::size_t interior_dim = 0;   // span of solutions projected to [1, N - M]
  std::size_t predicted_dim = 0;  // span of 1 and the L_v, projected likewise
  bool matches_prediction = false;
  std::vector<std::string> predicted_basis;  // labels: "1", "L_5", ...
  /// Projection of the solution space onto the coordinates of End(x), as a
  /// row-reduced list of morphisms, for the requested vertices.
  std::map<Vertex, std::vector<Morphism>> local_images;
};

/// Solve [z, g] = 0 for diagonal z on the block of `eve` in [1, N] and compare
/// the interior projection with span{1, L_v}. `probes` lists vertices whose
/// local image of the solution space should be reported.
SolverReport commutant_solve(Vertex eve, const Truncation& t, Vertex margin, Engine& engine,
                             const std::vector<Vertex>& probes = {});

/// Whether m lies in the span of the given morphisms (all with equal endpoints).
bool in_span(const Morphism& m, const std::vector<Morphism>& basis);

/// e^2 mod p.
Fp casimir_scalar(Vertex e, Prime p);
struct CasimirReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<Vertex> violations;
};
/// v^2 = e^2 mod p for every member of the block.
CasimirReport casimir_check(const Block& b, Prime p);

struct FiberReport {
  bool ok = true;
  std::size_t eves = 0;
  std::size_t fibers = 0;
  std::size_t loops_checked = 0;
  std::vector<std::string> failures;
};
/// Blocks partition [1, N]; every C_v stays in the block of v; one central
/// character fiber per eve.
FiberReport block_fibering(const Truncation& t);

/// Everything `center` computes for one truncated block: the unit, one
/// central loop per class C_v met in the interior, their products, and
/// optionally the brute-force solver.
struct CenterRun {
  std::vector<std::pair<CentralCandidate, CentralityReport>> candidates;
  bool products_zero = true;
  std::optional<SolverReport> solver;
  std::size_t verified() const;
  bool ok() const;
};
CenterRun run_center(Prime p, Vertex eve, Vertex bound, Vertex margin, bool solver,
                     const std::vector<Vertex>& probes = {});

/// JSON report for `center`.
std::string center_report_json(Prime p, Vertex eve, Vertex bound, Vertex margin,
                               const std::vector<std::pair<CentralCandidate, CentralityReport>>& cands,
                               const SolverReport* solver, bool products_zero);

}  // namespace tiltz
