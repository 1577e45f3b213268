#include "tiltz/center.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tiltz {

DigitLoop digit_loop(Vertex v, int i, Engine& engine) {
  const Prime p = engine.prime();
  auto d = digit_set(v, p);
  if (!std::binary_search(d.begin(), d.end(), i))
    throw std::invalid_argument("digit_loop: " + std::to_string(i) + " is not in D_v");
  auto hull = down_hull(AdmissibleSet::singleton(i), v, p);
  if (!hull) throw std::invalid_argument("digit_loop: {" + std::to_string(i) + "} has no hull");
  const std::int64_t a = digit(v, i, p);
  const std::int64_t scalar = (a % 2 == 0) ? a : -a;
  return {i, v, loop(*hull, v, engine).scaled(scalar)};
}

Morphism digit_set_loop(Vertex v, const DigitSet& s, Engine& engine) {
  Morphism m = Morphism::identity(engine.prime(), v);
  for (int i : s) m = engine.compose(digit_loop(v, i, engine).morphism, m);
  return m;
}

Morphism CentralCandidate::at(Vertex x, Prime p) const {
  auto it = support.find(x);
  return it == support.end() ? Morphism(p, x, x) : it->second;
}

std::string CentralCandidate::label() const {
  return kind == Type::Unit ? "1" : "L_" + std::to_string(key);
}

CentralCandidate unit_candidate(const Block& b, Prime p) {
  CentralCandidate c;
  c.kind = CentralCandidate::Type::Unit;
  c.key = b.eve;
  for (Vertex v : b.members) c.support.emplace(v, Morphism::identity(p, v));
  return c;
}

CentralCandidate central_loop(Vertex v, const Truncation& t, Engine& engine) {
  const Prime p = engine.prime();
  if (is_eve(v, p)) throw std::invalid_argument("central_loop: eves carry no loop");
  CentralCandidate c;
  c.kind = CentralCandidate::Type::Loop;
  c.key = v;
  const auto dv = digit_set(v, p);
  for (Vertex w : equiv_class(v, dv, p, t.bound)) c.support.emplace(w, digit_set_loop(w, dv, engine));
  return c;
}

CentralityReport check_centrality(const CentralCandidate& c, const Truncation& t, Vertex margin,
                                  Engine& engine) {
  const Prime p = engine.prime();
  const Vertex top = t.bound - margin;
  CentralityReport r;
  // Any generator touching the support, plus those leaving it, must commute.
  std::set<Vertex> sources;
  for (const auto& [x, m] : c.support)
    if (x <= top) {
      sources.insert(x);
      for (const auto& g : neighbors(x, p))
        if (g.target <= top) sources.insert(g.target);
    }
  for (Vertex x : sources) {
    for (const auto& g : neighbors(x, p)) {
      if (g.target > top) continue;
      ++r.generators_checked;
      Morphism gen = engine.generator_morphism(g);
      Morphism lhs = engine.compose(c.at(g.target, p), gen);
      Morphism rhs = engine.compose(gen, c.at(x, p));
      if (!(lhs == rhs)) {
        r.verified = false;
        std::ostringstream os;
        os << (g.kind == Kind::Down ? "D" : "U") << to_string(g.stretch) << " e[" << x << "]: "
           << lhs.to_string() << " != " << rhs.to_string();
        r.failures.push_back(os.str());
      }
    }
  }
  return r;
}

std::map<Vertex, Morphism> central_products(const CentralCandidate& u, const CentralCandidate& w,
                                            Engine& engine) {
  std::map<Vertex, Morphism> out;
  for (const auto& [x, m] : u.support) {
    auto it = w.support.find(x);
    if (it != w.support.end()) out.emplace(x, engine.compose(m, it->second));
  }
  return out;
}

bool in_span(const Morphism& m, const std::vector<Morphism>& basis) {
  auto with = basis;
  with.push_back(m);
  return rank_of(with) == rank_of(basis);
}

namespace {

struct Coordinates {
  std::vector<Vertex> vertices;
  std::map<Vertex, std::size_t> offset;
  std::map<Vertex, std::vector<BasisWord>> words;
  std::size_t size = 0;

  std::size_t column(Vertex x, const BasisWord& w) const {
    const auto& ws = words.at(x);
    auto it = std::lower_bound(ws.begin(), ws.end(), w);
    if (it == ws.end() || !(*it == w)) throw std::logic_error("word outside End basis");
    return offset.at(x) + static_cast<std::size_t>(it - ws.begin());
  }
};

SparseVec embed(const CentralCandidate& c, const Coordinates& co, Vertex top) {
  SparseVec v;
  for (const auto& [x, m] : c.support) {
    if (x > top || !co.offset.count(x)) continue;
    for (const auto& [w, k] : m.terms()) v.emplace_back(co.column(x, w), k);
  }
  std::sort(v.begin(), v.end());
  return v;
}

SparseVec restrict_to(const SparseVec& v, std::size_t lo, std::size_t hi) {
  SparseVec out;
  for (const auto& e : v)
    if (e.first >= lo && e.first < hi) out.push_back(e);
  return out;
}

}  // namespace

SolverReport commutant_solve(Vertex eve, const Truncation& t, Vertex margin, Engine& engine,
                             const std::vector<Vertex>& probes) {
  const Prime p = engine.prime();
  const std::int64_t q = p.value();
  const Vertex top = t.bound - margin;
  SolverReport rep;
  rep.eve = eve;
  rep.bound = t.bound;
  rep.margin = margin;

  Block b = block(eve, p, t.bound);
  Coordinates co;
  co.vertices = b.members;
  for (Vertex x : b.members) {
    co.offset[x] = co.size;
    co.words[x] = hom_basis(x, x, p);
    co.size += co.words[x].size();
  }
  rep.unknowns = co.size;

  std::vector<SparseVec> rows;
  for (Vertex x : b.members) {
    for (const auto& g : neighbors(x, p)) {
      const Vertex y = g.target;
      if (y > t.bound) continue;
      Morphism gen = engine.generator_morphism(g);
      std::map<BasisWord, std::map<std::size_t, std::int64_t>> eq;
      const auto& ey = co.words.at(y);
      for (std::size_t i = 0; i < ey.size(); ++i) {
        const Morphism m = engine.compose(Morphism::of(p, ey[i]), gen);
        for (const auto& [w, k] : m.terms()) eq[w][co.offset.at(y) + i] += k;
      }
      const auto& ex = co.words.at(x);
      for (std::size_t i = 0; i < ex.size(); ++i) {
        const Morphism m = engine.left_mul({g.kind, g.stretch}, ex[i]);
        for (const auto& [w, k] : m.terms()) eq[w][co.offset.at(x) + i] -= k;
      }
      for (const auto& [w, cols] : eq) {
        SparseVec row;
        for (const auto& [c, k] : cols)
          if (Fp::reduce(k, q) != 0) row.emplace_back(c, Fp::reduce(k, q));
        if (!row.empty()) rows.push_back(std::move(row));
      }
    }
  }
  rep.equations = rows.size();
  auto kernel = nullspace(rows, co.size, q);
  rep.nullity = kernel.size();
  rep.rank = co.size - kernel.size();

  // Interior columns form a prefix because offsets follow ascending vertices.
  std::size_t interior_cols = 0;
  for (Vertex x : b.members)
    if (x <= top) interior_cols = co.offset[x] + co.words[x].size();

  RowReducer solved(q);
  for (const auto& v : kernel) solved.insert(restrict_to(v, 0, interior_cols));
  rep.interior_dim = solved.rank();

  RowReducer predicted(q), joint(q);
  for (const auto& [c, row] : solved.rows()) joint.insert(row);
  std::vector<CentralCandidate> family{unit_candidate(b, p)};
  std::set<std::pair<DigitSet, Vertex>> classes;
  for (Vertex v : b.members) {
    if (v > top || is_eve(v, p)) continue;
    auto dv = digit_set(v, p);
    auto cls = equiv_class(v, dv, p, t.bound);
    if (!classes.insert({dv, cls.front()}).second) continue;
    family.push_back(central_loop(v, t, engine));
  }
  for (const auto& c : family) {
    SparseVec v = embed(c, co, top);
    predicted.insert(v);
    joint.insert(v);
    rep.predicted_basis.push_back(c.label());
  }
  rep.predicted_dim = predicted.rank();
  rep.matches_prediction = rep.predicted_dim == family.size() &&
                           rep.interior_dim == rep.predicted_dim && joint.rank() == rep.predicted_dim;

  for (Vertex x : probes) {
    if (!co.offset.count(x)) continue;
    const std::size_t lo = co.offset[x], hi = lo + co.words[x].size();
    RowReducer local(q);
    for (const auto& v : kernel) local.insert(restrict_to(v, lo, hi));
    local.to_reduced();
    std::vector<Morphism> image;
    for (const auto& [c, row] : local.rows()) {
      Morphism m(p, x, x);
      for (const auto& [col, k] : row) m.add(co.words[x][col - lo], k);
      image.push_back(m);
    }
    rep.local_images[x] = image;
  }
  return rep;
}

Fp casimir_scalar(Vertex e, Prime p) { return Fp(e, p) * Fp(e, p); }

CasimirReport casimir_check(const Block& b, Prime p) {
  CasimirReport r;
  const Fp c = casimir_scalar(b.eve, p);
  for (Vertex v : b.members) {
    ++r.checked;
    if (!(Fp(v, p) * Fp(v, p) == c)) {
      r.ok = false;
      r.violations.push_back(v);
    }
  }
  return r;
}

FiberReport block_fibering(const Truncation& t) {
  const Prime p = t.p;
  FiberReport r;
  std::map<Vertex, Vertex> owner;
  for (const auto& e : eves_below(t.bound, p)) {
    ++r.eves;
    Block b = block(e.value, p, t.bound);
    ++r.fibers;
    for (Vertex v : b.members) {
      if (!owner.emplace(v, e.value).second) {
        r.ok = false;
        r.failures.push_back(std::to_string(v) + " lies in two blocks");
      }
    }
  }
  for (Vertex v = 1; v <= t.bound; ++v) {
    auto it = owner.find(v);
    if (it == owner.end()) {
      r.ok = false;
      r.failures.push_back(std::to_string(v) + " lies in no block");
      continue;
    }
    if (is_eve(v, p)) continue;
    ++r.loops_checked;
    for (Vertex w : equiv_class(v, digit_set(v, p), p, t.bound)) {
      auto jt = owner.find(w);
      if (jt == owner.end() || jt->second != it->second) {
        r.ok = false;
        r.failures.push_back("C_" + std::to_string(v) + " leaves its block at " + std::to_string(w));
        break;
      }
    }
  }
  return r;
}

std::size_t CenterRun::verified() const {
  std::size_t n = 0;
  for (const auto& [c, r] : candidates) n += r.verified;
  return n;
}

bool CenterRun::ok() const {
  return products_zero && verified() == candidates.size() && (!solver || solver->matches_prediction);
}

CenterRun run_center(Prime p, Vertex eve, Vertex bound, Vertex margin, bool solver,
                     const std::vector<Vertex>& probes) {
  if (margin < 0 || margin >= bound) throw std::invalid_argument("margin must lie in [0, N)");
  Engine engine(p);
  Truncation t{p, bound, eve};
  Block b = block(eve, p, bound);
  CenterRun run;
  auto& cands = run.candidates;
  auto unit = unit_candidate(b, p);
  cands.emplace_back(unit, check_centrality(unit, t, margin, engine));
  std::set<std::pair<DigitSet, Vertex>> classes;
  for (Vertex v : b.members) {
    if (v > bound - margin || is_eve(v, p)) continue;
    auto dv = digit_set(v, p);
    if (!classes.insert({dv, equiv_class(v, dv, p, bound).front()}).second) continue;
    auto c = central_loop(v, t, engine);
    cands.emplace_back(c, check_centrality(c, t, margin, engine));
  }
  for (std::size_t i = 1; i < cands.size() && run.products_zero; ++i)
    for (std::size_t j = i; j < cands.size() && run.products_zero; ++j)
      for (const auto& [x, prod] : central_products(cands[i].first, cands[j].first, engine))
        if (x <= bound - margin && !prod.is_zero()) run.products_zero = false;
  if (solver) run.solver = commutant_solve(eve, t, margin, engine, probes);
  return run;
}

std::string center_report_json(Prime p, Vertex eve, Vertex bound, Vertex margin,
                               const std::vector<std::pair<CentralCandidate, CentralityReport>>& cands,
                               const SolverReport* solver, bool products_zero) {
  nlohmann::ordered_json j;
  j["p"] = p.value();
  j["eve"] = eve;
  j["N"] = bound;
  j["margin"] = margin;
  j["candidates"] = nlohmann::ordered_json::array();
  for (const auto& [c, r] : cands) {
    j["candidates"].push_back({{"kind", c.kind == CentralCandidate::Type::Unit ? "unit" : "loop"},
                               {"key_vertex", c.key},
                               {"support_size", c.support.size()},
                               {"generators_checked", r.generators_checked},
                               {"verified", r.verified},
                               {"failures", r.failures}});
  }
  j["products_zero"] = products_zero;
  if (solver) {
    j["solver"] = {{"unknowns", solver->unknowns},
                   {"equations", solver->equations},
                   {"rank", solver->rank},
                   {"nullity", solver->nullity},
                   {"interior_dim", solver->interior_dim},
                   {"predicted_dim", solver->predicted_dim},
                   {"matches_prediction", solver->matches_prediction},
                   {"basis", solver->predicted_basis}};
  }
  return j.dump(2) + "\n";
}

}  // namespace tiltz
