#pragma once

// The quiver of the Ringel dual: vertices v >= 1, one Down and one Up arrow
// per minimal stretch, connected components (blocks) and the classes C_v.

#include <string>
#include <vector>

#include "tiltz/admissible.hpp"
#include "tiltz/padic.hpp"

namespace tiltz {

enum class Kind { Down, Up };

struct Generator {
  Kind kind;
  Stretch stretch;
  Vertex source;
  Vertex target;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Down generator at v along a minimal down stretch; throws if not minimal.
Generator down_generator(Vertex v, Stretch s, Prime p);
/// Up generator at v along a minimal up stretch; throws if not minimal.
Generator up_generator(Vertex v, Stretch s, Prime p);

/// Every generator with source v: Downs first, then Ups, stretches ascending.
std::vector<Generator> neighbors(Vertex v, Prime p);

struct Block {
  Vertex eve;
  Vertex bound;
  std::vector<Vertex> members;  // ascending, all <= bound
};

/// Connected component of the eve e, explored through vertices <= 2N.
Block block(Vertex e, Prime p, Vertex bound);
/// The eve whose block contains v.
Vertex block_eve(Vertex v, Prime p);

/// The ~_S class of v restricted to [1, N]; requires S a subset of D_v.
std::vector<Vertex> equiv_class(Vertex v, const DigitSet& s, Prime p, Vertex bound);

enum class Format { Dot, Json };

/// Serialize the full subquiver on the given vertices (one edge per arrow pair).
std::string export_quiver(const std::vector<Vertex>& vertices, Prime p, Format fmt,
                          Vertex eve = 0, Vertex bound = 0);
std::string export_quiver(const Block& b, Prime p, Format fmt);

/// Edges {lower, upper, stretch} of the idempotent truncation to `vertices`.
struct Edge {
  Vertex lower;
  Vertex upper;
  Stretch stretch;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};
std::vector<Edge> edges_among(const std::vector<Vertex>& vertices, Prime p);

}  // namespace tiltz
