#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "systolic/complex.hpp"
#include "systolic/flatgeom.hpp"

namespace systolic {

/// Induced subcomplex of the flat plane on rows firstRow, firstRow + 1, ...
/// where row k holds the lattice points with x in [left_k, right_k]. Vertices
/// are numbered row by row, left to right, from `firstId`; lattice coordinates
/// are attached. Throws std::invalid_argument if an endpoint is not a lattice
/// point of its row or the result is not a triangulated disc.
FlagComplex genFlatRegion(const std::vector<std::pair<Rational, Rational>>& rows, VertexId firstId = 0,
                          int firstRow = 0);

/// Parallelogram with `width` edges along each row and `height` rows above the
/// bottom one, every row shifted right by 1/2 from the row below.
FlagComplex genParallelogram(int width, int height);

/// Roughly hexagonal flat disc of the given radius around one vertex.
FlagComplex genHexagon(int radius);

/// Random flat region: `rowCount` rows whose endpoints perform a bounded
/// random walk, keeping consecutive rows overlapping.
FlagComplex genRandomFlatRegion(std::mt19937_64& rng, int rowCount, int maxWidth);

/// Random systolic disc grown in rings around a central wheel. Every interior
/// vertex ends with degree 6 or 7; a vertex becomes degree 7 with
/// probability `p7`. With p7 = 0 the result is the hexagon of the same radius.
/// The result is validated (disc, locally 6-large); generation retries on the
/// rare failure.
FlagComplex genDiscWithDegrees(std::mt19937_64& rng, int rings, double p7);

/// Adds a twin for each listed vertex: a new vertex adjacent to the original
/// and to all of its neighbours. The listed vertices must be pairwise at
/// distance >= 3; twins get ids above the current maximum, in list order.
/// Twins create 3-simplices while keeping the complex systolic.
FlagComplex addTwins(const FlagComplex& x, std::span<const VertexId> vertices);

/// Twins for a random set of vertices, greedily picked at
/// pairwise distance >= 3 with probability `p` each.
FlagComplex addRandomTwins(std::mt19937_64& rng, const FlagComplex& x, double p);

}  // namespace systolic
