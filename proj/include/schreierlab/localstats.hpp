#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "schreierlab/graph.hpp"
#include "schreierlab/rational.hpp"

namespace schreierlab {

// Canonical byte string of a rooted (optionally edge-labeled) ball, equal for
// two balls exactly when they are rooted (label-preserving) isomorphic. The
// bytes carry a header (labeled flag, size, label table) followed by the
// lexicographically minimal adjacency encoding over all depth-monotone vertex
// orderings starting at the root.
struct RootedBallCode {
    std::vector<std::uint8_t> bytes;

    bool labeled() const;
    std::string hex() const;
    static RootedBallCode from_hex(const std::string& s);

    bool operator==(const RootedBallCode& o) const { return bytes == o.bytes; }
    bool operator<(const RootedBallCode& o) const { return bytes < o.bytes; }
};

RootedBallCode canonical_code(const RootedBall& b, bool labeled);

// Distribution of rooted r-ball isomorphism types over the vertices of one
// graph. Counts are exact; frequencies are count/total.
struct BallCensus {
    int radius = 0;
    bool labeled = false;
    std::int64_t total = 0;
    std::map<RootedBallCode, std::int64_t> counts;

    Rational frequency(const RootedBallCode& c) const;
};

BallCensus census(const LabeledGraph& g, int r, bool labeled);        // OpenMP over vertices
BallCensus census_serial(const LabeledGraph& g, int r, bool labeled); // reference kernel

// Total-variation distance (1/2) sum |freq difference|; exact rational in [0,1].
Rational census_distance(const BallCensus& a, const BallCensus& b);

} // namespace schreierlab
