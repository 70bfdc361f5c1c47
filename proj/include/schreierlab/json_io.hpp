#pragma once

#include <string>

#include "schreierlab/amoeba.hpp"
#include "schreierlab/graph.hpp"
#include "schreierlab/hyperfinite.hpp"
#include "schreierlab/localstats.hpp"

namespace schreierlab {

// Canonical JSON with sorted keys and sorted records; identical objects
// serialize to identical bytes. JSON is the round-trip format, DOT is
// export-only.

std::string graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const std::string& text);
std::string graph_to_dot(const LabeledGraph& g);

std::string certificate_to_json(const PartitionCertificate& cert);
PartitionCertificate certificate_from_json(const std::string& text);

std::string census_to_json(const BallCensus& census);
BallCensus census_from_json(const std::string& text);

std::string tower_manifest_json(const AmoebaTower& tower);

// Tower directory layout: level_001.json ... plus manifest.json.
void save_tower(const AmoebaTower& tower, const std::string& dir);
AmoebaTower load_tower(const std::string& dir);

// write-then-rename, so readers never observe a partial file
void write_atomic(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

} // namespace schreierlab
