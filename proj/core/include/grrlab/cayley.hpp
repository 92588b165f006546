#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "grrlab/pgl2.hpp"

namespace grr {

/// Simple undirected cubic graph as per-vertex sorted neighbor triples.
struct CubicGraph {
  std::vector<std::array<std::uint32_t, 3>> adj;

  std::uint32_t n() const { return static_cast<std::uint32_t>(adj.size()); }
};

// Throws unless the adjacency structure is simple, symmetric and 3-regular.
void validate_cubic(const CubicGraph& g);

bool is_connected(const CubicGraph& g);

/// Cay(G,S): vertex ids are group element ids, vertex 0 the identity.
/// Neighbors of g are {s*g : s in S} (h ~ g iff h g^-1 in S).
struct CayleyGraph {
  CubicGraph graph;
  std::array<std::uint32_t, 3> s;
};

// S must be a 3-element inverse-closed set avoiding the identity.
CayleyGraph build_cayley(const GroupTable& T, std::span<const std::uint32_t> S);

// Number of automorphisms fixing v0, by backtracking over a BFS order with
// forced-assignment propagation. Counting stops once the count exceeds cap
// (cap = 1 answers "is the stabilizer trivial"). Input must be connected.
long long vertex_stabilizer_size(const CubicGraph& g, std::uint32_t v0, long long cap);

// GRR test by definition: connected and trivial vertex stabilizer (the
// right-regular G-action already supplies |G| automorphisms).
bool is_grr_direct(const GroupTable& T, std::span<const std::uint32_t> S);

// GRR test via the Aut(G,S) = 1 criterion; refuses q = 11, where the
// criterion is not available. S must generate (checked).
bool is_grr_thm(const GroupTable& T, std::span<const std::uint32_t> S);

// Adjacency list text export: first line n, then "v: n1 n2 n3" per vertex.
void write_adjacency(std::ostream& os, const CubicGraph& g);

}  // namespace grr
