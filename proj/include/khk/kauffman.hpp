#pragma once

#include "khk/diagram.hpp"
#include "khk/homology.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace khk {

// A graph vertex with its incident half-edge labels in planar cyclic order.
struct VertexStar {
    std::vector<ArcLabel> halfedges;
    int degree() const { return static_cast<int>(halfedges.size()); }
};

// A diagram of a graph embedded in the 3-sphere: crossings as in a link
// diagram plus vertex stars. Every arc label appears exactly twice across
// crossings and stars combined.
class GraphDiagram {
public:
    static GraphDiagram
    from_parts(std::vector<Crossing> crossings, std::vector<VertexStar> vertices,
               std::vector<ArcLabel> loops = {});

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<VertexStar>& vertices() const { return vertices_; }
    const std::vector<ArcLabel>& free_loops() const { return loops_; }
    const std::vector<ArcLabel>& arcs() const { return arcs_; }
    ArcLabel max_label() const;

private:
    void validate();

    std::vector<Crossing> crossings_;
    std::vector<VertexStar> vertices_;
    std::vector<ArcLabel> loops_;
    std::vector<ArcLabel> arcs_;
};

// Graph PD text: X(a,b,c,d) records, V(h1,...,hk) vertex records, U tokens.
GraphDiagram parse_graph(const std::string& text);

// One replacement decision per vertex: the (position) pair of incident
// half-edges to connect; all other half-edges become free ends.
struct ReplacementChoice {
    std::vector<std::pair<int, int>> pick; // per vertex, positions i < j
    std::string str() const;
};

// Every combination of pair choices over all vertices, in odometer order;
// the count is the product over vertices of C(deg, 2). With adjacent_only
// set, only cyclically adjacent pairs are allowed (rigid vertices).
std::vector<ReplacementChoice> enumerate_choices(const GraphDiagram& g,
                                                 bool adjacent_only = false);

// Pairs available at a single vertex (the C(deg,2) factor).
std::vector<std::pair<int, int>> vertex_pair_choices(const VertexStar& v,
                                                     bool adjacent_only = false);

// What is left after deleting every vertex: crossings, strand joins created
// at the vertices, and free ends.
struct Tangle {
    struct End {
        enum Kind { at_crossing, joined, free_end } kind = free_end;
        int a = -1; // crossing index | partner arc (dense)
        int b = -1; // slot           | partner end
    };
    std::vector<Crossing> crossings;
    std::vector<ArcLabel> loops;
    std::vector<ArcLabel> arcs;              // sorted labels
    std::vector<std::array<End, 2>> ends;    // per dense arc

    int free_end_count() const;
    int free_ends_at(int former_vertex) const { return free_at_vertex_[former_vertex]; }
    std::vector<int> free_at_vertex_; // bookkeeping filled by apply_replacement
};

Tangle apply_replacement(const GraphDiagram& g, const ReplacementChoice& c);

// Trace strands; open strands (free end to free end) are discarded along
// with their crossing passages, closed components are kept as a link
// diagram with the canonical orientation.
LinkDiagram close_and_prune(const Tangle& t);

struct FamilyOptions {
    bool dedupe = true;
    bool adjacent_only = false;
    int cap = default_crossing_cap();
    bool parallel = true;
};

struct FamilyMember {
    ReplacementChoice choice;
    LinkDiagram link;
    std::optional<GradedDims> dims; // filled when dedupe is on
};

// The link family T(G): close_and_prune over every replacement choice.
// With dedupe on, empty links are dropped and members are collapsed by their
// graded homology dimensions (first choice in odometer order represents the
// class); otherwise the full multiset is returned.
std::vector<FamilyMember> family(const GraphDiagram& g, const FamilyOptions& opts = {});

} // namespace khk
