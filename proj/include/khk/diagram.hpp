#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace khk {

using ArcLabel = std::uint32_t;

// One crossing of a planar diagram: four arc labels listed counterclockwise
// starting from the incoming under-strand. Slots 0 and 2 carry the
// under-strand, slots 1 and 3 the over-strand. Stored crossings are always
// normalized so that the arc at slot 0 is the one flowing into the crossing.
struct Crossing {
    std::array<ArcLabel, 4> arc{};
};

// One attachment point of an arc end: crossing index + slot (0..3).
struct ArcSite {
    int crossing = -1;
    int slot = -1;
    bool operator==(const ArcSite&) const = default;
};

// An oriented PD-coded link diagram. Arc labels are positive integers, each
// appearing exactly twice across the crossing tuples; crossingless unknot
// components ("U" tokens) are carried separately as labeled free loops.
//
// Orientation: every crossing arc flows into exactly one of its two
// attachment sites. Diagrams built from raw PD text get the canonical
// orientation (the least arc of each component flows into its first textual
// occurrence); diagrams derived by mirror / disjoint_union / Reidemeister
// moves transport the existing orientation so that gradings behave
// predictably under those operations.
class LinkDiagram {
public:
    LinkDiagram() = default;

    // Canonically oriented diagram from raw crossings and free-loop labels.
    static LinkDiagram from_pd(std::vector<Crossing> crossings,
                               std::vector<ArcLabel> loops = {});

    // Diagram with an explicitly chosen orientation: flow_into[k] is the site
    // arc crossings[...] flows into, one entry per distinct crossing arc.
    static LinkDiagram
    from_oriented(std::vector<Crossing> crossings,
                  std::vector<std::pair<ArcLabel, ArcSite>> flow_into,
                  std::vector<ArcLabel> loops = {});

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<ArcLabel>& free_loops() const { return loops_; }
    int crossing_count() const { return static_cast<int>(crossings_.size()); }

    // Sorted labels of arcs that touch a crossing (free loops excluded).
    const std::vector<ArcLabel>& arcs() const { return arcs_; }
    bool has_arc(ArcLabel a) const;        // crossing arc or free loop
    ArcLabel max_label() const;

    int component_count() const { return ncomp_; }
    // Each crossing component as its cycle of arc labels in traversal order;
    // free loops appended as singletons.
    std::vector<std::vector<ArcLabel>> components() const;

    int n_plus() const { return nplus_; }
    int n_minus() const { return nminus_; }
    int crossing_sign(int c) const { return sign_[c]; }

    // Dense arc indexing used by the cube machinery.
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    int arc_index(ArcLabel a) const;       // -1 if not a crossing arc
    int slot_arc(int c, int s) const { return slot_arc_[4 * c + s]; }
    const std::array<ArcSite, 2>& sites(int arc_idx) const { return occ_[arc_idx]; }
    ArcSite flows_into(int arc_idx) const { return occ_[arc_idx][head_[arc_idx]]; }

    // Canonical text form ("X(a,b,c,d) ... U ..."), arcs relabeled 1..m.
    std::string pd_code() const;

    // Structural equality: same crossings, loops and orientation.
    bool operator==(const LinkDiagram& o) const;

private:
    void index_and_validate();
    void orient_canonically();
    void apply_orientation(const std::vector<std::pair<ArcLabel, ArcSite>>& flow_into);
    void normalize_rotation();
    void finish(); // components + signs; requires heads set

    std::vector<Crossing> crossings_;
    std::vector<ArcLabel> loops_;

    std::vector<ArcLabel> arcs_;                  // sorted
    std::vector<std::array<ArcSite, 2>> occ_;     // per dense arc, scan order
    std::vector<int> head_;                       // occurrence index flowed into
    std::vector<int> slot_arc_;                   // (crossing,slot) -> dense arc
    std::vector<int> comp_;                       // component id per dense arc
    std::vector<int> sign_;                       // per crossing, +1/-1
    int ncomp_ = 0;
    int nplus_ = 0;
    int nminus_ = 0;
};

// Parse PD text: whitespace-separated `X(a,b,c,d)` records plus `U` tokens
// for crossingless unknot components; `#` starts a comment line.
LinkDiagram parse_pd(const std::string& text);

// True when every connected piece of the code embeds in the plane with the
// cyclic orders its tuples prescribe (V - E + F = 2 per piece, faces traced
// from the rotation system). Codes that fail this are virtual: smoothing
// circles can then be glued in ways no planar diagram produces.
bool is_planar(const LinkDiagram& d);

// (n_plus, n_minus) under the diagram's orientation.
std::pair<int, int> crossing_signs(const LinkDiagram& d);

// Mirror image: every crossing switched (tuple rotated by one position);
// orientation carried over, so n_plus and n_minus swap exactly.
LinkDiagram mirror(const LinkDiagram& d);

// Disjoint union; d2's labels are shifted past d1's maximum.
LinkDiagram disjoint_union(const LinkDiagram& d1, const LinkDiagram& d2);

// Insert a Reidemeister-1 kink on `arc` (handedness +1 adds a positive
// crossing, -1 a negative one). The result is a valid diagram of the same
// link with one extra crossing.
LinkDiagram add_r1_kink(const LinkDiagram& d, ArcLabel arc, int handedness);

// Reidemeister-2 finger: push `finger_arc` over `under_arc`, inserting one
// positive and one negative crossing.
LinkDiagram add_r2_fingers(const LinkDiagram& d, ArcLabel finger_arc, ArcLabel under_arc);

} // namespace khk
