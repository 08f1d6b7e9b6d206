#include "khk/diagram.hpp"
#include "khk/errors.hpp"
#include "pd_text.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace khk {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

void LinkDiagram::index_and_validate() {
    std::map<ArcLabel, int> count;
    for (const Crossing& c : crossings_)
        for (ArcLabel a : c.arc) {
            if (a == 0) throw ValidationError("arc label 0 is not allowed");
            ++count[a];
        }
    for (ArcLabel l : loops_) {
        if (l == 0) throw ValidationError("arc label 0 is not allowed");
        if (count.count(l) || std::count(loops_.begin(), loops_.end(), l) != 1)
            throw ValidationError("free-loop label " + std::to_string(l) +
                                  " collides with another arc label");
    }
    for (auto [label, n] : count)
        if (n != 2)
            throw ValidationError("arc label " + std::to_string(label) + " appears " +
                                  std::to_string(n) + " time(s); every label must appear exactly twice");

    arcs_.clear();
    arcs_.reserve(count.size());
    for (auto [label, n] : count) arcs_.push_back(label);

    occ_.assign(arcs_.size(), {ArcSite{}, ArcSite{}});
    slot_arc_.assign(4 * crossings_.size(), -1);
    std::vector<int> seen(arcs_.size(), 0);
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c)
        for (int s = 0; s < 4; ++s) {
            int idx = arc_index(crossings_[c].arc[s]);
            slot_arc_[4 * c + s] = idx;
            occ_[idx][seen[idx]++] = ArcSite{c, s};
        }
}

int LinkDiagram::arc_index(ArcLabel a) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (it == arcs_.end() || *it != a) return -1;
    return static_cast<int>(it - arcs_.begin());
}

bool LinkDiagram::has_arc(ArcLabel a) const {
    return arc_index(a) >= 0 || std::count(loops_.begin(), loops_.end(), a) > 0;
}

ArcLabel LinkDiagram::max_label() const {
    ArcLabel m = 0;
    if (!arcs_.empty()) m = arcs_.back();
    for (ArcLabel l : loops_) m = std::max(m, l);
    return m;
}

// Walk every component once, assigning flow directions. The least arc of
// each component flows into its first occurrence; following the strand
// through crossings (slot s exits at slot s+2) fixes every other arc.
void LinkDiagram::orient_canonically() {
    head_.assign(arcs_.size(), -1);
    for (int start = 0; start < static_cast<int>(arcs_.size()); ++start) {
        if (head_[start] >= 0) continue;
        head_[start] = 0;
        int cur = start;
        while (true) {
            ArcSite in = occ_[cur][head_[cur]];
            int exit_slot = (in.slot + 2) % 4;
            int next = slot_arc_[4 * in.crossing + exit_slot];
            // next flows out of (in.crossing, exit_slot), i.e. into its other site
            int out_idx = occ_[next][0] == ArcSite{in.crossing, exit_slot} ? 0 : 1;
            if (next == start) break;
            if (head_[next] >= 0)
                throw InternalError("inconsistent strand trace"); // unreachable for valid codes
            head_[next] = 1 - out_idx;
            cur = next;
        }
    }
}

void LinkDiagram::apply_orientation(
    const std::vector<std::pair<ArcLabel, ArcSite>>& flow_into) {
    head_.assign(arcs_.size(), -1);
    for (auto& [label, site] : flow_into) {
        int idx = arc_index(label);
        if (idx < 0) throw ValidationError("orientation references unknown arc " + std::to_string(label));
        int h = -1;
        if (occ_[idx][0] == site) h = 0;
        else if (occ_[idx][1] == site) h = 1;
        else throw ValidationError("orientation site does not hold arc " + std::to_string(label));
        head_[idx] = h;
    }
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
        if (head_[i] < 0)
            throw ValidationError("orientation missing for arc " + std::to_string(arcs_[i]));
    // each strand passage must have one incoming and one outgoing end
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c)
        for (int s : {0, 1}) {
            int a = slot_arc_[4 * c + s], b = slot_arc_[4 * c + s + 2];
            bool a_in = flows_into(a) == ArcSite{c, s};
            bool b_in = flows_into(b) == ArcSite{c, s + 2};
            if (a_in == b_in)
                throw ValidationError("orientation not consistent through crossing " + std::to_string(c));
        }
}

// Rotate stored tuples by two slots where needed so that the incoming
// under-strand sits at slot 0, then rebuild the index against the new tuples.
void LinkDiagram::normalize_rotation() {
    std::vector<bool> rot(crossings_.size(), false);
    bool any = false;
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c) {
        rot[c] = !(flows_into(slot_arc_[4 * c]) == ArcSite{c, 0});
        any = any || rot[c];
    }
    if (!any) return;
    std::vector<std::pair<ArcLabel, ArcSite>> flow;
    flow.reserve(arcs_.size());
    for (int i = 0; i < arc_count(); ++i) {
        ArcSite s = flows_into(i);
        if (rot[s.crossing]) s.slot = (s.slot + 2) % 4;
        flow.emplace_back(arcs_[i], s);
    }
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c)
        if (rot[c]) {
            auto& t = crossings_[c].arc;
            t = {t[2], t[3], t[0], t[1]};
        }
    index_and_validate();
    apply_orientation(flow);
}

void LinkDiagram::finish() {
    normalize_rotation();

    UnionFind uf(static_cast<int>(arcs_.size()));
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c) {
        uf.unite(slot_arc_[4 * c], slot_arc_[4 * c + 2]);
        uf.unite(slot_arc_[4 * c + 1], slot_arc_[4 * c + 3]);
    }
    comp_.assign(arcs_.size(), -1);
    ncomp_ = 0;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
        if (uf.find(i) == i) comp_[i] = ncomp_++;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) comp_[i] = comp_[uf.find(i)];
    ncomp_ += static_cast<int>(loops_.size());

    // slot 0 is incoming under after normalization, so the sign is decided by
    // the over-strand alone: +1 when it enters at slot 3, -1 at slot 1.
    sign_.assign(crossings_.size(), 0);
    nplus_ = nminus_ = 0;
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c) {
        bool over_in_at_3 = flows_into(slot_arc_[4 * c + 3]) == ArcSite{c, 3};
        sign_[c] = over_in_at_3 ? +1 : -1;
        (sign_[c] > 0 ? nplus_ : nminus_)++;
    }
}

LinkDiagram LinkDiagram::from_pd(std::vector<Crossing> crossings, std::vector<ArcLabel> loops) {
    LinkDiagram d;
    d.crossings_ = std::move(crossings);
    d.loops_ = std::move(loops);
    d.index_and_validate();
    d.orient_canonically();
    d.finish();
    return d;
}

LinkDiagram LinkDiagram::from_oriented(std::vector<Crossing> crossings,
                                       std::vector<std::pair<ArcLabel, ArcSite>> flow_into,
                                       std::vector<ArcLabel> loops) {
    LinkDiagram d;
    d.crossings_ = std::move(crossings);
    d.loops_ = std::move(loops);
    d.index_and_validate();
    d.apply_orientation(flow_into);
    d.finish();
    return d;
}

std::vector<std::vector<ArcLabel>> LinkDiagram::components() const {
    std::vector<std::vector<ArcLabel>> out;
    std::vector<bool> done(arcs_.size(), false);
    for (int start = 0; start < static_cast<int>(arcs_.size()); ++start) {
        if (done[start]) continue;
        std::vector<ArcLabel> cycle;
        int cur = start;
        do {
            cycle.push_back(arcs_[cur]);
            done[cur] = true;
            ArcSite in = occ_[cur][head_[cur]];
            int exit_slot = (in.slot + 2) % 4;
            int next = slot_arc_[4 * in.crossing + exit_slot];
            cur = next;
        } while (cur != start);
        out.push_back(std::move(cycle));
    }
    for (ArcLabel l : loops_) out.push_back({l});
    return out;
}

std::string LinkDiagram::pd_code() const {
    if (crossings_.empty() && loops_.empty()) return "<empty>";
    std::map<ArcLabel, ArcLabel> rename;
    for (ArcLabel a : arcs_) rename.emplace(a, 0);
    for (ArcLabel l : loops_) rename.emplace(l, 0);
    ArcLabel next = 1;
    for (auto& [old_label, fresh] : rename) fresh = next++;

    std::ostringstream os;
    bool first = true;
    for (const Crossing& c : crossings_) {
        if (!first) os << ' ';
        first = false;
        os << "X(" << rename.at(c.arc[0]) << ',' << rename.at(c.arc[1]) << ','
           << rename.at(c.arc[2]) << ',' << rename.at(c.arc[3]) << ')';
    }
    for (size_t i = 0; i < loops_.size(); ++i) {
        if (!first) os << ' ';
        first = false;
        os << 'U';
    }
    return os.str();
}

bool LinkDiagram::operator==(const LinkDiagram& o) const {
    if (crossings_.size() != o.crossings_.size() || loops_ != o.loops_) return false;
    for (size_t c = 0; c < crossings_.size(); ++c)
        if (crossings_[c].arc != o.crossings_[c].arc) return false;
    return head_ == o.head_;
}

// ---------------------------------------------------------------------------
// parsing

LinkDiagram parse_pd(const std::string& text) {
    std::vector<Crossing> crossings;
    int unknots = 0;
    for (const pdtext::Token& t : pdtext::tokenize(text)) {
        if (t.text == "U") { ++unknots; continue; }
        if (t.text.rfind("X(", 0) == 0) {
            auto labels = pdtext::parse_label_list(t, 1);
            if (labels.size() != 4) pdtext::syntax_error(t, "X record needs exactly 4 labels");
            crossings.push_back({{labels[0], labels[1], labels[2], labels[3]}});
            continue;
        }
        pdtext::syntax_error(t, "expected X(a,b,c,d) or U");
    }
    ArcLabel next = 0;
    for (const Crossing& c : crossings)
        for (ArcLabel a : c.arc) next = std::max(next, a);
    std::vector<ArcLabel> loops;
    for (int i = 0; i < unknots; ++i) loops.push_back(++next);
    return LinkDiagram::from_pd(std::move(crossings), std::move(loops));
}

std::pair<int, int> crossing_signs(const LinkDiagram& d) {
    return {d.n_plus(), d.n_minus()};
}

bool is_planar(const LinkDiagram& d) {
    const int na = d.arc_count();
    const int nc = d.crossing_count();
    if (nc == 0) return true;

    UnionFind comp(na);
    for (int c = 0; c < nc; ++c)
        for (int s = 1; s < 4; ++s) comp.unite(d.slot_arc(c, 0), d.slot_arc(c, s));

    // faces are orbits of "follow the arc, then turn to the next slot"
    std::vector<char> seen(2 * na, 0);
    std::vector<int> faces_of(na, 0), arcs_of(na, 0), crossings_of(na, 0);
    for (int a = 0; a < na; ++a) ++arcs_of[comp.find(a)];
    for (int c = 0; c < nc; ++c) ++crossings_of[comp.find(d.slot_arc(c, 0))];

    for (int d0 = 0; d0 < 2 * na; ++d0) {
        if (seen[d0]) continue;
        ++faces_of[comp.find(d0 / 2)];
        int cur = d0;
        do {
            seen[cur] = 1;
            int arc = cur / 2, end = cur % 2;
            ArcSite site = d.sites(arc)[end];
            int s2 = (site.slot + 1) % 4;
            int next = d.slot_arc(site.crossing, s2);
            int f = d.sites(next)[0] == ArcSite{site.crossing, s2} ? 0 : 1;
            cur = 2 * next + (1 - f);
        } while (cur != d0);
    }
    for (int a = 0; a < na; ++a)
        if (comp.find(a) == a && crossings_of[a] - arcs_of[a] + faces_of[a] != 2) return false;
    return true;
}

// ---------------------------------------------------------------------------
// derived diagrams; all of these transport the existing orientation

namespace {

std::vector<std::pair<ArcLabel, ArcSite>> current_flow(const LinkDiagram& d) {
    std::vector<std::pair<ArcLabel, ArcSite>> flow;
    flow.reserve(d.arcs().size());
    for (int i = 0; i < d.arc_count(); ++i) flow.emplace_back(d.arcs()[i], d.flows_into(i));
    return flow;
}

} // namespace

LinkDiagram mirror(const LinkDiagram& d) {
    std::vector<Crossing> cs = d.crossings();
    for (Crossing& c : cs) c.arc = {c.arc[1], c.arc[2], c.arc[3], c.arc[0]};
    auto flow = current_flow(d);
    for (auto& [label, site] : flow) site.slot = (site.slot + 3) % 4;
    return LinkDiagram::from_oriented(std::move(cs), std::move(flow), d.free_loops());
}

LinkDiagram disjoint_union(const LinkDiagram& d1, const LinkDiagram& d2) {
    ArcLabel shift = d1.max_label();
    std::vector<Crossing> cs = d1.crossings();
    int c_shift = d1.crossing_count();
    for (const Crossing& c : d2.crossings()) {
        Crossing s = c;
        for (ArcLabel& a : s.arc) a += shift;
        cs.push_back(s);
    }
    auto flow = current_flow(d1);
    for (auto [label, site] : current_flow(d2))
        flow.emplace_back(label + shift, ArcSite{site.crossing + c_shift, site.slot});
    std::vector<ArcLabel> loops = d1.free_loops();
    for (ArcLabel l : d2.free_loops()) loops.push_back(l + shift);
    return LinkDiagram::from_oriented(std::move(cs), std::move(flow), std::move(loops));
}

LinkDiagram add_r1_kink(const LinkDiagram& d, ArcLabel arc, int handedness) {
    if (handedness != 1 && handedness != -1)
        throw ValidationError("kink handedness must be +1 or -1");
    if (!d.has_arc(arc))
        throw ValidationError("unknown arc label " + std::to_string(arc));

    std::vector<Crossing> cs = d.crossings();
    std::vector<ArcLabel> loops = d.free_loops();
    auto flow = current_flow(d);
    int kc = static_cast<int>(cs.size());
    ArcLabel z = d.max_label() + 1;

    bool is_loop = d.arc_index(arc) < 0;
    if (is_loop) {
        // closed circle becomes the 1-crossing unknot diagram
        loops.erase(std::find(loops.begin(), loops.end(), arc));
        if (handedness > 0) {
            cs.push_back({{arc, arc, z, z}});
            flow.emplace_back(arc, ArcSite{kc, 0});
            flow.emplace_back(z, ArcSite{kc, 3});
        } else {
            cs.push_back({{arc, z, z, arc}});
            flow.emplace_back(arc, ArcSite{kc, 0});
            flow.emplace_back(z, ArcSite{kc, 1});
        }
        return LinkDiagram::from_oriented(std::move(cs), std::move(flow), std::move(loops));
    }

    // split: arc keeps its tail half and flows into the kink; y continues to
    // the old head site
    ArcLabel y = z + 1;
    ArcSite old_in = d.flows_into(d.arc_index(arc));
    cs[old_in.crossing].arc[old_in.slot] = y;
    if (handedness > 0) {
        cs.push_back({{arc, y, z, z}});
        flow.emplace_back(z, ArcSite{kc, 3});
    } else {
        cs.push_back({{arc, z, z, y}});
        flow.emplace_back(z, ArcSite{kc, 1});
    }
    flow.emplace_back(y, old_in);
    for (auto& [label, site] : flow)
        if (label == arc) { site = ArcSite{kc, 0}; break; }
    return LinkDiagram::from_oriented(std::move(cs), std::move(flow), std::move(loops));
}

namespace {

// The finger from x crosses over w twice. Four chirality variants: the
// finger can approach w from either side, and either the outgoing or the
// returning pass can come first along w; a geometric pair realizes at least
// one of them as a planar code. Strand order is always x -> t -> y over,
// w -> m -> v under.
LinkDiagram r2_gadget(const LinkDiagram& d, ArcLabel finger_arc, ArcLabel under_arc,
                      int variant) {
    std::vector<Crossing> cs = d.crossings();
    std::vector<ArcLabel> loops = d.free_loops();
    auto flow = current_flow(d);
    int f1 = static_cast<int>(cs.size());
    int f2 = f1 + 1;

    ArcLabel next = d.max_label();
    ArcLabel t = ++next; // finger tip
    ArcLabel m = ++next; // middle of the under strand

    // continuation labels: a closed loop wraps around onto itself
    bool finger_is_loop = d.arc_index(finger_arc) < 0;
    bool under_is_loop = d.arc_index(under_arc) < 0;
    ArcLabel y = finger_is_loop ? finger_arc : ++next;
    ArcLabel v = under_is_loop ? under_arc : ++next;

    auto redirect = [&](ArcLabel label, ArcSite into) {
        for (auto& [l, site] : flow)
            if (l == label) { site = into; return; }
        flow.emplace_back(label, into);
    };

    switch (variant) {
    case 0: // from the left of w, outgoing pass first
        cs.push_back({{under_arc, t, m, finger_arc}});
        cs.push_back({{m, t, v, y}});
        redirect(finger_arc, ArcSite{f1, 3});
        redirect(t, ArcSite{f2, 1});
        break;
    case 1: // from the right of w, outgoing pass first
        cs.push_back({{under_arc, finger_arc, m, t}});
        cs.push_back({{m, y, v, t}});
        redirect(finger_arc, ArcSite{f1, 1});
        redirect(t, ArcSite{f2, 3});
        break;
    case 2: // from the left of w, returning pass first
        cs.push_back({{under_arc, t, m, y}});
        cs.push_back({{m, t, v, finger_arc}});
        redirect(finger_arc, ArcSite{f2, 3});
        redirect(t, ArcSite{f1, 1});
        break;
    default: // from the right of w, returning pass first
        cs.push_back({{under_arc, y, m, t}});
        cs.push_back({{m, finger_arc, v, t}});
        redirect(finger_arc, ArcSite{f2, 1});
        redirect(t, ArcSite{f1, 3});
        break;
    }
    redirect(under_arc, ArcSite{f1, 0});
    redirect(m, ArcSite{f2, 0});

    if (under_is_loop) {
        loops.erase(std::find(loops.begin(), loops.end(), under_arc));
    } else {
        ArcSite w_in = d.flows_into(d.arc_index(under_arc));
        cs[w_in.crossing].arc[w_in.slot] = v;
        redirect(v, w_in);
    }
    if (finger_is_loop) {
        loops.erase(std::find(loops.begin(), loops.end(), finger_arc));
    } else {
        ArcSite x_in = d.flows_into(d.arc_index(finger_arc));
        cs[x_in.crossing].arc[x_in.slot] = y;
        redirect(y, x_in);
    }
    return LinkDiagram::from_oriented(std::move(cs), std::move(flow), std::move(loops));
}

} // namespace

LinkDiagram add_r2_fingers(const LinkDiagram& d, ArcLabel finger_arc, ArcLabel under_arc) {
    if (finger_arc == under_arc)
        throw ValidationError("R2 needs two distinct arcs");
    for (ArcLabel a : {finger_arc, under_arc})
        if (!d.has_arc(a))
            throw ValidationError("unknown arc label " + std::to_string(a));

    if (!is_planar(d)) return r2_gadget(d, finger_arc, under_arc, 0);
    for (int variant = 0; variant < 4; ++variant) {
        LinkDiagram out = r2_gadget(d, finger_arc, under_arc, variant);
        if (is_planar(out)) return out;
    }
    throw ValidationError("arcs " + std::to_string(finger_arc) + " and " +
                          std::to_string(under_arc) +
                          " do not cobound a region; no two-crossing finger move exists");
}

} // namespace khk
