#include "khk/kauffman.hpp"
#include "khk/errors.hpp"
#include "pd_text.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace khk {

void GraphDiagram::validate() {
    std::map<ArcLabel, int> count;
    for (const Crossing& c : crossings_)
        for (ArcLabel a : c.arc) {
            if (a == 0) throw ValidationError("arc label 0 is not allowed");
            ++count[a];
        }
    for (size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v].degree() == 0)
            throw ValidationError("vertex " + std::to_string(v) + " has degree 0");
        for (ArcLabel a : vertices_[v].halfedges) {
            if (a == 0) throw ValidationError("arc label 0 is not allowed");
            ++count[a];
        }
    }
    for (ArcLabel l : loops_)
        if (count.count(l) || std::count(loops_.begin(), loops_.end(), l) != 1)
            throw ValidationError("free-loop label " + std::to_string(l) +
                                  " collides with another arc label");
    for (auto [label, n] : count)
        if (n != 2)
            throw ValidationError("arc label " + std::to_string(label) + " appears " +
                                  std::to_string(n) +
                                  " time(s) across crossings and vertices; expected exactly two");
    arcs_.clear();
    for (auto [label, n] : count) arcs_.push_back(label);
}

GraphDiagram GraphDiagram::from_parts(std::vector<Crossing> crossings,
                                      std::vector<VertexStar> vertices,
                                      std::vector<ArcLabel> loops) {
    GraphDiagram g;
    g.crossings_ = std::move(crossings);
    g.vertices_ = std::move(vertices);
    g.loops_ = std::move(loops);
    g.validate();
    return g;
}

ArcLabel GraphDiagram::max_label() const {
    ArcLabel m = 0;
    if (!arcs_.empty()) m = arcs_.back();
    for (ArcLabel l : loops_) m = std::max(m, l);
    return m;
}

GraphDiagram parse_graph(const std::string& text) {
    std::vector<Crossing> crossings;
    std::vector<VertexStar> vertices;
    int unknots = 0;
    for (const pdtext::Token& t : pdtext::tokenize(text)) {
        if (t.text == "U") { ++unknots; continue; }
        if (t.text.rfind("X(", 0) == 0) {
            auto labels = pdtext::parse_label_list(t, 1);
            if (labels.size() != 4) pdtext::syntax_error(t, "X record needs exactly 4 labels");
            crossings.push_back({{labels[0], labels[1], labels[2], labels[3]}});
            continue;
        }
        if (t.text.rfind("V(", 0) == 0) {
            auto labels = pdtext::parse_label_list(t, 1);
            vertices.push_back({std::move(labels)});
            continue;
        }
        pdtext::syntax_error(t, "expected X(a,b,c,d), V(h1,...), or U");
    }
    ArcLabel next = 0;
    for (const Crossing& c : crossings)
        for (ArcLabel a : c.arc) next = std::max(next, a);
    for (const VertexStar& v : vertices)
        for (ArcLabel a : v.halfedges) next = std::max(next, a);
    std::vector<ArcLabel> loops;
    for (int i = 0; i < unknots; ++i) loops.push_back(++next);
    return GraphDiagram::from_parts(std::move(crossings), std::move(vertices), std::move(loops));
}

std::string ReplacementChoice::str() const {
    std::ostringstream os;
    for (size_t v = 0; v < pick.size(); ++v) {
        if (v) os << ' ';
        os << 'v' << v << ":(" << pick[v].first << ',' << pick[v].second << ')';
    }
    return os.str();
}

std::vector<std::pair<int, int>> vertex_pair_choices(const VertexStar& v, bool adjacent_only) {
    std::vector<std::pair<int, int>> out;
    int d = v.degree();
    if (adjacent_only) {
        for (int p = 0; p < d; ++p) {
            int q = (p + 1) % d;
            if (p == q) continue;
            auto pr = std::minmax(p, q);
            if (std::find(out.begin(), out.end(), std::pair(pr.first, pr.second)) == out.end())
                out.emplace_back(pr.first, pr.second);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) out.emplace_back(i, j);
    return out;
}

std::vector<ReplacementChoice> enumerate_choices(const GraphDiagram& g, bool adjacent_only) {
    std::vector<std::vector<std::pair<int, int>>> per_vertex;
    long long total = 1;
    for (const VertexStar& v : g.vertices()) {
        per_vertex.push_back(vertex_pair_choices(v, adjacent_only));
        total *= static_cast<long long>(per_vertex.back().size());
        if (total > 1'000'000)
            throw CapError("replacement choice count exceeds 1000000; refusing to enumerate");
    }
    std::vector<ReplacementChoice> out;
    if (total == 0) return out;
    out.reserve(total);
    std::vector<size_t> odo(per_vertex.size(), 0);
    while (true) {
        ReplacementChoice c;
        c.pick.reserve(odo.size());
        for (size_t v = 0; v < odo.size(); ++v) c.pick.push_back(per_vertex[v][odo[v]]);
        out.push_back(std::move(c));
        size_t v = odo.size();
        while (v > 0) {
            --v;
            if (++odo[v] < per_vertex[v].size()) break;
            odo[v] = 0;
            if (v == 0) return out;
        }
        if (odo.empty()) return out; // vertexless graph: single empty choice
    }
}

int Tangle::free_end_count() const {
    int n = 0;
    for (auto& e : ends)
        for (auto& end : e)
            if (end.kind == End::free_end) ++n;
    return n;
}

Tangle apply_replacement(const GraphDiagram& g, const ReplacementChoice& c) {
    if (c.pick.size() != g.vertices().size())
        throw ValidationError("replacement choice must cover every vertex exactly once");

    Tangle t;
    t.crossings = g.crossings();
    t.loops = g.free_loops();
    t.arcs = g.arcs();

    auto arc_index = [&](ArcLabel a) {
        return static_cast<int>(std::lower_bound(t.arcs.begin(), t.arcs.end(), a) - t.arcs.begin());
    };

    // occurrence sites in scan order: crossings first, then vertex stars
    struct Site {
        bool at_vertex;
        int idx;
        int pos;
    };
    std::vector<std::array<Site, 2>> sites(t.arcs.size());
    std::vector<int> seen(t.arcs.size(), 0);
    auto record = [&](ArcLabel a, Site s) { sites[arc_index(a)][seen[arc_index(a)]++] = s; };
    for (int ci = 0; ci < static_cast<int>(t.crossings.size()); ++ci)
        for (int s = 0; s < 4; ++s) record(t.crossings[ci].arc[s], {false, ci, s});
    for (int vi = 0; vi < static_cast<int>(g.vertices().size()); ++vi)
        for (int p = 0; p < g.vertices()[vi].degree(); ++p)
            record(g.vertices()[vi].halfedges[p], {true, vi, p});

    auto port_at = [&](int vi, int pos) -> std::pair<int, int> {
        ArcLabel a = g.vertices()[vi].halfedges[pos];
        int idx = arc_index(a);
        for (int e = 0; e < 2; ++e)
            if (sites[idx][e].at_vertex && sites[idx][e].idx == vi && sites[idx][e].pos == pos)
                return {idx, e};
        throw InternalError("vertex port lookup failed");
    };

    t.ends.assign(t.arcs.size(), {});
    for (size_t a = 0; a < t.arcs.size(); ++a)
        for (int e = 0; e < 2; ++e) {
            const Site& s = sites[a][e];
            if (!s.at_vertex)
                t.ends[a][e] = {Tangle::End::at_crossing, s.idx, s.pos};
            else
                t.ends[a][e] = {Tangle::End::free_end, -1, -1};
        }

    t.free_at_vertex_.assign(g.vertices().size(), 0);
    for (size_t vi = 0; vi < g.vertices().size(); ++vi) {
        auto [i, j] = c.pick[vi];
        int deg = g.vertices()[vi].degree();
        if (i < 0 || j <= i || j >= deg)
            throw ValidationError("choice at vertex " + std::to_string(vi) +
                                  " references half-edge positions (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") outside degree " + std::to_string(deg));
        auto [a1, e1] = port_at(static_cast<int>(vi), i);
        auto [a2, e2] = port_at(static_cast<int>(vi), j);
        t.ends[a1][e1] = {Tangle::End::joined, a2, e2};
        t.ends[a2][e2] = {Tangle::End::joined, a1, e1};
        t.free_at_vertex_[vi] = deg - 2;
    }
    return t;
}

LinkDiagram close_and_prune(const Tangle& t) {
    const int na = static_cast<int>(t.arcs.size());

    // crossing-slot -> (arc, end)
    std::vector<std::array<std::pair<int, int>, 4>> slot_port(t.crossings.size(),
                                                              {std::pair{-1, -1}, {-1, -1}, {-1, -1}, {-1, -1}});
    for (int a = 0; a < na; ++a)
        for (int e = 0; e < 2; ++e)
            if (t.ends[a][e].kind == Tangle::End::at_crossing)
                slot_port[t.ends[a][e].a][t.ends[a][e].b] = {a, e};

    // mark open strands, walking inward from every free end
    std::vector<char> open(na, 0);
    for (int a0 = 0; a0 < na; ++a0)
        for (int e0 = 0; e0 < 2; ++e0) {
            if (t.ends[a0][e0].kind != Tangle::End::free_end || open[a0]) continue;
            int a = a0, entered = e0;
            while (true) {
                open[a] = 1;
                const Tangle::End& exit = t.ends[a][1 - entered];
                if (exit.kind == Tangle::End::free_end) break;
                if (exit.kind == Tangle::End::joined) {
                    a = exit.a;
                    entered = exit.b;
                    continue;
                }
                auto [b, f] = slot_port[exit.a][(exit.b + 2) % 4];
                a = b;
                entered = f;
            }
        }

    // keep crossings whose passages are both closed; splice the closed
    // passage of half-open crossings
    std::vector<std::array<Tangle::End, 2>> ends = t.ends;
    std::vector<char> keep(t.crossings.size(), 0);
    for (size_t c = 0; c < t.crossings.size(); ++c) {
        bool under_open = open[slot_port[c][0].first];
        bool over_open = open[slot_port[c][1].first];
        if (open[slot_port[c][2].first] != under_open || open[slot_port[c][3].first] != over_open)
            throw InternalError("strand passage with mixed open/closed arcs");
        if (!under_open && !over_open) {
            keep[c] = 1;
            continue;
        }
        for (int s : {0, 1}) {
            bool strand_open = s == 0 ? under_open : over_open;
            if (strand_open) continue;
            auto [a1, e1] = slot_port[c][s];
            auto [a2, e2] = slot_port[c][s + 2];
            ends[a1][e1] = {Tangle::End::joined, a2, e2};
            ends[a2][e2] = {Tangle::End::joined, a1, e1};
        }
    }

    // collapse join chains among closed arcs
    std::vector<int> rep(na);
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](int x) {
        while (rep[x] != x) x = rep[x] = rep[rep[x]];
        return x;
    };
    for (int a = 0; a < na; ++a) {
        if (open[a]) continue;
        for (int e = 0; e < 2; ++e)
            if (ends[a][e].kind == Tangle::End::joined) rep[find(a)] = find(ends[a][e].a);
    }
    std::vector<ArcLabel> class_label(na, 0);
    for (int a = 0; a < na; ++a) {
        if (open[a]) continue;
        int r = find(a);
        if (class_label[r] == 0 || t.arcs[a] < class_label[r]) class_label[r] = t.arcs[a];
    }

    // free loops: classes that touch no kept crossing
    std::vector<int> class_crossing_ends(na, 0);
    for (int a = 0; a < na; ++a) {
        if (open[a]) continue;
        for (int e = 0; e < 2; ++e)
            if (ends[a][e].kind == Tangle::End::at_crossing) ++class_crossing_ends[find(a)];
    }
    std::vector<ArcLabel> loops = t.loops;
    for (int a = 0; a < na; ++a)
        if (!open[a] && find(a) == a) {
            if (class_crossing_ends[a] == 0) loops.push_back(class_label[a]);
            else if (class_crossing_ends[a] != 2)
                throw InternalError("arc chain with more than two crossing ends");
        }

    std::vector<Crossing> kept;
    for (size_t c = 0; c < t.crossings.size(); ++c) {
        if (!keep[c]) continue;
        Crossing out;
        for (int s = 0; s < 4; ++s) out.arc[s] = class_label[find(slot_port[c][s].first)];
        kept.push_back(out);
    }
    return LinkDiagram::from_pd(std::move(kept), std::move(loops));
}

std::vector<FamilyMember> family(const GraphDiagram& g, const FamilyOptions& opts) {
    std::vector<ReplacementChoice> choices = enumerate_choices(g, opts.adjacent_only);
    std::vector<FamilyMember> members(choices.size());

    std::string error;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (long long i = 0; i < static_cast<long long>(choices.size()); ++i) {
        try {
            members[i].choice = choices[i];
            members[i].link = close_and_prune(apply_replacement(g, choices[i]));
        } catch (const std::exception& e) {
#pragma omp critical(khk_family_error)
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw InternalError("family member construction failed: " + error);

    if (!opts.dedupe) return members;

    // dedupe: empty links are dropped; members collapse by homology dims
    std::vector<FamilyMember> closed;
    for (FamilyMember& m : members)
        if (m.link.component_count() > 0) closed.push_back(std::move(m));

    for (const FamilyMember& m : closed)
        if (m.link.crossing_count() > opts.cap)
            throw CapError("family member at choice [" + m.choice.str() + "] has " +
                           std::to_string(m.link.crossing_count()) +
                           " crossings, above the cap of " + std::to_string(opts.cap));

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (long long i = 0; i < static_cast<long long>(closed.size()); ++i) {
        try {
            CubeOptions co;
            co.cap = opts.cap;
            co.parallel = false;
            closed[i].dims = homology_dims(build_complex(closed[i].link, co), false);
        } catch (const std::exception& e) {
#pragma omp critical(khk_family_error2)
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw InternalError("family member homology failed: " + error);

    std::map<GradedDims, size_t> first_of;
    std::vector<FamilyMember> out;
    for (FamilyMember& m : closed) {
        auto [it, fresh] = first_of.try_emplace(*m.dims, out.size());
        if (fresh) out.push_back(std::move(m));
    }
    return out;
}

} // namespace khk
