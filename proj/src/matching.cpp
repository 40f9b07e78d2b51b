#include "stackelkep/matching.hpp"

#include "stackelkep/error.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace stackelkep {

MatchingGraph::MatchingGraph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.u == e.v)
            throw validation_error("matching graph: loop at node " + std::to_string(e.u));
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.v >= node_count_)
            throw validation_error("matching graph: edge endpoint " + std::to_string(e.v) +
                                   " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw validation_error("matching graph: duplicate edge {" +
                                   std::to_string(edges_[i].u) + "," +
                                   std::to_string(edges_[i].v) + "}");
}

MatchingGraph MatchingGraph::restricted_to(const NodeSet& w) const {
    std::vector<Edge> kept;
    for (const auto& e : edges_)
        if (w.contains(e.u) && w.contains(e.v))
            kept.push_back(e);
    return MatchingGraph(node_count_, std::move(kept));
}

MatchingGraph MatchingGraph::with_weights(std::vector<std::int64_t> weights) const {
    assert(weights.size() == edges_.size());
    auto edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i].weight = weights[i];
    return MatchingGraph(node_count_, std::move(edges));
}

MatchingGraph undirected_projection(const KepInstance& inst) {
    std::vector<Edge> edges;
    for (const auto& a : inst.arcs())
        if (a.from < a.to && inst.has_arc(a.to, a.from))
            edges.push_back({a.from, a.to, 1});
    return MatchingGraph(inst.size(), std::move(edges));
}

namespace {

// Primal-dual maximum-weight matching on general graphs (Edmonds' blossom
// algorithm with Galil's O(n^3) bookkeeping). Vertex duals are stored doubled
// so integer weights keep every quantity integral.
//
// Endpoint p of edge k is endpoint[p]; p ^ 1 is the opposite endpoint.
// Blossom ids are n..2n-1. Labels: 0 free, 1 S, 2 T; bit 4 marks a blossom
// during scan_blossom.
class Blossom {
public:
    Blossom(std::size_t n, const std::vector<Edge>& edges)
        : n_(static_cast<int>(n)), edges_(edges) {
        const int m = static_cast<int>(edges_.size());
        endpoint_.resize(2 * m);
        neighbend_.assign(n_, {});
        std::int64_t maxweight = 0;
        for (int k = 0; k < m; ++k) {
            endpoint_[2 * k] = static_cast<int>(edges_[k].u);
            endpoint_[2 * k + 1] = static_cast<int>(edges_[k].v);
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
            maxweight = std::max(maxweight, edges_[k].weight);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        labelend_.assign(2 * n_, -1);
        inblossom_.resize(n_);
        for (int v = 0; v < n_; ++v)
            inblossom_[v] = v;
        blossomparent_.assign(2 * n_, -1);
        blossomchilds_.assign(2 * n_, {});
        blossombase_.assign(2 * n_, -1);
        for (int v = 0; v < n_; ++v)
            blossombase_[v] = v;
        blossomendps_.assign(2 * n_, {});
        bestedge_.assign(2 * n_, -1);
        blossombestedges_.assign(2 * n_, {});
        has_bestedges_.assign(2 * n_, false);
        for (int b = 2 * n_ - 1; b >= n_; --b)
            unused_.push_back(b);
        dualvar_.assign(2 * n_, 0);
        for (int v = 0; v < n_; ++v)
            dualvar_[v] = maxweight;
        allowedge_.assign(m, false);
    }

    // mate[v] = partner vertex or -1
    std::vector<int> solve() {
        if (edges_.empty())
            return std::vector<int>(n_, -1);
        for (int stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();

            for (int v = 0; v < n_; ++v)
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0)
                    assign_label(v, 1, -1);

            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    const int v = queue_.back();
                    queue_.pop_back();
                    assert(label_[inblossom_[v]] == 1);
                    for (int p : neighbend_[v]) {
                        const int k = p / 2;
                        const int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w])
                            continue;
                        std::int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0)
                                allowedge_[k] = true;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                const int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                assert(label_[inblossom_[w]] == 2);
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            const int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b]))
                                bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w]))
                                bestedge_[w] = k;
                        }
                    }
                }
                if (augmented)
                    break;

                // No augmenting path under the current duals: pick the dual step.
                int deltatype = 1;
                std::int64_t delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                int deltaedge = -1;
                int deltablossom = -1;

                for (int v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        const auto d = slack(bestedge_[v]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        const auto ks = slack(bestedge_[b]);
                        assert(ks % 2 == 0);
                        const auto d = ks / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        dualvar_[b] < delta) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for (int v = 0; v < n_; ++v) {
                    if (label_[inblossom_[v]] == 1)
                        dualvar_[v] -= delta;
                    else if (label_[inblossom_[v]] == 2)
                        dualvar_[v] += delta;
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1)
                            dualvar_[b] += delta;
                        else if (label_[b] == 2)
                            dualvar_[b] -= delta;
                    }
                }

                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = static_cast<int>(edges_[deltaedge].u);
                    int j = static_cast<int>(edges_[deltaedge].v);
                    if (label_[inblossom_[i]] == 0)
                        std::swap(i, j);
                    assert(label_[inblossom_[i]] == 1);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    const int i = static_cast<int>(edges_[deltaedge].u);
                    assert(label_[inblossom_[i]] == 1);
                    queue_.push_back(i);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }

            if (!augmented)
                break;

            for (int b = n_; b < 2 * n_; ++b)
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
                    dualvar_[b] == 0)
                    expand_blossom(b, true);
        }

        std::vector<int> result(n_, -1);
        for (int v = 0; v < n_; ++v)
            if (mate_[v] >= 0)
                result[v] = endpoint_[mate_[v]];
        return result;
    }

private:
    std::int64_t slack(int k) const {
        return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2 * edges_[k].weight;
    }

    void blossom_leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b])
            blossom_leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        blossom_leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        const int b = inblossom_[w];
        assert(label_[w] == 0 && label_[b] == 0);
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            blossom_leaves(b, queue_);
        } else if (t == 2) {
            const int base = blossombase_[b];
            assert(mate_[base] >= 0);
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    // Walks back from v and w towards the roots; returns the base of a new
    // blossom, or -1 when the two trees differ (an augmenting path exists).
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            assert(label_[b] == 1);
            path.push_back(b);
            label_[b] = 5;
            assert(labelend_[b] == mate_[blossombase_[b]]);
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                assert(label_[b] == 2);
                assert(labelend_[b] >= 0);
                v = endpoint_[labelend_[b]];
            }
            if (w != -1)
                std::swap(v, w);
        }
        for (int b : path)
            label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = static_cast<int>(edges_[k].u);
        int w = static_cast<int>(edges_[k].v);
        const int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        const int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;

        auto& path = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        path.clear();
        endps.clear();
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            assert(label_[bv] == 2 || (label_[bv] == 1 && labelend_[bv] == mate_[blossombase_[bv]]));
            assert(labelend_[bv] >= 0);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            assert(label_[bw] == 2 || (label_[bw] == 1 && labelend_[bw] == mate_[blossombase_[bw]]));
            assert(labelend_[bw] >= 0);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }

        assert(label_[bb] == 1);
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;

        for (int leaf : leaves(b)) {
            if (label_[inblossom_[leaf]] == 2)
                queue_.push_back(leaf);
            inblossom_[leaf] = b;
        }

        std::vector<int> bestedgeto(2 * n_, -1);
        for (int sub : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[sub]) {
                for (int leaf : leaves(sub)) {
                    std::vector<int> list;
                    for (int p : neighbend_[leaf])
                        list.push_back(p / 2);
                    nblists.push_back(std::move(list));
                }
            } else {
                nblists.push_back(blossombestedges_[sub]);
            }
            for (const auto& nblist : nblists) {
                for (int e : nblist) {
                    int i = static_cast<int>(edges_[e].u);
                    int j = static_cast<int>(edges_[e].v);
                    if (inblossom_[j] == b)
                        std::swap(i, j);
                    const int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 &&
                        (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj])))
                        bestedgeto[bj] = e;
                }
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = false;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int e : bestedgeto)
            if (e != -1)
                blossombestedges_[b].push_back(e);
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (int e : blossombestedges_[b])
            if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b]))
                bestedge_[b] = e;
    }

    int child_at(int b, int j) const {
        const int len = static_cast<int>(blossomchilds_[b].size());
        return blossomchilds_[b][((j % len) + len) % len];
    }

    int endp_at(int b, int j) const {
        const int len = static_cast<int>(blossomendps_[b].size());
        return blossomendps_[b][((j % len) + len) % len];
    }

    void expand_blossom(int b, bool endstage) {
        const auto children = blossomchilds_[b];
        for (int s : children) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s))
                    inblossom_[leaf] = s;
            }
        }

        if (!endstage && label_[b] == 2) {
            // The expanding T-blossom keeps an even-length alternating path
            // from its entry child to its base; relabel along that path.
            assert(labelend_[b] >= 0);
            const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            const auto& childs = blossomchilds_[b];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep = 0;
            int endptrick = 0;
            if (j & 1) {
                j -= static_cast<int>(childs.size());
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endp_at(b, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endp_at(b, j - endptrick) / 2] = true;
                j += jstep;
                p = endp_at(b, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int bv = child_at(b, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (child_at(b, j) != entrychild) {
                bv = child_at(b, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int reached = -1;
                for (int leaf : leaves(bv)) {
                    if (label_[leaf] != 0) {
                        reached = leaf;
                        break;
                    }
                }
                if (reached != -1) {
                    assert(label_[reached] == 2);
                    assert(inblossom_[reached] == bv);
                    label_[reached] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(reached, 2, labelend_[reached]);
                }
                j += jstep;
            }
        }

        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    // Swaps matched and unmatched edges along the even path from vertex v
    // to the base of blossom b, then rotates b so v becomes its base.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b)
            t = blossomparent_[t];
        if (t >= n_)
            augment_blossom(t, v);
        auto& childs = blossomchilds_[b];
        const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep = 0;
        int endptrick = 0;
        if (i & 1) {
            j -= static_cast<int>(childs.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = child_at(b, j);
            const int p = endp_at(b, j - endptrick) ^ endptrick;
            if (t >= n_)
                augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = child_at(b, j);
            if (t >= n_)
                augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        auto& endps = blossomendps_[b];
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
        assert(blossombase_[b] == v);
    }

    void augment_matching(int k) {
        const int v = static_cast<int>(edges_[k].u);
        const int w = static_cast<int>(edges_[k].v);
        const std::pair<int, int> sides[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : sides) {
            while (true) {
                const int bs = inblossom_[s];
                assert(label_[bs] == 1);
                assert(labelend_[bs] == mate_[blossombase_[bs]]);
                if (bs >= n_)
                    augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1)
                    break;
                const int t = endpoint_[labelend_[bs]];
                const int bt = inblossom_[t];
                assert(label_[bt] == 2);
                assert(labelend_[bt] >= 0);
                s = endpoint_[labelend_[bt]];
                const int j = endpoint_[labelend_[bt] ^ 1];
                assert(blossombase_[bt] == t);
                if (bt >= n_)
                    augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int n_;
    const std::vector<Edge>& edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unused_;
    std::vector<std::int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int> queue_;
};

std::int64_t optimum(std::size_t n, const std::vector<Edge>& edges) {
    if (edges.empty())
        return 0;
    const auto mate = Blossom(n, edges).solve();
    std::int64_t total = 0;
    for (const auto& e : edges)
        if (mate[e.u] == static_cast<int>(e.v))
            total += e.weight;
    return total;
}

} // namespace

std::int64_t max_matching_weight(const MatchingGraph& g) {
    return optimum(g.node_count(), g.edges());
}

Matching max_weight_matching(const MatchingGraph& g) {
    const auto& edges = g.edges();
    const auto target = optimum(g.node_count(), edges);

    // Build the lexicographically smallest optimal edge list greedily: extend
    // the chosen prefix by the smallest edge that still completes to an
    // optimum using only larger edges; stop as soon as the prefix alone is
    // optimal (a prefix sorts before all of its extensions).
    Matching chosen;
    std::vector<bool> used(g.node_count(), false);
    std::int64_t weight = 0;
    std::size_t next = 0;
    while (weight != target) {
        bool extended = false;
        for (std::size_t j = next; j < edges.size() && !extended; ++j) {
            const auto& e = edges[j];
            if (used[e.u] || used[e.v] || e.weight < 0)
                continue;
            std::vector<Edge> rest;
            for (std::size_t i = j + 1; i < edges.size(); ++i) {
                const auto& f = edges[i];
                if (!used[f.u] && !used[f.v] && f.u != e.u && f.u != e.v && f.v != e.u &&
                    f.v != e.v)
                    rest.push_back(f);
            }
            if (weight + e.weight + optimum(g.node_count(), rest) == target) {
                chosen.push_back(e);
                used[e.u] = used[e.v] = true;
                weight += e.weight;
                next = j + 1;
                extended = true;
            }
        }
        assert(extended);
        if (!extended)
            break;
    }
    return chosen;
}

namespace {

// Weight C − (U endpoints) with C = 2(n+1): a matching with more edges always
// scores higher, and among equal cardinalities fewer matched U-nodes wins.
MatchingGraph scalarized(const MatchingGraph& g, const NodeSet& u) {
    const auto c = 2 * (static_cast<std::int64_t>(g.node_count()) + 1);
    std::vector<std::int64_t> weights;
    weights.reserve(g.edges().size());
    for (const auto& e : g.edges())
        weights.push_back(c - (u.contains(e.u) ? 1 : 0) - (u.contains(e.v) ? 1 : 0));
    return g.with_weights(std::move(weights));
}

} // namespace

MatchingValue k2_adversarial_value(const MatchingGraph& g, const NodeSet& u) {
    const auto c = 2 * (static_cast<std::int64_t>(g.node_count()) + 1);
    const auto total = max_matching_weight(scalarized(g, u));
    const auto edges = (total + c - 1) / c;
    return {static_cast<std::size_t>(edges), static_cast<std::size_t>(edges * c - total)};
}

PackingResult k2_adversarial_matching(const MatchingGraph& g, const NodeSet& u) {
    CyclePacking packing;
    for (const auto& e : max_weight_matching(scalarized(g, u)))
        packing.cycles.push_back(Cycle{{e.u, e.v}});
    return make_packing_result(std::move(packing), u);
}

} // namespace stackelkep
